#pragma once

/**
 * @file oneparam.hpp
 * @brief Truncated exponentials of p-nilpotent matrices and the 1-parameter
 * subgroups t -> prod_s exp_{B_s}(t^{p^s}) of GL_n they define.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nilsupport/evaluate.hpp"
#include "nilsupport/liealg.hpp"
#include "nilsupport/module_expr.hpp"
#include "nilsupport/polymatrix.hpp"

namespace nilsupport {

inline std::size_t int_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

/// exp_B(+-t) = sum_{i<p} (+-t)^i B^i / i!. Requires B^p = 0.
inline PolyMatrix exp_nil(const Matrix& b, bool negate, const PolyRing& ring) {
  if (!b.square()) throw DimensionError("exp of a non-square matrix");
  const Field& f = *b.field();
  const std::size_t p = f.p();
  if (!is_p_nilpotent(b)) throw NotNilpotent("exp_B needs B^p = 0");
  std::vector<Matrix> coeffs;
  Matrix power = Matrix::identity(b.ring(), b.rows());
  Elem inv_fact = 1;
  for (std::size_t i = 0; i < p; ++i) {
    if (i > 0) {
      power = power * b;
      inv_fact = f.mul(inv_fact, f.inv(f.from_int(static_cast<std::int64_t>(i))));
    }
    if (power.is_zero()) break;
    Elem c = inv_fact;
    if (negate && i % 2 == 1) c = f.neg(c);
    coeffs.push_back(power.scaled(c));
  }
  return from_coeffs(coeffs, ring);
}

inline PolyMatrix exp_nil(const Matrix& b, bool negate = false) {
  return exp_nil(b, negate, PolyRing(b.field(), b.field()->p() - 1));
}

/// Height of the polynomial t -> prod_s exp_{B_s}(t^{p^s}): at most p^r - 1.
inline std::size_t psg_degree_bound(std::size_t r, std::uint32_t p) { return int_pow(p, r) - 1; }

/// A 1-parameter subgroup t -> prod_{s<r} exp_{B_s}(t^{p^s}) of GL_n.
class OneParamSubgroup {
 public:
  explicit OneParamSubgroup(NilTuple tuple) : tuple_(std::move(tuple)) {}

  const NilTuple& tuple() const noexcept { return tuple_; }

  /// The group element g(t), or g(-t) = g(t)^{-1} when `inverse` is set.
  PolyMatrix matrix(const PolyRing& ring, bool inverse = false) const {
    const std::size_t p = tuple_.field()->p();
    PolyMatrix g = PolyMatrix::identity(ring, tuple_.n());
    std::size_t step = 1;
    for (std::size_t s = 0; s < tuple_.r(); ++s, step *= p) {
      if (tuple_[s].is_zero()) continue;
      g = g * substitute_power(exp_nil(tuple_[s], inverse, ring), step);
    }
    return g;
  }

  PolyMatrix matrix(bool inverse = false) const { return matrix(default_ring(), inverse); }

  PolyRing default_ring() const {
    const std::uint32_t p = tuple_.field()->p();
    return PolyRing(tuple_.field(), std::max<std::size_t>(p - 1, psg_degree_bound(tuple_.r(), p)));
  }

 private:
  NilTuple tuple_;
};

/// Non-truncating ring large enough for rho(g(t)) on E.
inline PolyRing psg_ring(const ModuleExpr& e, const NilTuple& b) {
  const std::uint32_t p = b.field()->p();
  const std::size_t deg = std::max<std::size_t>(p - 1, psg_degree_bound(b.r(), p));
  return PolyRing(b.field(), std::max<std::size_t>(1, e.polydeg(p)) * deg);
}

/// rho_E(prod_s exp_{B_s}(t^{p^s})) as a polynomial matrix. With a truncating ring
/// the result is the same polynomial reduced mod t^{cap+1}.
inline PolyMatrix psg_eval(const OneParamSubgroup& psi, const ModuleExpr& e,
                           std::optional<PolyRing> ring = std::nullopt) {
  const PolyRing rg = ring ? *ring : psg_ring(e, psi.tuple());
  const PolyMatrix g = psi.matrix(rg, false);
  if (!e.needs_inverse()) return evaluate(e, g);
  const PolyMatrix g_inv = psi.matrix(rg, true);
  return evaluate(e, g, &g_inv);
}

/// rho_E(exp_B(t)) for a single p-nilpotent B.
inline PolyMatrix exp_eval(const Matrix& b, const ModuleExpr& e, std::optional<PolyRing> ring = std::nullopt) {
  const std::uint32_t p = b.field()->p();
  const PolyRing rg = ring ? *ring
                           : PolyRing(b.field(), std::max<std::size_t>(1, e.polydeg(p)) * (p - 1));
  const PolyMatrix g = exp_nil(b, false, rg);
  if (!e.needs_inverse()) return evaluate(e, g);
  const PolyMatrix g_inv = exp_nil(b, true, rg);
  return evaluate(e, g, &g_inv);
}

/// Smallest r with p^r > polydeg(E) (p - 1): the t^{p^s} coefficient of
/// rho_E(exp_B(t)) vanishes for every s >= r and every p-nilpotent B.
inline std::size_t exp_degree_bound(const ModuleExpr& e, std::uint32_t p) {
  const std::size_t top = e.polydeg(p) * (p - 1);
  std::size_t r = 0;
  std::size_t pr = 1;
  while (pr <= top) {
    pr *= p;
    ++r;
  }
  return r;
}

/// Keeps the first exp_degree_bound(E, p) terms of an unbounded sequence of
/// p-nilpotent matrices; the rest act as zero on E.
template <class Generator>
NilTuple truncate_formal(const ModuleExpr& e, const FieldPtr& field, Generator&& next) {
  const std::size_t keep = exp_degree_bound(e, field->p());
  std::vector<Matrix> mats;
  mats.reserve(keep);
  for (std::size_t s = 0; s < keep; ++s) mats.push_back(next());
  const std::size_t n = mats.empty() ? e.rank() : mats[0].rows();
  return NilTuple(field, n, std::move(mats));
}

}  // namespace nilsupport
