#pragma once

/**
 * @file support.hpp
 * @brief Local p-nilpotent operators at 1-parameter subgroups, Jordan types and
 * support membership.
 *
 * For a module E and a tuple B = (B_0, ..., B_{r-1}) the local operator is
 *
 *     alpha_B = sum_s [t^{p^s}] rho_E(exp_{B_s}(t)),
 *
 * and B lies in the support of E iff alpha_B is not free over k[u]/u^p, i.e. some
 * Jordan block has size < p. The Frobenius-kernel variant mu_B is the t^{p^{r-1}}
 * coefficient of rho_E(prod_s exp_{B_s}(t^{p^s})).
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nilsupport/liealg.hpp"
#include "nilsupport/linalg.hpp"
#include "nilsupport/module_expr.hpp"
#include "nilsupport/oneparam.hpp"
#include "nilsupport/repcore.hpp"

namespace nilsupport {

/// Block sizes of a p-nilpotent operator, largest first.
struct JordanType {
  std::vector<std::size_t> parts;

  std::size_t total() const {
    std::size_t s = 0;
    for (auto x : parts) s += x;
    return s;
  }
  /// Some block has size < p.
  bool has_small_block(std::size_t p) const {
    return std::any_of(parts.begin(), parts.end(), [p](std::size_t x) { return x < p; });
  }
  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
    return s + "]";
  }
  friend bool operator==(const JordanType&, const JordanType&) = default;
};

/// A p-nilpotent operator together with what it was computed from.
class LocalOperator {
 public:
  LocalOperator(Matrix matrix, std::optional<NilTuple> tuple = std::nullopt,
                std::optional<ModuleExpr> module = std::nullopt)
      : matrix_(std::move(matrix)), tuple_(std::move(tuple)), module_(std::move(module)) {
    if (!matrix_.square()) throw DimensionError("local operator must be square");
    if (!is_p_nilpotent(matrix_))
      throw InvariantViolation("local operator is not p-nilpotent");
  }

  const Matrix& matrix() const noexcept { return matrix_; }
  const std::optional<NilTuple>& tuple() const noexcept { return tuple_; }
  const std::optional<ModuleExpr>& module() const noexcept { return module_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }

 private:
  Matrix matrix_;
  std::optional<NilTuple> tuple_;
  std::optional<ModuleExpr> module_;
};

/// [t^{p^s}] rho_E(exp_B(t)), computed in F_q[t]/(t^{p^s+1}).
inline Matrix exp_coefficient(const ModuleExpr& e, const Matrix& b, std::size_t s) {
  const std::size_t d = int_pow(b.field()->p(), s);
  if (b.is_zero()) return Matrix(ScalarRing(b.field()), e.dim(), e.dim());
  return coeff(exp_eval(b, e, PolyRing(b.field(), d, true)), d);
}

inline void check_tuple_for(const ModuleExpr& e, const NilTuple& b) {
  if (e.rank() != 0 && b.n() != e.rank())
    throw DimensionError("tuple size " + std::to_string(b.n()) + " does not match module n = " +
                         std::to_string(e.rank()));
}

/// alpha_B = sum_s [t^{p^s}] rho_E(exp_{B_s}(t)).
inline LocalOperator alpha_operator(const ModuleExpr& e, const NilTuple& b) {
  check_tuple_for(e, b);
  Matrix acc(ScalarRing(b.field()), e.dim(), e.dim());
  for (std::size_t s = 0; s < b.r(); ++s)
    if (!b[s].is_zero()) acc = acc + exp_coefficient(e, b[s], s);
  return LocalOperator(std::move(acc), b, e);
}

/// mu_B = [t^{p^{r-1}}] rho_E(prod_s exp_{B_s}(t^{p^s})).
inline LocalOperator mu_operator(const ModuleExpr& e, const NilTuple& b) {
  check_tuple_for(e, b);
  if (b.r() == 0) return LocalOperator(Matrix(ScalarRing(b.field()), e.dim(), e.dim()), b, e);
  const std::size_t d = int_pow(b.field()->p(), b.r() - 1);
  const PolyMatrix rho = psg_eval(OneParamSubgroup(b), e, PolyRing(b.field(), d, true));
  return LocalOperator(coeff(rho, d), b, e);
}

/// (B_0, ..., B_{r-1}) -> (B_{r-1}, ..., B_0).
inline NilTuple lambda_reverse(const NilTuple& b) {
  std::vector<Matrix> mats(b.mats().rbegin(), b.mats().rend());
  return NilTuple::trusted(b.field(), b.n(), std::move(mats));
}

/// Block counts from ranks: #blocks of size j = rk(N^{j-1}) - 2 rk(N^j) + rk(N^{j+1}).
inline JordanType jordan_type(const Matrix& n) {
  if (!n.square()) throw DimensionError("jordan type of a non-square matrix");
  const std::size_t p = n.field()->p();
  std::vector<std::size_t> ranks{n.rows()};
  Matrix power = Matrix::identity(n.ring(), n.rows());
  for (std::size_t j = 1; j <= p + 1; ++j) {
    power = power * n;
    ranks.push_back(rank(power));
  }
  if (ranks[p] != 0) throw NotNilpotent("operator is not p-nilpotent");
  JordanType jt;
  for (std::size_t j = p; j >= 1; --j) {
    const std::size_t count = ranks[j - 1] + ranks[j + 1] - 2 * ranks[j];
    jt.parts.insert(jt.parts.end(), count, j);
  }
  return jt;
}

inline JordanType jordan_type(const LocalOperator& op) { return jordan_type(op.matrix()); }

/// Free over k[u]/u^p iff p * rank(N^{p-1}) = dim.
inline bool operator_is_free(const Matrix& n) {
  const std::size_t p = n.field()->p();
  if (n.rows() % p != 0) return false;
  return p * rank(n.pow(p - 1)) == n.rows();
}

inline bool in_support(const ModuleExpr& e, const NilTuple& b) {
  return !operator_is_free(alpha_operator(e, b).matrix());
}

/// Membership computed through the Frobenius-kernel operator mu_B.
inline bool in_support_mu(const ModuleExpr& e, const NilTuple& b) {
  return !operator_is_free(mu_operator(e, b).matrix());
}

/// Local operator of a G_a-module at the 1-parameter subgroup t -> sum_s b_s t^{p^s}:
/// sum_s b_s^{p^s} u_s. Missing scalars count as zero.
inline LocalOperator ga_alpha(const EAModule& m, const std::vector<Elem>& b) {
  if (b.size() > m.r()) throw DimensionError("more scalars than operators");
  const Field& f = *m.field();
  Matrix acc(ScalarRing(m.field()), m.dim(), m.dim());
  for (std::size_t s = 0; s < b.size(); ++s) {
    if (b[s] == 0) continue;
    acc = acc + m.ops()[s].scaled(f.frob(b[s], static_cast<unsigned>(s)));
  }
  return LocalOperator(std::move(acc));
}

/// (g B_0 g^{-1}, ..., g B_{r-1} g^{-1}).
inline NilTuple conjugate_tuple(const NilTuple& b, const Matrix& g) {
  if (!g.square() || g.rows() != b.n()) throw DimensionError("conjugating matrix has the wrong size");
  const Matrix g_inv = inverse(g);
  std::vector<Matrix> mats;
  mats.reserve(b.r());
  for (const auto& m : b.mats()) mats.push_back(g * m * g_inv);
  return NilTuple::trusted(b.field(), b.n(), std::move(mats));
}

/// Uniformly random invertible n x n matrix (rejection on singular draws).
inline Matrix random_invertible(std::size_t n, const FieldPtr& field, std::mt19937_64& rng) {
  while (true) {
    Matrix g(ScalarRing(field), n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = static_cast<Elem>(rng() % field->q());
    if (rank(g) == n) return g;
  }
}

struct SupportRow {
  NilTuple tuple;
  JordanType jordan;
  bool in_support = false;
};

struct SupportScope {
  std::string kind;  // "enumerate" or "sample"
  std::map<std::string, std::uint64_t> params;
};

struct SupportReport {
  ModuleExpr module;
  FieldPtr field;
  SupportScope scope;
  std::vector<SupportRow> rows;

  std::size_t in_support_count() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const SupportRow& r) { return r.in_support; }));
  }
};

/// Evaluates rows for the given tuples, splitting the list across workers.
/// Output order always follows the input order.
inline std::vector<SupportRow> support_rows(const ModuleExpr& e, const std::vector<NilTuple>& tuples,
                                            std::size_t workers = 1) {
  std::vector<std::optional<SupportRow>> rows(tuples.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto op = alpha_operator(e, tuples[i]);
      auto jt = jordan_type(op);
      const bool member = jt.has_small_block(tuples[i].field()->p());
      rows[i] = SupportRow{tuples[i], std::move(jt), member};
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, tuples.size()));
  if (workers == 1) {
    work(0, tuples.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (tuples.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t b = w * chunk, en = std::min(tuples.size(), b + chunk);
      if (b < en) pool.emplace_back(work, b, en);
    }
    for (auto& t : pool) t.join();
  }
  std::vector<SupportRow> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(std::move(*r));
  return out;
}

inline SupportReport enumerate_support(const ModuleExpr& e, std::size_t n, std::size_t r,
                                       const FieldPtr& field, std::uint64_t budget = kDefaultBudget,
                                       std::size_t workers = 1) {
  if (e.rank() != 0 && e.rank() != n) throw DimensionError("n does not match the module");
  auto tuples = enumerate_cr(n, r, field, budget);
  SupportReport rep{e, field, {"enumerate", {{"n", n}, {"r", r}, {"budget", budget}}}, {}};
  rep.rows = support_rows(e, tuples, workers);
  return rep;
}

inline SupportReport sample_support(const ModuleExpr& e, std::size_t n, std::size_t r,
                                    const FieldPtr& field, std::uint64_t seed, std::size_t count,
                                    std::size_t workers = 1) {
  if (e.rank() != 0 && e.rank() != n) throw DimensionError("n does not match the module");
  std::mt19937_64 seeder(seed);
  std::vector<NilTuple> tuples;
  tuples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) tuples.push_back(sample_cr(n, r, field, seeder()));
  SupportReport rep{e, field, {"sample", {{"n", n}, {"r", r}, {"seed", seed}, {"count", count}}}, {}};
  rep.rows = support_rows(e, tuples, workers);
  return rep;
}

}  // namespace nilsupport
