#pragma once

/**
 * @file repcore.hpp
 * @brief Weights, submodule closure, exhaustive irreducibility, and modules for
 * the elementary abelian algebra k[u_0..u_{r-1}]/(u_i^p) with their freeness test.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "nilsupport/evaluate.hpp"
#include "nilsupport/liealg.hpp"
#include "nilsupport/linalg.hpp"
#include "nilsupport/module_expr.hpp"
#include "nilsupport/polymatrix.hpp"

namespace nilsupport {

using Weight = std::vector<std::int64_t>;

/// (weight, multiplicity) pairs in decreasing lexicographic order of weight.
struct WeightTable {
  std::vector<std::pair<Weight, std::size_t>> entries;

  std::size_t total() const {
    std::size_t s = 0;
    for (const auto& [w, m] : entries) s += m;
    return s;
  }
  friend bool operator==(const WeightTable&, const WeightTable&) = default;
};

namespace detail {

inline std::vector<Weight> weights_rec(const ModuleExpr& e, std::uint32_t p, std::size_t n) {
  std::vector<Weight> out;
  switch (e.op()) {
    case ModuleOp::Triv: out.emplace_back(n, 0); break;
    case ModuleOp::Def:
      for (std::size_t i = 0; i < n; ++i) {
        Weight w(n, 0);
        w[i] = 1;
        out.push_back(std::move(w));
      }
      break;
    case ModuleOp::Ad:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Weight w(n, 0);
          w[i] += 1;
          w[j] -= 1;
          out.push_back(std::move(w));
        }
      break;
    case ModuleOp::Dual:
      out = weights_rec(e.child(0), p, n);
      for (auto& w : out)
        for (auto& x : w) x = -x;
      break;
    case ModuleOp::Twist: {
      out = weights_rec(e.child(0), p, n);
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < e.param(); ++i) scale *= p;
      for (auto& w : out)
        for (auto& x : w) x *= scale;
      break;
    }
    case ModuleOp::Sum: {
      out = weights_rec(e.child(0), p, n);
      auto b = weights_rec(e.child(1), p, n);
      out.insert(out.end(), b.begin(), b.end());
      break;
    }
    case ModuleOp::Tensor: {
      auto a = weights_rec(e.child(0), p, n);
      auto b = weights_rec(e.child(1), p, n);
      for (const auto& x : a)
        for (const auto& y : b) {
          Weight w(n);
          for (std::size_t i = 0; i < n; ++i) w[i] = x[i] + y[i];
          out.push_back(std::move(w));
        }
      break;
    }
    case ModuleOp::Sym:
    case ModuleOp::Ext: {
      auto a = weights_rec(e.child(0), p, n);
      const auto idx = e.op() == ModuleOp::Sym ? multisets(a.size(), e.param())
                                               : subsets(a.size(), e.param());
      for (const auto& seq : idx) {
        Weight w(n, 0);
        for (auto k : seq)
          for (std::size_t i = 0; i < n; ++i) w[i] += a[k][i];
        out.push_back(std::move(w));
      }
      break;
    }
  }
  return out;
}

}  // namespace detail

/// Torus weight of each canonical basis vector (length rank(E) each).
inline std::vector<Weight> basis_weights(const ModuleExpr& e, std::uint32_t p) {
  return detail::weights_rec(e, p, e.rank());
}

inline WeightTable weights(const ModuleExpr& e, std::uint32_t p) {
  std::map<Weight, std::size_t, std::greater<>> counts;
  for (auto& w : basis_weights(e, p)) ++counts[w];
  WeightTable t;
  for (auto& [w, m] : counts) t.entries.emplace_back(w, m);
  return t;
}

/// Smallest subspace containing `vectors` and stable under every operator in
/// `ops`. Returned as a reduced echelon basis.
inline std::vector<Vector> submodule_closure(const FieldPtr& field, std::size_t dim,
                                             const std::vector<Vector>& vectors,
                                             const std::vector<Matrix>& ops) {
  Subspace span(field, dim);
  std::deque<Vector> pending;
  for (const auto& v : vectors)
    if (span.insert(v)) pending.push_back(v);
  while (!pending.empty() && span.dim() < dim) {
    Vector v = std::move(pending.front());
    pending.pop_front();
    for (const auto& op : ops) {
      Vector w = nilsupport::apply(op, v);
      if (span.insert(w)) pending.push_back(std::move(w));
    }
  }
  return span.basis();
}

/// A group element of GL_n(F_q) together with its inverse.
struct GroupElement {
  Matrix g;
  Matrix g_inv;
};

/// Closure under the action of the given group elements on E.
inline std::vector<Vector> submodule_closure(const ModuleExpr& e, const std::vector<Vector>& vectors,
                                             const std::vector<GroupElement>& generators,
                                             const FieldPtr& field) {
  std::vector<Matrix> ops;
  ops.reserve(generators.size());
  for (const auto& ge : generators) ops.push_back(evaluate(e, ge.g, ge.g_inv));
  return submodule_closure(field, e.dim(), vectors, ops);
}

/// Transvections I + b E_ij (b over an F_p-basis of F_q, i != j) and diag(w, 1, ..., 1)
/// with w primitive; together they generate GL_n(F_q).
inline std::vector<GroupElement> gl_generators(std::size_t n, const FieldPtr& field) {
  std::vector<GroupElement> gens;
  const ScalarRing ring(field);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (Elem b : field->prime_basis()) {
        Matrix g = Matrix::identity(ring, n) + Matrix::unit(ring, n, i, j, b);
        Matrix gi = Matrix::identity(ring, n) - Matrix::unit(ring, n, i, j, b);
        gens.push_back({std::move(g), std::move(gi)});
      }
    }
  if (n > 0 && field->q() > 2) {
    const Elem w = field->primitive_element();
    Matrix g = Matrix::identity(ring, n);
    Matrix gi = g;
    g(0, 0) = w;
    gi(0, 0) = field->inv(w);
    gens.push_back({std::move(g), std::move(gi)});
  }
  return gens;
}

/// Operators generating the action of the algebraic group GL_n on E: the
/// divided-power coefficients of t^a in rho(I + t E_ij), a >= 1, i != j, and the
/// projections onto torus weight spaces. A subspace stable under these is a
/// GL_n-submodule, which is strictly more than stability under GL_n(F_q).
inline std::vector<Matrix> hyperalgebra_generators(const ModuleExpr& e, const FieldPtr& field) {
  std::vector<Matrix> ops;
  const std::size_t n = e.rank();
  const std::size_t cap = std::max<std::size_t>(1, e.polydeg(field->p()));
  const PolyRing ring(field, cap);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      PolyMatrix g = PolyMatrix::identity(ring, n);
      PolyMatrix gi = g;
      g(i, j) = Poly::monomial(1, 1);
      gi(i, j) = Poly::monomial(field->neg(1), 1);
      const PolyMatrix rho = evaluate(e, g, &gi);
      for (long a = 1; a <= degree(rho); ++a) {
        Matrix c = coeff(rho, static_cast<std::size_t>(a));
        if (!c.is_zero()) ops.push_back(std::move(c));
      }
    }
  const auto ws = basis_weights(e, field->p());
  std::map<Weight, std::vector<std::size_t>> spaces;
  for (std::size_t k = 0; k < ws.size(); ++k) spaces[ws[k]].push_back(k);
  if (spaces.size() > 1) {
    for (const auto& [w, idx] : spaces) {
      Matrix proj(ScalarRing(field), e.dim(), e.dim());
      for (auto k : idx) proj(k, k) = 1;
      ops.push_back(std::move(proj));
    }
  }
  return ops;
}

struct IrreducibilityResult {
  bool irreducible = true;
  /// Basis of a proper nonzero submodule when reducible.
  std::vector<Vector> witness;
};

/// Irreducibility of E as a GL_n-module, decided by closing every F_q-rational
/// projective point of E. Requires q^{dim E} <= budget.
inline IrreducibilityResult is_irreducible_exhaustive(const ModuleExpr& e, const FieldPtr& field,
                                                      std::uint64_t budget = kDefaultBudget) {
  const std::size_t dim = e.dim();
  check_budget(detail::saturating_pow(field->q(), dim), budget, "irreducibility scan");
  std::vector<Matrix> ops = hyperalgebra_generators(e, field);
  for (auto& ge : gl_generators(e.rank(), field)) ops.push_back(evaluate(e, ge.g, ge.g_inv));
  const Elem q = field->q();
  // Projective points: first nonzero coordinate equal to 1.
  for (std::size_t lead = 0; lead < dim; ++lead) {
    Vector v(dim, 0);
    v[lead] = 1;
    while (true) {
      auto closure = submodule_closure(field, dim, {v}, ops);
      if (closure.size() < dim) return IrreducibilityResult{false, std::move(closure)};
      std::size_t k = dim;
      bool done = true;
      while (k > lead + 1) {
        --k;
        if (++v[k] < q) {
          done = false;
          break;
        }
        v[k] = 0;
      }
      if (done) break;
    }
  }
  return IrreducibilityResult{};
}

/// Module over k[u_0..u_{r-1}]/(u_i^p): r pairwise commuting p-nilpotent operators.
class EAModule {
 public:
  EAModule(FieldPtr field, std::size_t dim, std::vector<Matrix> ops)
      : field_(std::move(field)), dim_(dim), ops_(std::move(ops)) {
    for (const auto& op : ops_)
      if (!op.square() || op.rows() != dim_) throw DimensionError("operator has the wrong size");
    auto check = is_commuting_nilpotent(ops_);
    if (!check) throw InvalidTuple("operators are not commuting p-nilpotent: " + check.describe());
  }

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t r() const noexcept { return ops_.size(); }
  const std::vector<Matrix>& ops() const noexcept { return ops_; }

 private:
  FieldPtr field_;
  std::size_t dim_;
  std::vector<Matrix> ops_;
};

/// Regular module of k(Z/p)^r on the monomial basis u^a, a in {0..p-1}^r,
/// index sum_i a_i p^i.
inline EAModule regular_ea_module(const FieldPtr& field, std::size_t r) {
  const std::size_t p = field->p();
  std::size_t dim = 1;
  for (std::size_t i = 0; i < r; ++i) dim *= p;
  std::vector<Matrix> ops;
  std::size_t stride = 1;
  for (std::size_t i = 0; i < r; ++i, stride *= p) {
    Matrix u(ScalarRing(field), dim, dim);
    for (std::size_t idx = 0; idx < dim; ++idx)
      if ((idx / stride) % p + 1 < p) u(idx + stride, idx) = 1;
    ops.push_back(std::move(u));
  }
  return EAModule(field, dim, std::move(ops));
}

/// dim(M / rad M) where rad M is the sum of the operator images.
inline std::size_t top_dimension(const EAModule& m) {
  Matrix all(ScalarRing(m.field()), m.dim(), m.dim() * m.r());
  for (std::size_t s = 0; s < m.r(); ++s)
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j) all(i, s * m.dim() + j) = m.ops()[s](i, j);
  return m.dim() - (m.r() == 0 ? 0 : rank(all));
}

/// Free over the local algebra iff dim M = p^r * dim(M / rad M).
inline bool ea_free(const EAModule& m) {
  std::uint64_t pr = 1;
  for (std::size_t i = 0; i < m.r(); ++i) pr *= m.field()->p();
  return m.dim() == pr * top_dimension(m);
}

struct RestrictQuotient {
  Matrix restriction;  // N|_W in the given basis of W
  Matrix quotient;     // induced map on V/W in the basis of complementary unit vectors
  std::vector<std::size_t> complement;  // indices of those unit vectors
};

/// Splits N along an invariant subspace W given by a linearly independent basis.
/// The quotient basis is the images of e_k for the non-pivot columns k of the
/// echelon form of W.
inline RestrictQuotient quotient_and_restrict(const Matrix& n, const std::vector<Vector>& w_basis) {
  if (!n.square()) throw DimensionError("operator must be square");
  const std::size_t dim = n.rows();
  const FieldPtr& field = n.field();
  Subspace w(field, dim);
  for (const auto& v : w_basis)
    if (!w.insert(v)) throw DimensionError("subspace basis is linearly dependent");
  std::vector<bool> pivot(dim, false);
  for (auto c : w.pivots()) pivot[c] = true;
  std::vector<Vector> cols = w_basis;
  std::vector<std::size_t> comp;
  for (std::size_t k = 0; k < dim; ++k)
    if (!pivot[k]) {
      Vector e(dim, 0);
      e[k] = 1;
      cols.push_back(std::move(e));
      comp.push_back(k);
    }
  const Matrix basis = columns_to_matrix(field, dim, cols);
  const Matrix conj = inverse(basis) * n * basis;
  const std::size_t k = w_basis.size();
  for (std::size_t i = k; i < dim; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (conj(i, j) != 0) throw NotInvariant("subspace is not invariant under the operator");
  std::vector<std::size_t> head(k), tail(dim - k);
  for (std::size_t i = 0; i < k; ++i) head[i] = i;
  for (std::size_t i = k; i < dim; ++i) tail[i - k] = i;
  return RestrictQuotient{conj.submatrix(head, head), conj.submatrix(tail, tail), std::move(comp)};
}

}  // namespace nilsupport
