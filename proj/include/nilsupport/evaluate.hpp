#pragma once

/**
 * @file evaluate.hpp
 * @brief Action matrix of a group element on a ModuleExpr, over any coefficient ring.
 *
 * The same code evaluates a constant matrix g in GL_n(F_q) and a polynomial matrix
 * g(t) (a 1-parameter subgroup). Modules containing Dual or Ad need g^{-1}
 * supplied explicitly; it is never computed here.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "nilsupport/matrix.hpp"
#include "nilsupport/module_expr.hpp"

namespace nilsupport {

namespace detail {

template <CoefficientRing Ring>
DenseMatrix<Ring> sym_power(const DenseMatrix<Ring>& m, std::size_t d) {
  const auto& ring = m.ring();
  const std::size_t k = m.rows();
  const auto monos = multisets(k, d);
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], i);
  DenseMatrix<Ring> out(ring, monos.size(), monos.size());
  using V = typename Ring::value_type;
  for (std::size_t col = 0; col < monos.size(); ++col) {
    // Expand prod_j (sum_a m(a, i_j) v_a) as a polynomial in the v_a.
    std::map<std::vector<std::size_t>, V> poly;
    poly.emplace(std::vector<std::size_t>{}, ring.one());
    for (std::size_t factor : monos[col]) {
      std::map<std::vector<std::size_t>, V> next;
      for (const auto& [mono, c] : poly) {
        for (std::size_t a = 0; a < k; ++a) {
          const V& coef = m(a, factor);
          if (ring.is_zero(coef)) continue;
          auto key = mono;
          key.insert(std::upper_bound(key.begin(), key.end(), a), a);
          auto it = next.find(key);
          V term = ring.mul(c, coef);
          if (it == next.end())
            next.emplace(std::move(key), std::move(term));
          else
            it->second = ring.add(it->second, term);
        }
      }
      poly = std::move(next);
    }
    for (auto& [mono, c] : poly) out(index.at(mono), col) = std::move(c);
  }
  return out;
}

template <CoefficientRing Ring>
DenseMatrix<Ring> ext_power(const DenseMatrix<Ring>& m, std::size_t d) {
  const auto sets = subsets(m.rows(), d);
  DenseMatrix<Ring> out(m.ring(), sets.size(), sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j) out(i, j) = determinant(m.submatrix(sets[i], sets[j]));
  return out;
}

template <CoefficientRing Ring>
DenseMatrix<Ring> evaluate_rec(const ModuleExpr& e, const DenseMatrix<Ring>& g,
                               const DenseMatrix<Ring>* g_inv) {
  const auto& ring = g.ring();
  switch (e.op()) {
    case ModuleOp::Triv: return DenseMatrix<Ring>::identity(ring, 1);
    case ModuleOp::Def: return g;
    case ModuleOp::Ad: {
      // g E_ij g^{-1} = sum_{a,b} g(a,i) g^{-1}(j,b) E_ab
      const std::size_t n = g.rows();
      DenseMatrix<Ring> out(ring, n * n, n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              out(a * n + b, i * n + j) = ring.mul(g(a, i), (*g_inv)(j, b));
      return out;
    }
    case ModuleOp::Dual: {
      if (g_inv == nullptr) throw MissingInverse("dual needs g^{-1}");
      return evaluate_rec(e.child(0), *g_inv, &g).transpose();
    }
    case ModuleOp::Sum:
      return direct_sum(evaluate_rec(e.child(0), g, g_inv), evaluate_rec(e.child(1), g, g_inv));
    case ModuleOp::Tensor:
      return kron(evaluate_rec(e.child(0), g, g_inv), evaluate_rec(e.child(1), g, g_inv));
    case ModuleOp::Sym: return sym_power(evaluate_rec(e.child(0), g, g_inv), e.param());
    case ModuleOp::Ext: return ext_power(evaluate_rec(e.child(0), g, g_inv), e.param());
    case ModuleOp::Twist: {
      const auto r = static_cast<unsigned>(e.param());
      const auto gt = g.frob_power(r);
      if (g_inv == nullptr) return evaluate_rec(e.child(0), gt, static_cast<const DenseMatrix<Ring>*>(nullptr));
      const auto gt_inv = g_inv->frob_power(r);
      return evaluate_rec(e.child(0), gt, &gt_inv);
    }
  }
  throw InvariantViolation("unknown module constructor");
}

}  // namespace detail

/// Matrix of g acting on the canonical basis of E (column convention:
/// column j is the image of basis vector j).
template <CoefficientRing Ring>
DenseMatrix<Ring> evaluate(const ModuleExpr& e, const DenseMatrix<Ring>& g,
                           const DenseMatrix<Ring>* g_inv = nullptr) {
  if (!g.square()) throw DimensionError("group element must be square");
  if (e.rank() != 0 && g.rows() != e.rank())
    throw DimensionError("module acts on n = " + std::to_string(e.rank()) + ", got " +
                         std::to_string(g.rows()) + "x" + std::to_string(g.cols()));
  if (g_inv != nullptr) {
    if (g_inv->rows() != g.rows() || !g_inv->square()) throw DimensionError("g^{-1} shape mismatch");
    if (!(g * *g_inv).is_identity()) throw DimensionError("supplied g^{-1} is not the inverse of g");
  } else if (e.needs_inverse()) {
    throw MissingInverse("module contains dual or ad; g^{-1} required");
  }
  return detail::evaluate_rec(e, g, g_inv);
}

template <CoefficientRing Ring>
DenseMatrix<Ring> evaluate(const ModuleExpr& e, const DenseMatrix<Ring>& g,
                           const DenseMatrix<Ring>& g_inv) {
  return evaluate(e, g, &g_inv);
}

}  // namespace nilsupport
