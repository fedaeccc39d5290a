#pragma once

// Truncated polynomial-matrix helpers: coefficient extraction, substitution,
// lifting constant matrices into F_q[t].

#include <algorithm>
#include <cstddef>

#include "nilsupport/matrix.hpp"

namespace nilsupport {

/// Largest t-degree among the entries; -1 for the zero matrix.
inline long degree(const PolyMatrix& a) {
  long d = -1;
  for (const auto& x : a.data()) d = std::max(d, x.degree());
  return d;
}

/// Matrix of t^d coefficients.
inline Matrix coeff(const PolyMatrix& a, std::size_t d) {
  Matrix m(ScalarRing(a.field()), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).coeff(d);
  return m;
}

inline PolyMatrix lift(const Matrix& a, const PolyRing& ring) {
  PolyMatrix m(ring, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Poly::constant(a(i, j));
  return m;
}

/// sum_d t^d C_d built from coefficient matrices C_0, C_1, ...
inline PolyMatrix from_coeffs(const std::vector<Matrix>& cs, const PolyRing& ring) {
  if (cs.empty()) throw DimensionError("no coefficient matrices");
  PolyMatrix m(ring, cs[0].rows(), cs[0].cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::vector<Elem> c(cs.size());
      for (std::size_t d = 0; d < cs.size(); ++d) c[d] = cs[d](i, j);
      Poly x{std::move(c)};
      ring.normalize(x);
      m(i, j) = std::move(x);
    }
  return m;
}

/// Value of every entry at t = a.
inline Matrix evaluate_at(const PolyMatrix& a, Elem point) {
  const Field& f = *a.field();
  Matrix m(ScalarRing(a.field()), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& c = a(i, j).c;
      Elem acc = 0;
      for (std::size_t k = c.size(); k-- > 0;) acc = f.add(f.mul(acc, point), c[k]);
      m(i, j) = acc;
    }
  return m;
}

/// Entrywise f(t) -> f(alpha t).
inline PolyMatrix scale_variable(const PolyMatrix& a, Elem alpha) {
  const Field& f = *a.field();
  PolyMatrix m = a;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto c = m(i, j).c;
      Elem w = 1;
      for (auto& x : c) {
        x = f.mul(x, w);
        w = f.mul(w, alpha);
      }
      m(i, j) = Poly{std::move(c)};
    }
  return m;
}

/// Entrywise f(t) -> f(t^k), coefficients untouched.
inline PolyMatrix substitute_power(const PolyMatrix& a, std::size_t k) {
  PolyMatrix m(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a.ring().substitute_power(a(i, j), k);
  return m;
}

}  // namespace nilsupport
