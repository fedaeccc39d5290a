#pragma once

/**
 * @file linalg.hpp
 * @brief Exact row reduction over F_q: rref, rank, kernel, inverse, subspaces.
 *
 * Pivoting always takes the first row (from the top) with a nonzero entry in the
 * leftmost remaining column, and pivot rows are scaled to 1, so the output of
 * every routine here is deterministic.
 */

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nilsupport/matrix.hpp"

namespace nilsupport {

using Vector = std::vector<Elem>;

struct RowEchelon {
  Matrix rref;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

inline RowEchelon row_reduce(Matrix a) {
  const Field& f = *a.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    const Elem inv = f.inv(a(row, col));
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) = f.mul(a(row, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Elem factor = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        a(i, j) = f.sub(a(i, j), f.mul(factor, a(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return RowEchelon{std::move(a), std::move(pivots)};
}

inline Matrix rref(const Matrix& a) { return row_reduce(a).rref; }

inline std::size_t rank(const Matrix& a) { return row_reduce(a).rank(); }

/// Rank by column elimination, sweeping rows top to bottom. Shares no code with
/// row_reduce so the two can cross-check each other.
inline std::size_t rank_by_columns(Matrix a) {
  const Field& f = *a.field();
  std::size_t col = 0;
  for (std::size_t r = 0; r < a.rows() && col < a.cols(); ++r) {
    std::size_t piv = col;
    while (piv < a.cols() && a(r, piv) == 0) ++piv;
    if (piv == a.cols()) continue;
    if (piv != col)
      for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, piv), a(i, col));
    const Elem inv = f.inv(a(r, col));
    for (std::size_t j = col + 1; j < a.cols(); ++j) {
      if (a(r, j) == 0) continue;
      const Elem factor = f.mul(a(r, j), inv);
      for (std::size_t i = r; i < a.rows(); ++i) a(i, j) = f.sub(a(i, j), f.mul(factor, a(i, col)));
    }
    ++col;
  }
  return col;
}

/// Basis of {x : A x = 0}, one vector per free column, in increasing column order.
inline std::vector<Vector> kernel_basis(const Matrix& a) {
  const auto ech = row_reduce(a);
  const Field& f = *a.field();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) v[ech.pivots[i]] = f.neg(ech.rref(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::optional<Matrix> try_inverse(const Matrix& a) {
  if (!a.square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug(a.ring(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto ech = row_reduce(std::move(aug));
  if (ech.rank() < n || ech.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(a.ring(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = ech.rref(i, n + j);
  return inv;
}

inline Matrix inverse(const Matrix& a) {
  if (a.rows() == 0) return a;
  auto inv = try_inverse(a);
  if (!inv) throw SingularMatrix("matrix is not invertible");
  return *inv;
}

inline Vector apply(const Matrix& a, const Vector& v) {
  if (v.size() != a.cols()) throw DimensionError("vector length does not match matrix");
  const Field& f = *a.field();
  Vector out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Elem acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (v[j] != 0 && a(i, j) != 0) acc = f.add(acc, f.mul(a(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

/// Matrix whose columns are the given vectors.
inline Matrix columns_to_matrix(const FieldPtr& field, std::size_t dim,
                                const std::vector<Vector>& cols) {
  Matrix m(ScalarRing(field), dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != dim) throw DimensionError("vector length does not match dimension");
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

/// Incrementally maintained subspace of F_q^dim in reduced echelon form.
class Subspace {
 public:
  Subspace(FieldPtr field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

  std::size_t ambient_dim() const noexcept { return dim_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const FieldPtr& field() const noexcept { return field_; }

  /// Reduce v against the current basis; zero iff v lies in the span.
  Vector reduce(Vector v) const {
    const Field& f = *field_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Elem c = v[pivots_[i]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) v[j] = f.sub(v[j], f.mul(c, rows_[i][j]));
    }
    return v;
  }

  bool contains(const Vector& v) const {
    for (auto x : reduce(v))
      if (x != 0) return false;
    return true;
  }

  /// Returns true if v enlarged the space.
  bool insert(const Vector& v) {
    if (v.size() != dim_) throw DimensionError("vector length does not match dimension");
    Vector r = reduce(v);
    std::size_t piv = 0;
    while (piv < dim_ && r[piv] == 0) ++piv;
    if (piv == dim_) return false;
    const Field& f = *field_;
    const Elem inv = f.inv(r[piv]);
    for (auto& x : r) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Elem c = rows_[i][piv];
      if (c == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) rows_[i][j] = f.sub(rows_[i][j], f.mul(c, r[j]));
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), piv);
    return true;
  }

  /// Reduced echelon basis, sorted by pivot column.
  const std::vector<Vector>& basis() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

 private:
  FieldPtr field_;
  std::size_t dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace nilsupport
