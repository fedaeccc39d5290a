#pragma once

/**
 * @file matrix.hpp
 * @brief Dense row-major matrices over a CoefficientRing.
 *
 * `Matrix` has entries in F_q, `PolyMatrix` in F_q[t] with a degree cap. Values
 * are immutable in the sense that every operation returns a new matrix.
 */

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "nilsupport/error.hpp"
#include "nilsupport/ring.hpp"

namespace nilsupport {

template <CoefficientRing Ring>
class DenseMatrix {
 public:
  using ring_type = Ring;
  using value_type = typename Ring::value_type;

  DenseMatrix() = default;
  DenseMatrix(Ring ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_.zero()) {}
  DenseMatrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<value_type> data)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DimensionError("entry count does not match shape");
  }

  static DenseMatrix zero(Ring ring, std::size_t rows, std::size_t cols) {
    return DenseMatrix(std::move(ring), rows, cols);
  }

  static DenseMatrix identity(Ring ring, std::size_t n) {
    DenseMatrix m(std::move(ring), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = m.ring_.one();
    return m;
  }

  /// Elementary matrix E_{ij} scaled by a (0-based indices).
  static DenseMatrix unit(Ring ring, std::size_t n, std::size_t i, std::size_t j, Elem a = 1) {
    DenseMatrix m(std::move(ring), n, n);
    m(i, j) = m.ring_.from_elem(a);
    return m;
  }

  const Ring& ring() const noexcept { return ring_; }
  const FieldPtr& field() const noexcept { return ring_.field(); }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  const std::vector<value_type>& data() const noexcept { return data_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!ring_.is_zero(x)) return false;
    return true;
  }

  bool is_identity() const { return square() && *this == identity(ring_, rows_); }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    a.require_same_shape(b);
    DenseMatrix r(a.ring_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.ring_.add(a.data_[k], b.data_[k]);
    return r;
  }

  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    a.require_same_shape(b);
    DenseMatrix r(a.ring_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.ring_.sub(a.data_[k], b.data_[k]);
    return r;
  }

  DenseMatrix operator-() const {
    DenseMatrix r(ring_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = ring_.neg(data_[k]);
    return r;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("inner dimensions differ");
    if (!(a.ring_ == b.ring_)) throw DimensionError("coefficient rings differ");
    DenseMatrix r(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& aik = a(i, k);
        if (a.ring_.is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) a.ring_.mul_add(r(i, j), aik, b(k, j));
      }
    }
    for (auto& x : r.data_) a.ring_.normalize(x);
    return r;
  }

  DenseMatrix scaled(const value_type& s) const {
    DenseMatrix r(ring_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = ring_.mul(s, data_[k]);
    return r;
  }

  DenseMatrix transpose() const {
    DenseMatrix r(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  DenseMatrix pow(std::uint64_t e) const {
    if (!square()) throw DimensionError("power of a non-square matrix");
    DenseMatrix r = identity(ring_, rows_);
    DenseMatrix b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// Entrywise x -> x^{p^r} (polynomial entries: coefficients and t-degrees both).
  DenseMatrix frob_power(unsigned r) const {
    if (r == 0) return *this;
    DenseMatrix out(ring_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = ring_.frob(data_[k], r);
    return out;
  }

  DenseMatrix submatrix(const std::vector<std::size_t>& row_idx,
                        const std::vector<std::size_t>& col_idx) const {
    DenseMatrix r(ring_, row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
      for (std::size_t j = 0; j < col_idx.size(); ++j) r(i, j) = (*this)(row_idx[i], col_idx[j]);
    return r;
  }

  /// Same entries viewed over another ring with the same value type (e.g. new cap).
  DenseMatrix with_ring(Ring ring) const {
    DenseMatrix r(std::move(ring), rows_, cols_, data_);
    for (auto& x : r.data_) r.ring_.normalize(x);
    return r;
  }

 private:
  void require_same_shape(const DenseMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("shapes differ");
    if (!(ring_ == b.ring_)) throw DimensionError("coefficient rings differ");
  }

  Ring ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

using Matrix = DenseMatrix<ScalarRing>;
using PolyMatrix = DenseMatrix<PolyRing>;

/// Left-major Kronecker product: basis (i, j) -> i * dim(b) + j.
template <CoefficientRing Ring>
DenseMatrix<Ring> kron(const DenseMatrix<Ring>& a, const DenseMatrix<Ring>& b) {
  if (!(a.ring() == b.ring())) throw DimensionError("coefficient rings differ");
  const auto& ring = a.ring();
  DenseMatrix<Ring> r(ring, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (ring.is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = ring.mul(a(i, j), b(k, l));
    }
  return r;
}

template <CoefficientRing Ring>
DenseMatrix<Ring> direct_sum(const DenseMatrix<Ring>& a, const DenseMatrix<Ring>& b) {
  if (!(a.ring() == b.ring())) throw DimensionError("coefficient rings differ");
  DenseMatrix<Ring> r(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

/// Lie bracket XY - YX.
template <CoefficientRing Ring>
DenseMatrix<Ring> commutator(const DenseMatrix<Ring>& x, const DenseMatrix<Ring>& y) {
  if (!x.square() || !y.square() || x.rows() != y.rows())
    throw DimensionError("bracket needs square matrices of equal size");
  return x * y - y * x;
}

/// Determinant over a commutative ring without division (Bird's algorithm).
template <CoefficientRing Ring>
typename Ring::value_type determinant(const DenseMatrix<Ring>& a) {
  if (!a.square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  const auto& ring = a.ring();
  if (n == 0) return ring.one();
  DenseMatrix<Ring> x = a;
  for (std::size_t step = 1; step < n; ++step) {
    DenseMatrix<Ring> mu(ring, n, n);
    auto acc = ring.zero();
    for (std::size_t i = n; i-- > 0;) {
      mu(i, i) = ring.neg(acc);
      acc = ring.add(acc, x(i, i));
      for (std::size_t j = i + 1; j < n; ++j) mu(i, j) = x(i, j);
    }
    x = mu * a;
  }
  return n % 2 == 1 ? x(0, 0) : ring.neg(x(0, 0));
}

/// Build an F_q matrix from small integers (reduced into the prime field for
/// m = 1, interpreted as element codes otherwise).
inline Matrix matrix_from_codes(const FieldPtr& field, std::size_t rows, std::size_t cols,
                                const std::vector<std::int64_t>& codes) {
  if (codes.size() != rows * cols) throw DimensionError("entry count does not match shape");
  std::vector<Elem> data(codes.size());
  for (std::size_t k = 0; k < codes.size(); ++k) {
    if (field->m() == 1) {
      data[k] = field->from_int(codes[k]);
    } else {
      if (codes[k] < 0 || codes[k] >= static_cast<std::int64_t>(field->q()))
        throw DimensionError("element code out of range");
      data[k] = static_cast<Elem>(codes[k]);
    }
  }
  return Matrix(ScalarRing(field), rows, cols, std::move(data));
}

inline Matrix square_matrix(const FieldPtr& field, std::size_t n,
                            std::initializer_list<std::int64_t> codes) {
  return matrix_from_codes(field, n, n, std::vector<std::int64_t>(codes));
}

inline Matrix diagonal(const FieldPtr& field, const std::vector<Elem>& d) {
  Matrix m(ScalarRing(field), d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

/// n x n nilpotent Jordan block: ones on the superdiagonal.
inline Matrix jordan_block(const FieldPtr& field, std::size_t n) {
  Matrix m(ScalarRing(field), n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1;
  return m;
}

}  // namespace nilsupport
