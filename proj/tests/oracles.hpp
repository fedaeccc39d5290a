#pragma once

// Independent reference computations for the test suite. Nothing here calls the
// library's row reduction, rank formula, enumeration or closed forms; prime-field
// routines use plain integers mod p.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "nilsupport/nilsupport.hpp"

namespace oracle {

using IntMat = std::vector<std::vector<std::int64_t>>;
using IntVec = std::vector<std::int64_t>;

inline std::int64_t md(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  for (std::int64_t x = 1; x < p; ++x)
    if (md(a * x, p) == 1) return x;
  return 0;
}

inline IntMat zeros(std::size_t r, std::size_t c) { return IntMat(r, IntVec(c, 0)); }

inline IntMat mul(const IntMat& a, const IntMat& b, std::int64_t p) {
  IntMat c = zeros(a.size(), b.empty() ? 0 : b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] = md(c[i][j] + a[i][k] * b[k][j], p);
  return c;
}

inline IntVec apply(const IntMat& a, const IntVec& v, std::int64_t p) {
  IntVec w(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) w[i] = md(w[i] + a[i][j] * v[j], p);
  return w;
}

inline IntMat identity(std::size_t n) {
  IntMat m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMat power(const IntMat& a, std::size_t e, std::int64_t p) {
  IntMat r = identity(a.size());
  for (std::size_t i = 0; i < e; ++i) r = mul(r, a, p);
  return r;
}

inline bool is_zero(const IntMat& a) {
  for (const auto& row : a)
    for (auto x : row)
      if (x) return false;
  return true;
}

/// Rank by eliminating columns right to left with the bottom-most pivot.
inline std::size_t rank_colmajor(IntMat a, std::int64_t p) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<bool> used(rows, false);
  std::size_t rk = 0;
  for (std::size_t c = cols; c-- > 0;) {
    std::size_t piv = rows;
    for (std::size_t i = rows; i-- > 0;)
      if (!used[i] && a[i][c]) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    used[piv] = true;
    ++rk;
    const std::int64_t iv = inv_mod(a[piv][c], p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == piv || !a[i][c]) continue;
      const std::int64_t f = md(a[i][c] * iv, p);
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = md(a[i][j] - f * a[piv][j], p);
    }
  }
  return rk;
}

/// Growing span of vectors in F_p^n, kept as reduced rows keyed by pivot.
class Span {
 public:
  Span(std::size_t n, std::int64_t p) : n_(n), p_(p) {}

  IntVec reduce(IntVec v) const {
    for (const auto& [piv, row] : rows_) {
      if (!v[piv]) continue;
      const std::int64_t f = v[piv];
      for (std::size_t j = 0; j < n_; ++j) v[j] = md(v[j] - f * row[j], p_);
    }
    return v;
  }
  bool contains(const IntVec& v) const {
    const IntVec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; });
  }
  bool insert(const IntVec& v) {
    IntVec r = reduce(v);
    std::size_t piv = n_;
    for (std::size_t j = 0; j < n_; ++j)
      if (r[j]) {
        piv = j;
        break;
      }
    if (piv == n_) return false;
    const std::int64_t iv = inv_mod(r[piv], p_);
    for (auto& x : r) x = md(x * iv, p_);
    for (auto& [q, row] : rows_)
      if (row[piv]) {
        const std::int64_t f = row[piv];
        for (std::size_t j = 0; j < n_; ++j) row[j] = md(row[j] - f * r[j], p_);
      }
    rows_.emplace_back(piv, r);
    return true;
  }
  std::size_t dim() const { return rows_.size(); }

 private:
  std::size_t n_;
  std::int64_t p_;
  std::vector<std::pair<std::size_t, IntVec>> rows_;
};

/// Kernel basis by brute force over F_p^n: feasible only for tiny n.
inline std::vector<IntVec> kernel_brute(const IntMat& a, std::int64_t p) {
  const std::size_t n = a.empty() ? 0 : a[0].size();
  std::vector<IntVec> basis;
  Span span(n, p);
  IntVec v(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      const IntVec w = apply(a, v, p);
      if (std::all_of(w.begin(), w.end(), [](std::int64_t x) { return x == 0; }) && span.insert(v))
        basis.push_back(v);
      return;
    }
    for (std::int64_t x = 0; x < p; ++x) {
      v[k] = x;
      rec(k + 1);
    }
  };
  rec(0);
  return basis;
}

/// Kernel basis by Gaussian elimination on the augmented system, mod p.
inline std::vector<IntVec> kernel(const IntMat& a, std::int64_t p) {
  const std::size_t rows = a.size(), n = rows ? a[0].size() : 0;
  IntMat m = a;
  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (m[i][c]) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    const std::int64_t iv = inv_mod(m[r][c], p);
    for (auto& x : m[r]) x = md(x * iv, p);
    for (std::size_t i = 0; i < rows; ++i)
      if (i != r && m[i][c]) {
        const std::int64_t f = m[i][c];
        for (std::size_t j = 0; j < n; ++j) m[i][j] = md(m[i][j] - f * m[r][j], p);
      }
    pivcol.push_back(c);
    ++r;
  }
  std::vector<bool> is_piv(n, false);
  for (auto c : pivcol) is_piv[c] = true;
  std::vector<IntVec> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    IntVec v(n, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < pivcol.size(); ++k) v[pivcol[k]] = md(-m[k][free], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Jordan block sizes of a nilpotent N by explicit chain construction: chain
/// tops of length k are chosen in ker N^k outside ker N^{k-1} + N(ker N^{k+1}),
/// then the full chain system is checked to be a basis on which N acts as shifts.
/// Returns an empty vector if N is not nilpotent or the chains fail to span.
inline std::vector<std::size_t> chain_basis_jordan(const IntMat& n_mat, std::int64_t p) {
  const std::size_t dim = n_mat.size();
  if (dim == 0) return {};
  std::size_t height = 0;
  while (height <= dim && !is_zero(power(n_mat, height, p))) ++height;
  if (height > dim) return {};

  std::vector<std::vector<IntVec>> ker(height + 2);
  for (std::size_t k = 0; k <= height + 1; ++k) ker[k] = kernel(power(n_mat, k, p), p);

  std::vector<std::size_t> parts;
  Span chains(dim, p);
  std::vector<IntVec> chosen_vectors;
  for (std::size_t k = height; k >= 1; --k) {
    Span lower(dim, p);
    for (const auto& v : ker[k - 1]) lower.insert(v);
    for (const auto& v : ker[k + 1]) lower.insert(apply(n_mat, v, p));
    // Tops of longer chains pushed down to level k are already inside N(ker N^{k+1}).
    for (const auto& v : ker[k]) {
      if (!lower.insert(v)) continue;
      parts.push_back(k);
      IntVec w = v;
      for (std::size_t i = 0; i < k; ++i) {
        chosen_vectors.push_back(w);
        w = apply(n_mat, w, p);
      }
    }
  }
  for (const auto& v : chosen_vectors)
    if (!chains.insert(v)) return {};
  if (chains.dim() != dim) return {};
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

inline IntMat to_int(const nilsupport::Matrix& m) {
  IntMat a = zeros(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return a;
}

/// Every n x n matrix over F_p with entries in lexicographic order.
inline void for_each_int_matrix(std::size_t n, std::int64_t p, const std::function<void(const IntMat&)>& fn) {
  IntMat m = zeros(n, n);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n * n) {
      fn(m);
      return;
    }
    for (std::int64_t x = 0; x < p; ++x) {
      m[k / n][k % n] = x;
      rec(k + 1);
    }
  };
  rec(0);
}

inline std::size_t brute_p_nilpotent_count(std::size_t n, std::int64_t p) {
  std::size_t count = 0;
  for_each_int_matrix(n, p, [&](const IntMat& m) {
    if (is_zero(power(m, static_cast<std::size_t>(p), p))) ++count;
  });
  return count;
}

/// Commuting p-nilpotent r-tuples by an unstructured scan of all r-tuples.
inline std::size_t brute_cr_count(std::size_t n, std::size_t r, std::int64_t p) {
  std::vector<IntMat> all;
  for_each_int_matrix(n, p, [&](const IntMat& m) { all.push_back(m); });
  std::size_t count = 0;
  std::vector<std::size_t> idx(r, 0);
  while (true) {
    bool ok = true;
    for (std::size_t a = 0; a < r && ok; ++a) {
      if (!is_zero(power(all[idx[a]], static_cast<std::size_t>(p), p))) ok = false;
      for (std::size_t b = a + 1; b < r && ok; ++b)
        if (mul(all[idx[a]], all[idx[b]], p) != mul(all[idx[b]], all[idx[a]], p)) ok = false;
    }
    if (ok) ++count;
    std::size_t k = r;
    while (k > 0 && ++idx[k - 1] == all.size()) idx[--k] = 0;
    if (k == 0) break;
  }
  return count;
}

/// Local operator of a G_a(r)-module at t -> sum_s b_s t^{p^s}, computed from
/// the generic action rho(T) = prod_j exp(u_j T^{p^j}) of the module: for each s
/// substitute T = b_s t and read off the t^{p^s} coefficient, then sum over s.
inline nilsupport::Matrix ga_alpha_oracle(const nilsupport::EAModule& m, const std::vector<nilsupport::Elem>& b) {
  using namespace nilsupport;
  const Field& f = *m.field();
  const std::size_t p = f.p();
  const std::size_t dim = m.dim();
  std::size_t top = 1;
  for (std::size_t s = 0; s < m.r(); ++s) top *= p;  // T^{p^r} = 0 in the coordinate ring
  using PolyOfMat = std::vector<Matrix>;             // index = t-degree
  auto mat_zero = [&] { return Matrix(ScalarRing(m.field()), dim, dim); };
  auto product = [&](const PolyOfMat& x, const PolyOfMat& y) {
    PolyOfMat z(std::min(top, x.size() + y.size() - 1), mat_zero());
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size() && i + j < z.size(); ++j) z[i + j] = z[i + j] + x[i] * y[j];
    return z;
  };
  Matrix alpha = mat_zero();
  for (std::size_t s = 0; s < b.size(); ++s) {
    PolyOfMat rho{Matrix::identity(ScalarRing(m.field()), dim)};
    std::size_t pj = 1;
    for (std::size_t j = 0; j < m.r(); ++j, pj *= p) {
      // exp(u_j (b_s t)^{p^j}) = sum_{i<p} u_j^i b_s^{i p^j} t^{i p^j} / i!
      PolyOfMat factor(std::min(top, (p - 1) * pj + 1), mat_zero());
      Matrix upow = Matrix::identity(ScalarRing(m.field()), dim);
      Elem fact = 1;
      for (std::size_t i = 0; i < p && i * pj < top; ++i) {
        if (i > 0) {
          upow = upow * m.ops()[j];
          fact = f.mul(fact, f.from_int(static_cast<std::int64_t>(i)));
        }
        const Elem c = f.mul(f.pow(b[s], i * pj), f.inv(fact));
        factor[i * pj] = factor[i * pj] + upow.scaled(c);
      }
      rho = product(rho, factor);
    }
    std::size_t ps = 1;
    for (std::size_t k = 0; k < s; ++k) ps *= p;
    if (ps < rho.size()) alpha = alpha + rho[ps];
  }
  return alpha;
}

}  // namespace oracle
