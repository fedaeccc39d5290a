#pragma once

/**
 * @file liealg.hpp
 * @brief gl_n as a restricted Lie algebra, its p-nilpotent cone, and the variety
 * of r-tuples of pairwise commuting p-nilpotent matrices.
 *
 * A NilTuple (B_0, ..., B_{r-1}) is a k-point of that variety, i.e. a height-r
 * infinitesimal 1-parameter subgroup of GL_n.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nilsupport/linalg.hpp"
#include "nilsupport/matrix.hpp"

namespace nilsupport {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

inline Matrix bracket(const Matrix& x, const Matrix& y) { return commutator(x, y); }

/// The p-operation of gl_n: the matrix p-th power.
inline Matrix p_power(const Matrix& x) {
  if (!x.square()) throw DimensionError("p-power of a non-square matrix");
  return x.pow(x.field()->p());
}

inline bool is_p_nilpotent(const Matrix& x) { return p_power(x).is_zero(); }

/// Outcome of checking the equations [B_i, B_j] = B_i^[p] = 0.
struct TupleCheck {
  enum class Failure { None, PPower, Commutator, Shape };
  Failure failure = Failure::None;
  std::size_t i = 0;
  std::size_t j = 0;

  bool ok() const noexcept { return failure == Failure::None; }
  explicit operator bool() const noexcept { return ok(); }

  std::string describe() const {
    switch (failure) {
      case Failure::None: return "ok";
      case Failure::PPower: return "B_" + std::to_string(i) + "^p != 0";
      case Failure::Commutator:
        return "[B_" + std::to_string(i) + ", B_" + std::to_string(j) + "] != 0";
      case Failure::Shape: return "matrix " + std::to_string(i) + " has the wrong shape or field";
    }
    return "unknown";
  }
};

/// p-powers are checked first (in index order), then commutators in (i, j) order.
inline TupleCheck is_commuting_nilpotent(const std::vector<Matrix>& mats) {
  TupleCheck res;
  if (mats.empty()) return res;
  const std::size_t n = mats[0].rows();
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (!mats[i].square() || mats[i].rows() != n || !same_field(mats[i].field(), mats[0].field())) {
      res.failure = TupleCheck::Failure::Shape;
      res.i = i;
      return res;
    }
  }
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (!is_p_nilpotent(mats[i])) {
      res.failure = TupleCheck::Failure::PPower;
      res.i = i;
      return res;
    }
  }
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      if (!bracket(mats[i], mats[j]).is_zero()) {
        res.failure = TupleCheck::Failure::Commutator;
        res.i = i;
        res.j = j;
        return res;
      }
  return res;
}

/// r-tuple of pairwise commuting p-nilpotent n x n matrices. Validated on construction.
class NilTuple {
 public:
  NilTuple(FieldPtr field, std::size_t n, std::vector<Matrix> mats)
      : field_(std::move(field)), n_(n), mats_(std::move(mats)) {
    for (const auto& m : mats_)
      if (m.rows() != n_ || !same_field(m.field(), field_))
        throw InvalidTuple("tuple entry has the wrong shape or field");
    auto check = is_commuting_nilpotent(mats_);
    if (!check) throw InvalidTuple("not a commuting p-nilpotent tuple: " + check.describe());
  }

  static NilTuple zero(FieldPtr field, std::size_t n, std::size_t r) {
    std::vector<Matrix> mats(r, Matrix(ScalarRing(field), n, n));
    return NilTuple(std::move(field), n, std::move(mats), Unchecked{});
  }

  /// Skips validation; callers guarantee the equations already hold.
  static NilTuple trusted(FieldPtr field, std::size_t n, std::vector<Matrix> mats) {
    return NilTuple(std::move(field), n, std::move(mats), Unchecked{});
  }

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t r() const noexcept { return mats_.size(); }
  const std::vector<Matrix>& mats() const noexcept { return mats_; }
  const Matrix& operator[](std::size_t s) const { return mats_.at(s); }

  bool is_zero() const {
    for (const auto& m : mats_)
      if (!m.is_zero()) return false;
    return true;
  }

  friend bool operator==(const NilTuple& a, const NilTuple& b) {
    return same_field(a.field_, b.field_) && a.n_ == b.n_ && a.mats_ == b.mats_;
  }

 private:
  struct Unchecked {};
  NilTuple(FieldPtr field, std::size_t n, std::vector<Matrix> mats, Unchecked)
      : field_(std::move(field)), n_(n), mats_(std::move(mats)) {}

  FieldPtr field_;
  std::size_t n_;
  std::vector<Matrix> mats_;
};

namespace detail {

// base^exp saturating at uint64 max.
inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

// Calls fn on the row-major entry list of every n x n matrix over F_q, in lexicographic order.
template <class Fn>
void for_each_entry_list(const FieldPtr& field, std::size_t n, Fn&& fn) {
  const std::size_t len = n * n;
  const Elem q = field->q();
  std::vector<Elem> entries(len, 0);
  while (true) {
    fn(static_cast<const std::vector<Elem>&>(entries));
    std::size_t k = len;
    while (k > 0) {
      --k;
      if (++entries[k] < q) break;
      entries[k] = 0;
      if (k == 0) return;
    }
    if (len == 0) return;
  }
}

}  // namespace detail

inline void check_budget(std::uint64_t candidates, std::uint64_t budget, const std::string& what) {
  if (budget == 0) throw BudgetExceeded("budget must be positive");
  if (candidates > budget)
    throw BudgetExceeded(what + " needs " + std::to_string(candidates) +
                         " candidates, budget is " + std::to_string(budget) +
                         "; use sampling instead");
}

/// Number of candidate tuples scanned by exhaustive enumeration: q^{n^2 r}.
inline std::uint64_t cr_candidates(std::size_t n, std::size_t r, const Field& field) {
  return detail::saturating_pow(field.q(), static_cast<std::uint64_t>(n * n * r));
}

/// All X in gl_n(F_q) with X^p = 0, lexicographic in entry codes.
inline std::vector<Matrix> nilpotent_cone(std::size_t n, const FieldPtr& field,
                                          std::uint64_t budget = kDefaultBudget) {
  check_budget(detail::saturating_pow(field->q(), n * n), budget, "nilpotent cone scan");
  std::vector<Matrix> out;
  const Field& f = *field;
  detail::for_each_entry_list(field, n, [&](const std::vector<Elem>& entries) {
    // A nilpotent matrix has tr(N) = tr(N^2) = 0.
    Elem tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr = f.add(tr, entries[i * n + i]);
    if (tr != 0) return;
    Elem tr2 = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) tr2 = f.add(tr2, f.mul(entries[i * n + j], entries[j * n + i]));
    if (tr2 != 0) return;
    Matrix m(ScalarRing(field), n, n, entries);
    if (is_p_nilpotent(m)) out.push_back(std::move(m));
  });
  return out;
}

/// Streams every NilTuple of length r over F_q in lexicographic order of the
/// concatenated entry lists. With `workers > 1` only tuples whose first matrix has
/// cone index congruent to `worker` are visited; the union over workers is the
/// full set. Returning false from fn stops the scan.
template <class Fn>
void for_each_cr(std::size_t n, std::size_t r, const FieldPtr& field, Fn&& fn,
                 std::uint64_t budget = kDefaultBudget, std::size_t worker = 0,
                 std::size_t workers = 1) {
  check_budget(cr_candidates(n, r, *field), budget, "commuting variety enumeration");
  if (r == 0) {
    if (worker == 0) fn(NilTuple::zero(field, n, 0));
    return;
  }
  const auto cone = nilpotent_cone(n, field, std::numeric_limits<std::uint64_t>::max());
  std::vector<std::size_t> idx(r, 0);
  std::vector<Matrix> chosen;
  chosen.reserve(r);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (stop) return;
    if (depth == r) {
      if (!fn(NilTuple::trusted(field, n, chosen))) stop = true;
      return;
    }
    for (std::size_t c = 0; c < cone.size() && !stop; ++c) {
      if (depth == 0 && c % workers != worker) continue;
      bool commutes = true;
      for (const auto& b : chosen)
        if (!bracket(b, cone[c]).is_zero()) {
          commutes = false;
          break;
        }
      if (!commutes) continue;
      chosen.push_back(cone[c]);
      rec(depth + 1);
      chosen.pop_back();
    }
  };
  rec(0);
}

inline std::vector<NilTuple> enumerate_cr(std::size_t n, std::size_t r, const FieldPtr& field,
                                          std::uint64_t budget = kDefaultBudget) {
  std::vector<NilTuple> out;
  for_each_cr(n, r, field, [&](NilTuple t) {
    out.push_back(std::move(t));
    return true;
  }, budget);
  return out;
}

struct SampleOptions {
  std::size_t rejection_limit = 2000;
};

/// Seeded draw of one NilTuple. Uniform candidates are rejection-tested first;
/// after `rejection_limit` failures the tuple is built as polynomials without
/// constant term in one p-nilpotent power of a random strictly upper-triangular
/// matrix, which commute and are p-nilpotent by construction.
inline NilTuple sample_cr(std::size_t n, std::size_t r, const FieldPtr& field, std::uint64_t seed,
                          SampleOptions opts = {}) {
  std::mt19937_64 rng(seed);
  const Elem q = field->q();
  auto draw = [&] { return static_cast<Elem>(rng() % q); };
  for (std::size_t attempt = 0; attempt < opts.rejection_limit; ++attempt) {
    std::vector<Matrix> mats;
    for (std::size_t s = 0; s < r; ++s) {
      Matrix m(ScalarRing(field), n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = draw();
      mats.push_back(std::move(m));
    }
    if (is_commuting_nilpotent(mats)) return NilTuple::trusted(field, n, std::move(mats));
  }
  Matrix upper(ScalarRing(field), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) upper(i, j) = draw();
  const std::size_t p = field->p();
  const std::size_t k = n == 0 ? 1 : (n + p - 1) / p;  // k p >= n, so (upper^k)^p = 0
  const Matrix base = upper.pow(k);
  std::vector<Matrix> powers;
  Matrix acc = base;
  for (std::size_t j = 1; j <= n; ++j) {
    powers.push_back(acc);
    acc = acc * base;
  }
  std::vector<Matrix> mats;
  for (std::size_t s = 0; s < r; ++s) {
    Matrix m(ScalarRing(field), n, n);
    for (const auto& pw : powers) m = m + pw.scaled(draw());
    mats.push_back(std::move(m));
  }
  return NilTuple(field, n, std::move(mats));
}

}  // namespace nilsupport
