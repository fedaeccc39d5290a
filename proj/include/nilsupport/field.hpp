#pragma once

/**
 * @file field.hpp
 * @brief Exact arithmetic in F_q, q = p^m, m <= 4.
 *
 * Elements of F_p[x]/(modulus) are encoded as integers 0..q-1 whose base-p
 * digits are the polynomial coefficients, constant term first. For m = 1 the
 * encoding is the usual residue.
 */

#include <cstdint>
#include <memory>
#include <vector>

#include "nilsupport/error.hpp"

namespace nilsupport {

using Elem = std::uint32_t;

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  /// Coefficients of the monic modulus, constant term first, length m + 1.
  /// Ignored when m = 1.
  std::vector<std::uint32_t> modulus;

  static FieldSpec prime(std::uint32_t p) { return FieldSpec{p, 1, {}}; }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    if (a.p != b.p || a.m != b.m) return false;
    return a.m == 1 || a.modulus == b.modulus;
  }
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomial helpers over F_p, coefficient vectors constant term first.
inline void trim(std::vector<std::uint32_t>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b.
inline std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a,
                                           const std::vector<std::uint32_t>& b,
                                           std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<std::uint32_t>(
          (a[shift + i] + (p - lead) * b[i]) % p);
    }
    trim(a);
  }
  return a;
}

}  // namespace detail

/// Arithmetic context for one finite field. Immutable after construction.
class Field {
 public:
  explicit Field(FieldSpec spec) : spec_(std::move(spec)) {
    if (!detail::is_prime(spec_.p)) throw FieldError("characteristic is not prime");
    if (spec_.p >= (1u << 31)) throw FieldError("characteristic too large");
    if (spec_.m < 1 || spec_.m > 4) throw FieldError("extension degree must be in 1..4");
    q_ = 1;
    for (std::uint32_t i = 0; i < spec_.m; ++i) {
      if (q_ > (1u << 24) / spec_.p) throw FieldError("field too large");
      q_ *= spec_.p;
    }
    if (spec_.m == 1) {
      spec_.modulus.clear();
      return;
    }
    if (spec_.modulus.size() != spec_.m + 1 || spec_.modulus.back() != 1)
      throw FieldError("modulus must be monic of degree m");
    for (auto c : spec_.modulus)
      if (c >= spec_.p) throw FieldError("modulus coefficient out of range");
    if (!modulus_irreducible()) throw FieldError("modulus is reducible");
    if (q_ <= kTableLimit) build_tables();
  }

  const FieldSpec& spec() const noexcept { return spec_; }
  std::uint32_t p() const noexcept { return spec_.p; }
  std::uint32_t m() const noexcept { return spec_.m; }
  std::uint32_t q() const noexcept { return q_; }

  Elem add(Elem a, Elem b) const {
    if (spec_.m == 1) {
      std::uint32_t s = a + b;
      return s >= spec_.p ? s - spec_.p : s;
    }
    if (!add_.empty()) return add_[a * q_ + b];
    return from_digits(combine(digits(a), digits(b), 1));
  }

  Elem neg(Elem a) const {
    if (spec_.m == 1) return a == 0 ? 0 : spec_.p - a;
    auto d = digits(a);
    for (auto& c : d) c = c == 0 ? 0 : spec_.p - c;
    return from_digits(d);
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (spec_.m == 1)
      return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % spec_.p);
    if (!mul_.empty()) return mul_[a * q_ + b];
    return mul_poly(a, b);
  }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  Elem inv(Elem a) const {
    if (a == 0) throw SingularMatrix("inverse of zero");
    return pow(a, q_ - 2);
  }

  /// a^{p^r}
  Elem frob(Elem a, unsigned r) const {
    r %= spec_.m;
    for (unsigned i = 0; i < r; ++i) a = pow(a, spec_.p);
    return a;
  }

  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(spec_.p);
    if (r < 0) r += spec_.p;
    return static_cast<Elem>(r);
  }

  /// Smallest element (in the integer encoding) generating the multiplicative group.
  Elem primitive_element() const {
    if (q_ == 2) return 1;
    std::vector<std::uint32_t> primes;
    std::uint32_t n = q_ - 1;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        primes.push_back(d);
        while (n % d == 0) n /= d;
      }
    }
    if (n > 1) primes.push_back(n);
    for (Elem g = 2; g < q_; ++g) {
      bool ok = true;
      for (auto f : primes)
        if (pow(g, (q_ - 1) / f) == 1) ok = false;
      if (ok) return g;
    }
    throw InvariantViolation("no primitive element found");
  }

  /// F_p-basis 1, x, ..., x^{m-1} in the integer encoding.
  std::vector<Elem> prime_basis() const {
    std::vector<Elem> b;
    Elem e = 1;
    for (std::uint32_t i = 0; i < spec_.m; ++i, e *= spec_.p) b.push_back(e);
    return b;
  }

  bool in_prime_field(Elem a) const { return a < spec_.p; }

 private:
  static constexpr std::uint32_t kTableLimit = 256;

  std::vector<std::uint32_t> digits(Elem a) const {
    std::vector<std::uint32_t> d(spec_.m);
    for (std::uint32_t i = 0; i < spec_.m; ++i) {
      d[i] = a % spec_.p;
      a /= spec_.p;
    }
    return d;
  }

  Elem from_digits(const std::vector<std::uint32_t>& d) const {
    Elem a = 0;
    for (std::size_t i = d.size(); i-- > 0;) a = a * spec_.p + d[i];
    return a;
  }

  std::vector<std::uint32_t> combine(std::vector<std::uint32_t> a,
                                     const std::vector<std::uint32_t>& b,
                                     std::uint32_t sign) const {
    for (std::size_t i = 0; i < a.size(); ++i)
      a[i] = static_cast<std::uint32_t>((a[i] + sign * b[i]) % spec_.p);
    return a;
  }

  Elem mul_poly(Elem a, Elem b) const {
    auto da = digits(a), db = digits(b);
    std::vector<std::uint32_t> prod(2 * spec_.m - 1, 0);
    for (std::uint32_t i = 0; i < spec_.m; ++i)
      for (std::uint32_t j = 0; j < spec_.m; ++j)
        prod[i + j] = static_cast<std::uint32_t>(
            (prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % spec_.p);
    auto r = detail::poly_mod(prod, spec_.modulus, spec_.p);
    r.resize(spec_.m, 0);
    return from_digits(r);
  }

  // Exhaustive check for monic factors of degree 1..m/2.
  bool modulus_irreducible() const {
    const std::uint32_t p = spec_.p;
    for (std::uint32_t d = 1; 2 * d <= spec_.m; ++d) {
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < d; ++i) count *= p;
      for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<std::uint32_t> f(d + 1, 0);
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < d; ++i) {
          f[i] = static_cast<std::uint32_t>(c % p);
          c /= p;
        }
        f[d] = 1;
        if (detail::poly_mod(spec_.modulus, f, p).empty()) return false;
      }
    }
    return true;
  }

  void build_tables() {
    add_.resize(static_cast<std::size_t>(q_) * q_);
    mul_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a) {
      for (Elem b = 0; b < q_; ++b) {
        add_[a * q_ + b] = from_digits(combine(digits(a), digits(b), 1));
        mul_[a * q_ + b] = mul_poly(a, b);
      }
    }
  }

  FieldSpec spec_;
  std::uint32_t q_ = 0;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
};

using FieldPtr = std::shared_ptr<const Field>;

inline FieldPtr make_field(FieldSpec spec) {
  return std::make_shared<const Field>(std::move(spec));
}

inline FieldPtr prime_field(std::uint32_t p) { return make_field(FieldSpec::prime(p)); }

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || a->spec() == b->spec();
}

}  // namespace nilsupport
