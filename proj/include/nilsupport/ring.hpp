#pragma once

/**
 * @file ring.hpp
 * @brief Coefficient rings for dense matrices: F_q itself and F_q[t] with a degree cap.
 *
 * A ring type provides `value_type`, `zero()`, `one()`, `add`, `sub`, `neg`,
 * `mul`, `mul_add` (accumulate without normalizing), `normalize`, `frob` and
 * `from_elem`. Matrix kernels are written once against this interface.
 */

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nilsupport/field.hpp"

namespace nilsupport {

class ScalarRing {
 public:
  using value_type = Elem;

  ScalarRing() = default;
  explicit ScalarRing(FieldPtr field) : field_(std::move(field)) {}

  const FieldPtr& field() const noexcept { return field_; }
  const Field& f() const noexcept { return *field_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_elem(Elem a) const { return a; }
  Elem add(Elem a, Elem b) const { return field_->add(a, b); }
  Elem sub(Elem a, Elem b) const { return field_->sub(a, b); }
  Elem neg(Elem a) const { return field_->neg(a); }
  Elem mul(Elem a, Elem b) const { return field_->mul(a, b); }
  void mul_add(Elem& acc, Elem a, Elem b) const { acc = field_->add(acc, field_->mul(a, b)); }
  void normalize(Elem&) const {}
  bool is_zero(Elem a) const { return a == 0; }
  Elem frob(Elem a, unsigned r) const { return field_->frob(a, r); }

  friend bool operator==(const ScalarRing& a, const ScalarRing& b) {
    return same_field(a.field_, b.field_);
  }

 private:
  FieldPtr field_;
};

/// Element of F_q[t]: coefficients, constant term first, no trailing zeros.
struct Poly {
  std::vector<Elem> c;

  Poly() = default;
  explicit Poly(std::vector<Elem> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(Elem a) { return a == 0 ? Poly{} : Poly{std::vector<Elem>{a}}; }
  static Poly monomial(Elem a, std::size_t d) {
    if (a == 0) return Poly{};
    std::vector<Elem> v(d + 1, 0);
    v[d] = a;
    return Poly{std::move(v)};
  }

  bool is_zero() const { return c.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c.size()) - 1; }
  Elem coeff(std::size_t d) const { return d < c.size() ? c[d] : 0; }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  friend bool operator==(const Poly&, const Poly&) = default;
};

/// F_q[t] with entries restricted to degree <= cap. In truncating mode the ring is
/// F_q[t]/(t^{cap+1}); otherwise any result above the cap raises DegreeOverflow.
class PolyRing {
 public:
  using value_type = Poly;

  PolyRing() = default;
  PolyRing(FieldPtr field, std::size_t cap, bool truncating = false)
      : field_(std::move(field)), cap_(cap), truncating_(truncating) {}

  const FieldPtr& field() const noexcept { return field_; }
  const Field& f() const noexcept { return *field_; }
  std::size_t cap() const noexcept { return cap_; }
  bool truncating() const noexcept { return truncating_; }

  Poly zero() const { return Poly{}; }
  Poly one() const { return Poly::constant(1); }
  Poly from_elem(Elem a) const { return Poly::constant(a); }

  Poly add(const Poly& a, const Poly& b) const {
    Poly r = a;
    add_into(r, b);
    r.trim();
    return r;
  }

  Poly neg(const Poly& a) const {
    Poly r = a;
    for (auto& x : r.c) x = field_->neg(x);
    return r;
  }

  Poly sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

  Poly mul(const Poly& a, const Poly& b) const {
    Poly r;
    mul_add(r, a, b);
    normalize(r);
    return r;
  }

  /// acc += a*b without trimming or cap checks (truncating mode drops terms above cap).
  void mul_add(Poly& acc, const Poly& a, const Poly& b) const {
    if (a.c.empty() || b.c.empty()) return;
    std::size_t top = a.c.size() + b.c.size() - 2;
    if (truncating_) top = std::min(top, cap_);
    if (acc.c.size() < top + 1) acc.c.resize(top + 1, 0);
    for (std::size_t i = 0; i < a.c.size() && i <= top; ++i) {
      if (a.c[i] == 0) continue;
      const std::size_t jmax = std::min(b.c.size() - 1, top - i);
      for (std::size_t j = 0; j <= jmax; ++j)
        acc.c[i + j] = field_->add(acc.c[i + j], field_->mul(a.c[i], b.c[j]));
    }
  }

  void normalize(Poly& a) const {
    a.trim();
    check_cap(a);
  }

  bool is_zero(const Poly& a) const { return a.is_zero(); }

  /// sum a_i t^i -> sum a_i^{p^r} t^{i p^r}
  Poly frob(const Poly& a, unsigned r) const {
    std::size_t scale = 1;
    for (unsigned i = 0; i < r; ++i) scale *= field_->p();
    return substitute_power(a, scale, r);
  }

  /// sum a_i t^i -> sum a_i^{p^coeff_frob} t^{i k}
  Poly substitute_power(const Poly& a, std::size_t k, unsigned coeff_frob = 0) const {
    if (a.c.empty()) return Poly{};
    std::size_t top = (a.c.size() - 1) * k;
    if (truncating_) top = std::min(top, cap_);
    std::vector<Elem> out(top + 1, 0);
    for (std::size_t i = 0; i < a.c.size() && i * k <= top; ++i)
      out[i * k] = field_->frob(a.c[i], coeff_frob);
    Poly r{std::move(out)};
    check_cap(r);
    return r;
  }

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return same_field(a.field_, b.field_) && a.cap_ == b.cap_ && a.truncating_ == b.truncating_;
  }

 private:
  void add_into(Poly& r, const Poly& b) const {
    if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), 0);
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = field_->add(r.c[i], b.c[i]);
  }

  void check_cap(Poly& a) const {
    if (a.degree() > static_cast<long>(cap_)) {
      if (truncating_) {
        a.c.resize(cap_ + 1);
        a.trim();
      } else {
        throw DegreeOverflow("polynomial degree " + std::to_string(a.degree()) +
                             " exceeds cap " + std::to_string(cap_));
      }
    }
  }

  FieldPtr field_;
  std::size_t cap_ = 0;
  bool truncating_ = false;
};

template <class R>
concept CoefficientRing = requires(const R& ring, typename R::value_type& acc,
                                   const typename R::value_type& x, Elem e) {
  { ring.zero() } -> std::same_as<typename R::value_type>;
  { ring.one() } -> std::same_as<typename R::value_type>;
  { ring.add(x, x) } -> std::same_as<typename R::value_type>;
  { ring.sub(x, x) } -> std::same_as<typename R::value_type>;
  { ring.mul(x, x) } -> std::same_as<typename R::value_type>;
  { ring.neg(x) } -> std::same_as<typename R::value_type>;
  { ring.frob(x, 1u) } -> std::same_as<typename R::value_type>;
  { ring.from_elem(e) } -> std::same_as<typename R::value_type>;
  { ring.is_zero(x) } -> std::same_as<bool>;
  ring.mul_add(acc, x, x);
  ring.normalize(acc);
  { ring.field() } -> std::convertible_to<FieldPtr>;
};

}  // namespace nilsupport
