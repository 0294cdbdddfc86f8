#pragma once

// Exact values in {0} ∪ 2^Q ⊂ R>=0, the multiplicative monoid housing every
// absolute value the library produces.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "tnorm/error.hpp"

namespace tnorm {

class Magnitude {
 public:
  /// Zero.
  Magnitude() = default;

  static Magnitude zero() { return Magnitude(); }
  static Magnitude one() { return pow2(mpq_class(0)); }

  /// 2^exponent.
  static Magnitude pow2(mpq_class exponent) {
    exponent.canonicalize();
    Magnitude m;
    m.exponent_ = std::move(exponent);
    return m;
  }
  static Magnitude pow2(long num, long den = 1) { return pow2(mpq_class(num, den)); }

  bool is_zero() const noexcept { return !exponent_.has_value(); }

  /// Exponent of a positive magnitude; throws DomainError on Zero.
  const mpq_class& exponent() const {
    if (!exponent_) throw DomainError("Zero magnitude has no exponent");
    return *exponent_;
  }

  friend Magnitude operator*(const Magnitude& a, const Magnitude& b) {
    if (a.is_zero() || b.is_zero()) return Magnitude();
    return pow2(*a.exponent_ + *b.exponent_);
  }
  Magnitude& operator*=(const Magnitude& b) { return *this = *this * b; }

  friend bool operator==(const Magnitude& a, const Magnitude& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
    return *a.exponent_ == *b.exponent_;
  }

  friend std::strong_ordering operator<=>(const Magnitude& a, const Magnitude& b) {
    if (a.is_zero() || b.is_zero()) {
      return static_cast<int>(!a.is_zero()) <=> static_cast<int>(!b.is_zero());
    }
    const int c = cmp(*a.exponent_, *b.exponent_);
    return c <=> 0;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    return "2^" + exponent_->get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Magnitude& m) { return os << m.to_string(); }

  /// Inverse of to_string: "0" or "2^<rational>".
  static Magnitude parse(std::string_view text) {
    if (text == "0") return Magnitude();
    if (text.size() < 3 || text.substr(0, 2) != "2^") {
      throw ParseError("expected magnitude of the form 0 or 2^p/q", 0);
    }
    mpq_class q;
    if (q.set_str(std::string(text.substr(2)), 10) != 0) throw ParseError("malformed exponent", 2);
    if (q.get_den() == 0) throw ParseError("zero denominator in exponent", 2);
    return pow2(std::move(q));
  }

 private:
  std::optional<mpq_class> exponent_;
};

inline Magnitude mag_mul(const Magnitude& a, const Magnitude& b) { return a * b; }

inline std::strong_ordering mag_cmp(const Magnitude& a, const Magnitude& b) { return a <=> b; }

inline Magnitude mag_pow(const Magnitude& a, long n) {
  if (a.is_zero()) {
    if (n <= 0) throw DomainError("Zero magnitude raised to a non-positive power");
    return a;
  }
  return Magnitude::pow2(a.exponent() * n);
}

inline const Magnitude& mag_max(const Magnitude& a, const Magnitude& b) { return a < b ? b : a; }

/// Exact comparison of a magnitude against a rational.
inline std::strong_ordering compare_to_rational(const Magnitude& m, const mpq_class& r) {
  if (m.is_zero()) return 0 <=> sgn(r);
  if (sgn(r) <= 0) return std::strong_ordering::greater;
  // 2^(n/d) vs P/Q  <=>  2^n * Q^d vs P^d
  const mpq_class& e = m.exponent();
  const unsigned long d = e.get_den().get_ui();
  mpz_class two_pow_abs;
  mpz_ui_pow_ui(two_pow_abs.get_mpz_t(), 2, mpz_class(abs(e.get_num())).get_ui());
  mpz_class lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), r.get_den().get_mpz_t(), d);
  mpz_pow_ui(rhs.get_mpz_t(), r.get_num().get_mpz_t(), d);
  if (sgn(e.get_num()) >= 0) {
    lhs *= two_pow_abs;
  } else {
    rhs *= two_pow_abs;
  }
  return cmp(lhs, rhs) <=> 0;
}

}  // namespace tnorm
