#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace plsurj {

/// Exact rational number in lowest terms, backed by GMP.
///
/// A thin value wrapper so that expression templates never escape into
/// `auto` variables.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : v_(static_cast<long>(n)) {}  // NOLINT: implicit by design
  Rational(long long num, long long den);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  explicit Rational(mpq_class&& v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p/q", "p" or a finite decimal such as "-0.125".
  static Rational parse(std::string_view text);

  /// "p/q", or "p" when the denominator is one.
  std::string str() const;
  double to_double() const { return v_.get_d(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  const mpq_class& mpq() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Dyadic bounds on sqrt(q) for q >= 0 with `bits` fractional bits:
/// sqrt_lower(q)^2 <= q <= sqrt_upper(q)^2, exact when q is the square of a
/// rational.
Rational sqrt_upper(const Rational& q, unsigned bits = 48);
Rational sqrt_lower(const Rational& q, unsigned bits = 48);

/// Decimal rendering with `digits` significant digits; cosmetic only.
std::string to_decimal(const Rational& r, int digits = 12);

}  // namespace plsurj
