#include "plsurj/rational.hpp"

#include <cstdio>
#include <optional>
#include <ostream>

#include "plsurj/error.hpp"

namespace plsurj {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::CenterOnBoundary: return "CenterOnBoundary";
    case ErrorCode::RayDoesNotExit: return "RayDoesNotExit";
    case ErrorCode::NotFaceClosed: return "NotFaceClosed";
    case ErrorCode::BadIntersection: return "BadIntersection";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::CarrierNotFound: return "CarrierNotFound";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::LipschitzViolation: return "LipschitzViolation";
    case ErrorCode::OracleDomainError: return "OracleDomainError";
    case ErrorCode::NotARefinement: return "NotARefinement";
    case ErrorCode::WitnessNotFound: return "WitnessNotFound";
    case ErrorCode::InternalCheckFailed: return "InternalCheckFailed";
    case ErrorCode::SupBoundNotMet: return "SupBoundNotMet";
    case ErrorCode::OutsideSimplex: return "OutsideSimplex";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::ZeroDimensionalL: return "ZeroDimensionalL";
    case ErrorCode::HypothesisNotCertified: return "HypothesisNotCertified";
    case ErrorCode::OutsideU: return "OutsideU";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Rational::Rational(long long num, long long den) {
  if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
  v_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidInput, "division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string t(s);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  return mpz_class(t, 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw Error(ErrorCode::InvalidInput, "not a rational: '" + std::string(text) + "'");
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto p = text.substr(0, slash);
    const auto q = text.substr(slash + 1);
    if (!is_integer_text(p) || !is_integer_text(q)) return fail();
    mpz_class den = parse_integer(q);
    if (den == 0) return fail();
    return Rational(mpq_class(parse_integer(p), den));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    const std::string frac(text.substr(dot + 1));
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    if (!is_integer_text(digits) || (!frac.empty() && !is_integer_text(frac)) ||
        (!frac.empty() && (frac[0] == '-' || frac[0] == '+')))
      return fail();
    const bool negative = digits[0] == '-';
    mpz_class whole = parse_integer(digits);
    if (negative) whole = -whole;
    mpz_class scale = 1;
    mpz_class part = 0;
    if (!frac.empty()) {
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
      part = mpz_class(frac, 10);
    }
    mpq_class value(whole * scale + part, scale);
    if (negative) value = -value;
    return Rational(value);
  }
  if (!is_integer_text(text)) return fail();
  return Rational(mpq_class(parse_integer(text)));
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

namespace {

// floor(sqrt(q * 4^bits)) as an integer, plus whether it was exact.
std::pair<mpz_class, bool> scaled_isqrt(const Rational& q, unsigned bits) {
  if (q.sign() < 0) throw Error(ErrorCode::InvalidInput, "square root of a negative value");
  // sqrt(p/d) * 2^bits = sqrt(p * d * 4^bits) / d.
  mpz_class p = q.numerator();
  mpz_class d = q.denominator();
  mpz_class n = p * d;
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), 2 * bits);
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return {root, root * root == n};
}

std::optional<Rational> exact_root(const Rational& q) {
  mpz_class p = q.numerator();
  mpz_class d = q.denominator();
  if (q.sign() < 0 || !mpz_perfect_square_p(p.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  mpz_sqrt(p.get_mpz_t(), p.get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), d.get_mpz_t());
  return Rational(mpq_class(p, d));
}

}  // namespace

Rational sqrt_upper(const Rational& q, unsigned bits) {
  if (auto r = exact_root(q)) return *r;
  auto [root, exact] = scaled_isqrt(q, bits);
  if (!exact) root += 1;
  // ceil(root / d) over 2^bits keeps the result dyadic and still an upper bound.
  mpz_class scaled_den = 1;
  mpz_mul_2exp(scaled_den.get_mpz_t(), scaled_den.get_mpz_t(), bits);
  mpz_class num;
  mpz_class qd = q.denominator();
  mpz_cdiv_q(num.get_mpz_t(), root.get_mpz_t(), qd.get_mpz_t());
  return Rational(mpq_class(num, scaled_den));
}

Rational sqrt_lower(const Rational& q, unsigned bits) {
  if (auto r = exact_root(q)) return *r;
  auto [root, exact] = scaled_isqrt(q, bits);
  (void)exact;
  mpz_class scaled_den = 1;
  mpz_mul_2exp(scaled_den.get_mpz_t(), scaled_den.get_mpz_t(), bits);
  mpz_class num;
  mpz_class qd = q.denominator();
  mpz_fdiv_q(num.get_mpz_t(), root.get_mpz_t(), qd.get_mpz_t());
  return Rational(mpq_class(num, scaled_den));
}

std::string to_decimal(const Rational& r, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, r.to_double());
  return buf;
}

}  // namespace plsurj
