#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "selfaffine/errors.hpp"

namespace selfaffine {

using Integer = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : value_(static_cast<long>(n)) {}  // NOLINT: implicit by design of a number type
  Rational(const Integer& n) : value_(n) {}                // NOLINT
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw InvalidInput("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  Rational(long long num, long long den) : Rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den))) {}
  explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  /// Parses "7", "-3", "8/5" or "-67/42". Decimal fractions are rejected.
  static Rational parse(std::string_view text) {
    std::string s;
    for (char c : text)
      if (c != ' ' && c != '\t') s.push_back(c);
    if (s.empty()) throw InvalidInput("empty rational");
    auto valid_int = [](std::string_view t, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
      if (i >= t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
      throw InvalidInput("not a rational (expected n or n/d): '" + std::string(text) + "'");
    Integer n(num[0] == '+' ? num.substr(1) : num, 10);
    Integer d(den, 10);
    return Rational(n, d);
  }

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }
  const mpq_class& get() const { return value_; }

  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }
  double to_double() const { return value_.get_d(); }

  std::string to_string() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.value_ == 0) throw InvalidInput("division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  mpq_class value_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Integer floor(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get().get_num_mpz_t(), r.get().get_den_mpz_t());
  return out;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline Integer isqrt(const Integer& n) {
  Integer out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

/// Exact conversion to int64; throws when the value does not fit.
inline std::int64_t to_int64(const Integer& n) {
  if (!n.fits_slong_p()) throw StateLimitExceeded("integer " + n.get_str() + " exceeds 64-bit range");
  return static_cast<std::int64_t>(n.get_si());
}

}  // namespace selfaffine
