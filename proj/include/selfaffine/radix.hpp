#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "selfaffine/algebra.hpp"
#include "selfaffine/errors.hpp"
#include "selfaffine/rational.hpp"

namespace selfaffine {

/// a_{-k} ... a_0 . f_1 ... f_m (c_1 ... c_T)^infinity in base A along v.
///
/// int_digits are listed from the highest power down to a_0. An empty
/// period means the expansion terminates.
struct RadixExpansion {
  std::vector<Rational> int_digits;
  std::vector<Rational> preperiod;
  std::vector<Rational> period;

  friend bool operator==(const RadixExpansion&, const RadixExpansion&) = default;

  /// Fractional digit at position i >= 1.
  Rational fractional_digit(std::size_t i) const {
    if (i == 0) throw std::out_of_range("fractional positions start at 1");
    if (i <= preperiod.size()) return preperiod[i - 1];
    if (period.empty()) return Rational(0);
    return period[(i - 1 - preperiod.size()) % period.size()];
  }

  /// Text form: "2,2,3.(-2,-3)[3,-3,0]". Empty integer part prints as "0".
  std::string to_string() const {
    auto join = [](const std::vector<Rational>& ds) {
      std::string s;
      for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i) s += ",";
        s += ds[i].to_string();
      }
      return s;
    };
    std::string out = int_digits.empty() ? "0" : join(int_digits);
    if (preperiod.empty() && period.empty()) return out;
    out += ".";
    if (!preperiod.empty()) out += "(" + join(preperiod) + ")";
    if (!period.empty()) out += "[" + join(period) + "]";
    return out;
  }

  /// Inverse of to_string. Leading zero integer digits are dropped.
  static RadixExpansion parse(std::string_view text) {
    std::string s;
    for (char c : text)
      if (c != ' ' && c != '\t') s.push_back(c);
    if (s.empty()) throw InvalidInput("empty expansion");

    auto split_list = [](std::string_view body) {
      std::vector<Rational> out;
      if (body.empty()) return out;
      std::size_t start = 0;
      while (true) {
        const std::size_t comma = body.find(',', start);
        out.push_back(Rational::parse(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      return out;
    };

    RadixExpansion e;
    const std::size_t dot = s.find('.');
    const std::string_view sv(s);
    e.int_digits = split_list(sv.substr(0, dot));
    if (e.int_digits.empty()) throw InvalidInput("expansion needs an integer part before '.': '" + s + "'");
    if (dot != std::string::npos) {
      std::string_view frac = sv.substr(dot + 1);
      if (!frac.empty() && frac.front() == '(') {
        const std::size_t close = frac.find(')');
        if (close == std::string_view::npos) throw InvalidInput("unterminated '(' in expansion");
        e.preperiod = split_list(frac.substr(1, close - 1));
        frac.remove_prefix(close + 1);
      }
      if (!frac.empty() && frac.front() == '[') {
        const std::size_t close = frac.find(']');
        if (close == std::string_view::npos || close + 1 != frac.size()) throw InvalidInput("malformed '[...]' period");
        e.period = split_list(frac.substr(1, close - 1));
        frac.remove_prefix(close + 1);
      }
      if (!frac.empty()) throw InvalidInput("unexpected trailing text in expansion: '" + std::string(frac) + "'");
    }
    auto first_nonzero = std::find_if(e.int_digits.begin(), e.int_digits.end(), [](const Rational& d) { return d.sign() != 0; });
    e.int_digits.erase(e.int_digits.begin(), first_nonzero);
    return e;
  }
};

/// Exact value as gamma v + delta A v.
///
/// Fractional part by Horner from the back, x <- A^{-1}(d v + x), seeded
/// with the periodic tail P = (I - A^{-T})^{-1} sum_{j=1}^{T} c_j A^{-j} v.
inline LatticePoint eval(const RadixExpansion& e, const QuadraticPoly& f) {
  const Mat2 a = companion(f);
  const Mat2 a_inv = a.inverse();
  auto horner_frac = [&](const std::vector<Rational>& ds, LatticePoint tail) {
    for (auto it = ds.rbegin(); it != ds.rend(); ++it) tail = a_inv * LatticePoint{tail.gamma + *it, tail.delta};
    return tail;
  };

  LatticePoint frac{0, 0};
  if (!e.period.empty()) {
    const LatticePoint s = horner_frac(e.period, {0, 0});
    const Mat2 shift = Mat2::identity() - a_inv.pow(static_cast<long long>(e.period.size()));
    frac = shift.inverse() * s;
  }
  frac = horner_frac(e.preperiod, frac);

  LatticePoint whole{0, 0};
  for (const Rational& d : e.int_digits) {
    whole = a * whole;
    whole.gamma += d;
  }
  return whole + frac;
}

/// True iff the expansion evaluates exactly to target and every fractional
/// digit belongs to alphabet.
inline bool verify(const RadixExpansion& e, const LatticePoint& target, const QuadraticPoly& f,
                   const std::vector<Rational>& alphabet) {
  auto in_alphabet = [&](const Rational& d) { return std::find(alphabet.begin(), alphabet.end(), d) != alphabet.end(); };
  if (!std::all_of(e.preperiod.begin(), e.preperiod.end(), in_alphabet)) return false;
  if (!std::all_of(e.period.begin(), e.period.end(), in_alphabet)) return false;
  return eval(e, f) == target;
}

/// Digitwise sum; the value of the result is the sum of the values.
inline RadixExpansion add(const RadixExpansion& x, const RadixExpansion& y) {
  RadixExpansion out;
  const std::size_t ni = std::max(x.int_digits.size(), y.int_digits.size());
  out.int_digits.assign(ni, Rational(0));
  for (std::size_t k = 0; k < x.int_digits.size(); ++k) out.int_digits[ni - 1 - k] += x.int_digits[x.int_digits.size() - 1 - k];
  for (std::size_t k = 0; k < y.int_digits.size(); ++k) out.int_digits[ni - 1 - k] += y.int_digits[y.int_digits.size() - 1 - k];
  auto lead = std::find_if(out.int_digits.begin(), out.int_digits.end(), [](const Rational& d) { return d.sign() != 0; });
  out.int_digits.erase(out.int_digits.begin(), lead);

  const std::size_t pre = std::max(x.preperiod.size(), y.preperiod.size());
  const std::size_t tx = x.period.empty() ? 1 : x.period.size();
  const std::size_t ty = y.period.empty() ? 1 : y.period.size();
  const std::size_t per = (x.period.empty() && y.period.empty()) ? 0 : std::lcm(tx, ty);
  for (std::size_t i = 1; i <= pre; ++i) out.preperiod.push_back(x.fractional_digit(i) + y.fractional_digit(i));
  for (std::size_t i = pre + 1; i <= pre + per; ++i) out.period.push_back(x.fractional_digit(i) + y.fractional_digit(i));
  return out;
}

/// The same point written in base -A: the digit at A^{k} picks up (-1)^k.
/// Used to carry expansions between x^2 + p x + q and x^2 - p x + q.
inline RadixExpansion negate_base(const RadixExpansion& e) {
  RadixExpansion out;
  const std::size_t ni = e.int_digits.size();
  for (std::size_t k = 0; k < ni; ++k) {
    const std::size_t power = ni - 1 - k;
    out.int_digits.push_back(power % 2 ? -e.int_digits[k] : e.int_digits[k]);
  }
  auto flipped = [&](std::size_t i) { return i % 2 ? -e.fractional_digit(i) : e.fractional_digit(i); };
  const std::size_t pre = e.preperiod.size();
  const std::size_t per = e.period.empty() ? 0 : std::lcm(e.period.size(), std::size_t{2});
  for (std::size_t i = 1; i <= pre; ++i) out.preperiod.push_back(flipped(i));
  for (std::size_t i = pre + 1; i <= pre + per; ++i) out.period.push_back(flipped(i));
  return out;
}

/// A certificate expansion together with the point it represents.
struct Certificate {
  RadixExpansion expansion;
  LatticePoint target;
  std::string label;
};

enum class Thm5Variant { kPlusQ, kMinusQ };

/// The symbolic expansions of 1v and 2v behind the two sufficient
/// connectedness conditions for f = x^2 + p x + q (kPlusQ, needs 2p > q + 2)
/// and f = x^2 + p x - q (kMinusQ, needs 2p > q - 2), with q >= 2, p > 0.
///
/// Returned in order: the two 1v expansions, then 2v (their digitwise sum,
/// written out in closed form). Callers check each against its target with
/// verify().
inline std::vector<Certificate> thm5_certificates(std::int64_t p, std::int64_t q, Thm5Variant variant) {
  if (q < 2 || p <= 0) throw InvalidInput("certificate family needs q >= 2 and p > 0");
  auto r = [](std::int64_t v) { return Rational(v); };
  std::vector<Certificate> certs;
  if (variant == Thm5Variant::kPlusQ) {
    if (!(2 * p > q + 2)) throw InvalidInput("certificate family needs 2p > q + 2");
    // |2p-2q-1|, q, 1, |p-2|, |q-2p+2| are the non-extreme digits of the 2v expansion.
    for (std::int64_t d : {2 * p - 2 * q - 1, p - 2, q - 2 * p + 2})
      if (std::abs(d) > q - 1) throw std::logic_error("certificate digit magnitude exceeds q - 1");
    certs.push_back({{{}, {}, {r(1 - p), r(p - q), r(q - 1)}}, {1, 0}, "1v, period (1-p)(p-q)(q-1)"});
    certs.push_back({{{}, {r(1 - p)}, {r(-(q - p + 1)), r(q - p + 1)}}, {1, 0}, "1v, (1-p) then period -(q-p+1),(q-p+1)"});
    certs.push_back({{{}, {r(2 - 2 * p)},
                      {r(2 * p - 2 * q - 1), r(2 * q - p), r(-q), r(1), r(p - 2), r(q - 2 * p + 2)}},
                     {2, 0}, "2v, sum of the two 1v expansions"});
  } else {
    if (!(2 * p > q - 2)) throw InvalidInput("certificate family needs 2p > q - 2");
    if (std::abs(q - 2 * p - 1) > q - 1) throw std::logic_error("certificate digit magnitude exceeds q - 1");
    certs.push_back({{{}, {}, {r(-p), r(q - 1)}}, {1, 0}, "1v, period (-p)(q-1)"});
    certs.push_back({{{}, {r(-(p + 1))}, {r(q - p - 1)}}, {1, 0}, "1v, -(p+1) then period (q-p-1)"});
    certs.push_back({{{}, {r(-2 * p - 1)}, {r(2 * q - p - 2), r(q - 2 * p - 1)}}, {2, 0}, "2v, sum of the two 1v expansions"});
  }
  return certs;
}

/// Variant chosen from the sign of the constant term; p must be positive.
inline std::vector<Certificate> thm5_certificates(const QuadraticPoly& f) {
  return f.q() > 0 ? thm5_certificates(f.p(), f.q(), Thm5Variant::kPlusQ)
                   : thm5_certificates(f.p(), -f.q(), Thm5Variant::kMinusQ);
}

}  // namespace selfaffine
