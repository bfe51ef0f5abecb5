#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <string>
#include <utility>

#include "selfaffine/errors.hpp"
#include "selfaffine/rational.hpp"

namespace selfaffine {

/// True iff both roots of x^2 + p x + q lie strictly outside the unit circle.
///
/// Decided by the Schur-Cohn (Jury) conditions on the reciprocal polynomial
/// x^2 + (p/q) x + 1/q, whose roots are the inverses of the original ones:
/// both lie strictly inside the unit disc iff |1/q| < 1 and |p/q| < 1 + 1/q.
inline bool is_expanding(std::int64_t p, std::int64_t q) {
  if (q == 0) return false;
  const Rational a0(1, q);
  const Rational a1(p, q);
  return abs(a0) < Rational(1) && abs(a1) < Rational(1) + a0;
}

/// f(x) = x^2 + p x + q with both roots of modulus > 1.
class QuadraticPoly {
 public:
  QuadraticPoly(std::int64_t p, std::int64_t q) : p_(p), q_(q) {
    constexpr std::int64_t kLimit = std::int64_t{1} << 24;
    if (p > kLimit || p < -kLimit || q > kLimit || q < -kLimit)
      throw InvalidInput("polynomial coefficients out of supported range");
    if (q >= -1 && q <= 1) throw InvalidInput("|q| must be at least 2");
    if (!is_expanding(p, q)) throw InvalidInput("x^2 + " + std::to_string(p) + "x + " + std::to_string(q) + " is not expanding");
  }

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }

  std::string to_string() const {
    std::string s = "x^2";
    if (p_ != 0) s += (p_ > 0 ? "+" : "-") + (std::abs(p_) == 1 ? std::string() : std::to_string(std::abs(p_))) + "x";
    s += (q_ > 0 ? "+" : "-") + std::to_string(std::abs(q_));
    return s;
  }

  friend bool operator==(const QuadraticPoly&, const QuadraticPoly&) = default;

 private:
  std::int64_t p_;
  std::int64_t q_;
};

inline std::ostream& operator<<(std::ostream& os, const QuadraticPoly& f) { return os << f.to_string(); }

inline std::int64_t discriminant(const QuadraticPoly& f) { return f.p() * f.p() - 4 * f.q(); }

/// (|p|, q) together with whether p was negated. T(A, D) and T(-A, D) are
/// connected together, so callers may work with p >= 0.
inline std::pair<QuadraticPoly, bool> normalize_sign(const QuadraticPoly& f) {
  return {QuadraticPoly(f.p() < 0 ? -f.p() : f.p(), f.q()), f.p() < 0};
}

/// A point l = gamma v + delta A v, in coordinates of the basis {v, A v}.
struct LatticePoint {
  Rational gamma;
  Rational delta;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend LatticePoint operator+(const LatticePoint& a, const LatticePoint& b) { return {a.gamma + b.gamma, a.delta + b.delta}; }
  friend LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) { return {a.gamma - b.gamma, a.delta - b.delta}; }
  friend LatticePoint operator*(const Rational& s, const LatticePoint& a) { return {s * a.gamma, s * a.delta}; }

  std::string to_string() const { return "(" + gamma.to_string() + ", " + delta.to_string() + ")"; }
};

inline std::ostream& operator<<(std::ostream& os, const LatticePoint& l) { return os << l.to_string(); }

/// Exact 2x2 rational matrix, row-major.
class Mat2 {
 public:
  Mat2() = default;
  Mat2(Rational a, Rational b, Rational c, Rational d) : m_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

  static Mat2 identity() { return {1, 0, 0, 1}; }

  const Rational& operator()(int r, int c) const { return m_[r * 2 + c]; }

  Rational det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  Rational trace() const { return m_[0] + m_[3]; }

  Mat2 inverse() const {
    const Rational d = det();
    if (d == Rational(0)) throw InvalidInput("singular matrix");
    return {m_[3] / d, -m_[1] / d, -m_[2] / d, m_[0] / d};
  }

  /// Integer power; negative exponents go through the inverse.
  Mat2 pow(long long e) const {
    Mat2 base = e < 0 ? inverse() : *this;
    unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Mat2 out = identity();
    while (n) {
      if (n & 1u) out = out * base;
      base = base * base;
      n >>= 1u;
    }
    return out;
  }

  /// Induced 1-norm (maximum absolute column sum).
  Rational norm1() const {
    const Rational c0 = abs(m_[0]) + abs(m_[2]);
    const Rational c1 = abs(m_[1]) + abs(m_[3]);
    return c0 < c1 ? c1 : c0;
  }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m_[0] * b.m_[0] + a.m_[1] * b.m_[2], a.m_[0] * b.m_[1] + a.m_[1] * b.m_[3],
            a.m_[2] * b.m_[0] + a.m_[3] * b.m_[2], a.m_[2] * b.m_[1] + a.m_[3] * b.m_[3]};
  }
  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m_[0] + b.m_[0], a.m_[1] + b.m_[1], a.m_[2] + b.m_[2], a.m_[3] + b.m_[3]};
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m_[0] - b.m_[0], a.m_[1] - b.m_[1], a.m_[2] - b.m_[2], a.m_[3] - b.m_[3]};
  }
  friend LatticePoint operator*(const Mat2& a, const LatticePoint& x) {
    return {a.m_[0] * x.gamma + a.m_[1] * x.delta, a.m_[2] * x.gamma + a.m_[3] * x.delta};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;

 private:
  std::array<Rational, 4> m_{};
};

/// Companion matrix [[0, -q], [1, -p]] of x^2 + p x + q. In the basis
/// {v, A v} it is also the matrix of A acting on (gamma, delta) coordinates.
inline Mat2 companion(const QuadraticPoly& f) { return {0, -f.q(), 1, -f.p()}; }

}  // namespace selfaffine
