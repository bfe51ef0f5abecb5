#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selfaffine/algebra.hpp"
#include "selfaffine/errors.hpp"
#include "selfaffine/rational.hpp"

namespace selfaffine {

/// Coordinates of A^{-i} v = alpha_i v + beta_i A v for i = 1..n.
/// Stored zero-based: alphas[0] is alpha_1.
struct CoordSeq {
  QuadraticPoly poly;
  std::vector<Rational> alphas;
  std::vector<Rational> betas;
};

/// Runs q x_{i+2} + p x_{i+1} + x_i = 0 forward from x_0 and x_1, where
/// (alpha_0, beta_0) = (1, 0) because A^0 v = v.
inline CoordSeq coord_seq(const QuadraticPoly& f, int n) {
  if (n < 2) throw InvalidInput("coord_seq needs n >= 2");
  const Rational p(f.p()), q(f.q());
  CoordSeq out{f, {}, {}};
  out.alphas.reserve(n);
  out.betas.reserve(n);
  Rational a_prev(1), a_cur = -p / q;
  Rational b_prev(0), b_cur = Rational(-1) / q;
  for (int i = 0; i < n; ++i) {
    out.alphas.push_back(a_cur);
    out.betas.push_back(b_cur);
    Rational a_next = -(p * a_cur + a_prev) / q;
    Rational b_next = -(p * b_cur + b_prev) / q;
    a_prev = std::move(a_cur);
    a_cur = std::move(a_next);
    b_prev = std::move(b_cur);
    b_cur = std::move(b_next);
  }
  return out;
}

/// B = [[0, 1], [-1/q, -p/q]], which shifts (x_i, x_{i+1}) to (x_{i+1}, x_{i+2}).
inline Mat2 inverse_root_matrix(const QuadraticPoly& f) {
  return {0, 1, Rational(-1, f.q()), Rational(-f.p(), f.q())};
}

enum class BoundMethod {
  kComplexRootSeries,  // closed-form tail for complex conjugate roots
  kExactGeometric,     // constant-sign terms, summed exactly
  kBlockGeometric,     // grouped tail with ratio ||B^j||_1 < 1
};

inline std::string to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::kComplexRootSeries: return "complex_root_series";
    case BoundMethod::kExactGeometric: return "exact_geometric";
    case BoundMethod::kBlockGeometric: return "block_geometric";
  }
  return "?";
}

/// Rational upper bounds for sum |alpha_i| and sum |beta_i|.
struct TailBounds {
  Rational alpha_bound;
  Rational beta_bound;
  int terms_used = 0;
  bool exact = false;
  BoundMethod method = BoundMethod::kBlockGeometric;
};

namespace detail {

inline Rational partial_abs_sum(const std::vector<Rational>& xs, std::size_t count) {
  Rational s(0);
  for (std::size_t i = 0; i < count && i < xs.size(); ++i) s += abs(xs[i]);
  return s;
}

// 10^-6 grid used to bracket the square roots in the complex-root tail.
inline const Integer& sqrt_scale() {
  static const Integer s(1000000);
  return s;
}

// Tail sum_{i>=n} |x_i| for a sequence whose terms obey |x_i| <= 2 q^{-(i+shift)/2} / sqrt(4q - p^2).
// Every irrational factor is rounded in the direction that enlarges the bound.
inline Rational complex_root_tail(const QuadraticPoly& f, int exponent_numerator_terms) {
  const Integer q(static_cast<long>(f.q()));
  const Integer scale = sqrt_scale();
  // u_hi >= q^{-1/2}: floor(10^6 / sqrt(q)) / 10^6 + 10^-6.
  const Integer u_floor = isqrt(Integer(scale * scale) / q);
  const Rational u_hi(Integer(u_floor + 1), scale);
  // w <= sqrt(4q - p^2).
  const Integer disc = Integer(4 * f.q() - f.p() * f.p());
  const Rational w(isqrt(Integer(disc * scale * scale)), scale);
  if (w.sign() <= 0 || !(u_hi < Rational(1))) throw InvalidInput("complex-root tail bound not applicable");
  Rational power(1);
  for (int i = 0; i < exponent_numerator_terms; ++i) power *= u_hi;
  return Rational(2) * power / ((Rational(1) - u_hi) * w);
}

// Exact sum of a constant-sign sequence: e1^T (I - B)^{-1} (x_1, x_2).
inline Rational geometric_sum(const Mat2& b, const Rational& x1, const Rational& x2) {
  const Mat2 inv = (Mat2::identity() - b).inverse();
  return abs(inv(0, 0) * x1 + inv(0, 1) * x2);
}

inline bool same_sign(const Rational& a, const Rational& b) {
  return (a.sign() >= 0 && b.sign() >= 0) || (a.sign() <= 0 && b.sign() <= 0);
}

}  // namespace detail

/// Rigorous rational upper bounds for the absolute coordinate series.
///
/// Complex roots (negative discriminant) use the closed-form per-term bound
/// summed from term n. Real roots with B entrywise nonnegative and
/// same-signed seeds keep every term of one sign, so the series is summed
/// exactly. Everything else falls back to grouping the tail in blocks of j
/// terms, where j is the first power with ||B^j||_1 < 1.
///
/// Both series only depend on |p| (flipping p flips signs of alternate
/// terms), so the sign of p is normalized first.
inline TailBounds tail_bounds(const QuadraticPoly& poly, int n = 13) {
  if (n < 2) throw InvalidInput("tail_bounds needs n >= 2");
  const QuadraticPoly f = normalize_sign(poly).first;
  const std::int64_t disc = discriminant(f);
  const Mat2 b = inverse_root_matrix(f);

  if (disc < 0) {
    const CoordSeq cs = coord_seq(f, n);
    TailBounds tb;
    tb.alpha_bound = detail::partial_abs_sum(cs.alphas, n - 1) + detail::complex_root_tail(f, n - 1);
    tb.beta_bound = detail::partial_abs_sum(cs.betas, n - 1) + detail::complex_root_tail(f, n);
    tb.terms_used = n;
    tb.exact = false;
    tb.method = BoundMethod::kComplexRootSeries;
    return tb;
  }

  const CoordSeq seeds = coord_seq(f, 2);
  const bool b_nonneg = b(0, 0).sign() >= 0 && b(0, 1).sign() >= 0 && b(1, 0).sign() >= 0 && b(1, 1).sign() >= 0;
  if (b_nonneg && detail::same_sign(seeds.alphas[0], seeds.alphas[1]) &&
      detail::same_sign(seeds.betas[0], seeds.betas[1])) {
    TailBounds tb;
    tb.alpha_bound = detail::geometric_sum(b, seeds.alphas[0], seeds.alphas[1]);
    tb.beta_bound = detail::geometric_sum(b, seeds.betas[0], seeds.betas[1]);
    tb.terms_used = 0;
    tb.exact = true;
    tb.method = BoundMethod::kExactGeometric;
    return tb;
  }

  constexpr int kMaxBlock = 64;
  Mat2 power = b;
  int block = 1;
  while (!(power.norm1() < Rational(1))) {
    if (++block > kMaxBlock) throw std::logic_error("no contractive power of B found; polynomial not expanding?");
    power = power * b;
  }
  const Rational ratio = power.norm1();
  // Vectors x_i = (s_i, s_{i+1}) = B^{i-1} x_1 satisfy ||x_{i+kj}||_1 <= ratio^k ||x_i||_1.
  const CoordSeq cs = coord_seq(f, n + block + 1);
  auto bound = [&](const std::vector<Rational>& s) {
    Rational head = detail::partial_abs_sum(s, n - 1);
    Rational block_sum(0);
    for (int r = 0; r < block; ++r) {
      const std::size_t i = static_cast<std::size_t>(n - 1 + r);  // zero-based index of term n + r
      block_sum += abs(s[i]) + abs(s[i + 1]);
    }
    return head + block_sum / (Rational(1) - ratio);
  };
  TailBounds tb;
  tb.alpha_bound = bound(cs.alphas);
  tb.beta_bound = bound(cs.betas);
  tb.terms_used = n;
  tb.exact = false;
  tb.method = BoundMethod::kBlockGeometric;
  return tb;
}

}  // namespace selfaffine
