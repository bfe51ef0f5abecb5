#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "selfaffine/algebra.hpp"
#include "selfaffine/coords.hpp"
#include "selfaffine/errors.hpp"
#include "selfaffine/radix.hpp"
#include "selfaffine/rational.hpp"

namespace selfaffine {

/// A polynomial together with collinear digit coefficients D (the digits
/// are D v). Digits are kept sorted and distinct, and 0 must be one of them.
class DigitSystem {
 public:
  DigitSystem(QuadraticPoly poly, std::vector<Rational> digits) : poly_(poly), digits_(std::move(digits)) {
    std::sort(digits_.begin(), digits_.end());
    if (digits_.empty()) throw InvalidInput("digit set is empty");
    if (std::adjacent_find(digits_.begin(), digits_.end()) != digits_.end()) throw InvalidInput("digits must be distinct");
    if (!std::binary_search(digits_.begin(), digits_.end(), Rational(0))) throw InvalidInput("digit set must contain 0");
    for (const Rational& a : digits_)
      for (const Rational& b : digits_) differences_.push_back(a - b);
    std::sort(differences_.begin(), differences_.end());
    differences_.erase(std::unique(differences_.begin(), differences_.end()), differences_.end());
  }

  /// Translates so the smallest digit becomes 0.
  static DigitSystem translated(QuadraticPoly poly, std::vector<Rational> digits) {
    if (digits.empty()) throw InvalidInput("digit set is empty");
    const Rational lo = *std::min_element(digits.begin(), digits.end());
    for (Rational& d : digits) d -= lo;
    return {poly, std::move(digits)};
  }

  const QuadraticPoly& poly() const { return poly_; }
  const std::vector<Rational>& digits() const { return digits_; }
  /// D - D, ascending.
  const std::vector<Rational>& differences() const { return differences_; }
  /// max |D - D|.
  Rational max_difference() const { return digits_.back() - digits_.front(); }

  Integer common_denominator() const {
    Integer t(1);
    for (const Rational& d : digits_) t = lcm(t, d.denominator());
    return t;
  }

 private:
  QuadraticPoly poly_;
  std::vector<Rational> digits_;
  std::vector<Rational> differences_;
};

/// l' = A l - b v, i.e. gamma' = -(q delta + b), delta' = gamma - p delta.
inline LatticePoint step(const LatticePoint& l, const Rational& b, const QuadraticPoly& f) {
  return {-(Rational(f.q()) * l.delta + b), l.gamma - Rational(f.p()) * l.delta};
}

/// l_n = A^n l - sum_{i=1}^{n} A^{i-1} (b_{n+1-i}, 0), for the prefix b_1..b_n.
inline LatticePoint iterate(const LatticePoint& l, const std::vector<Rational>& prefix, const QuadraticPoly& f) {
  const Mat2 a = companion(f);
  const auto n = static_cast<long long>(prefix.size());
  LatticePoint out = a.pow(n) * l;
  Mat2 power = Mat2::identity();
  for (long long i = 1; i <= n; ++i) {
    out = out - power * LatticePoint{prefix[static_cast<std::size_t>(n - i)], 0};
    power = power * a;
  }
  return out;
}

struct AutomatonOptions {
  std::size_t state_limit = 10'000'000;
};

struct MembershipResult {
  bool member = false;
  /// Eventually periodic expansion over D - D, present iff member.
  std::optional<RadixExpansion> witness;
  /// States in the part of the automaton reachable from the target. When
  /// the target is not a member, exhausting these is the refutation.
  std::size_t explored_states = 0;
  Integer scale{1};
};

/// Finite automaton on the bounded points l = gamma v + delta A v with
/// |gamma| <= M alpha~ and |delta| <= M beta~ (M = max |D - D|), one
/// transition l -> A l - b v for each b in D - D that stays in the box.
/// A point lies in T - T iff it starts an infinite path.
///
/// All reachable coordinates from a target with denominator s and digits
/// with common denominator t lie in (1/lcm(s,t)) Z, so each such scale gets
/// its own integer layer. States are discovered lazily from query targets.
class NeighborAutomaton {
 public:
  NeighborAutomaton(DigitSystem system, TailBounds bounds, AutomatonOptions options = {})
      : system_(std::move(system)), bounds_(std::move(bounds)), options_(options) {}

  const DigitSystem& system() const { return system_; }
  const TailBounds& bounds() const { return bounds_; }

  MembershipResult query(const LatticePoint& target) {
    const Integer scale = lcm(system_.common_denominator(), lcm(target.gamma.denominator(), target.delta.denominator()));
    Layer& layer = layer_for(scale);
    MembershipResult result;
    result.scale = scale;
    const Integer g = target.gamma.numerator() * (scale / target.gamma.denominator());
    const Integer d = target.delta.numerator() * (scale / target.delta.denominator());
    if (abs(g) > layer.gamma_max || abs(d) > layer.delta_max) return result;
    const Point start{to_int64(g), to_int64(d)};
    const std::uint32_t root = layer.explore(start, options_.state_limit, total_states());
    result.explored_states = layer.component_size(root);
    if (!layer.alive[root]) return result;
    result.member = true;
    result.witness = layer.witness(root, system_.differences());
    return result;
  }

  std::size_t state_count() const {
    return total_states();
  }

  std::size_t alive_count() const {
    std::size_t n = 0;
    for (const auto& [_, layer] : layers_) n += static_cast<std::size_t>(std::count(layer.alive.begin(), layer.alive.end(), 1));
    return n;
  }

  /// Every explored state with its aliveness, in exact coordinates.
  std::vector<std::pair<LatticePoint, bool>> states() const {
    std::vector<std::pair<LatticePoint, bool>> out;
    for (const auto& [scale, layer] : layers_)
      for (std::size_t i = 0; i < layer.states.size(); ++i)
        out.push_back({{Rational(Integer(static_cast<long>(layer.states[i].g)), scale),
                        Rational(Integer(static_cast<long>(layer.states[i].d)), scale)},
                       layer.alive[i] != 0});
    return out;
  }

  /// One extra pruning pass: alive states must each keep an alive successor,
  /// dead states must have none.
  bool alive_set_is_fixed_point() const {
    for (const auto& [_, layer] : layers_)
      if (!layer.fixed_point()) return false;
    return true;
  }

 private:
  struct Point {
    std::int64_t g;
    std::int64_t d;
    friend bool operator==(const Point&, const Point&) = default;
  };
  struct PointHash {
    std::size_t operator()(const Point& p) const noexcept {
      std::uint64_t x = static_cast<std::uint64_t>(p.g) * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(p.d);
      x ^= x >> 31;
      x *= 0xBF58476D1CE4E5B9ull;
      x ^= x >> 27;
      return static_cast<std::size_t>(x);
    }
  };

  struct Layer {
    std::int64_t p = 0;
    std::int64_t q = 0;
    std::vector<std::int64_t> digits;  // scaled D - D, ascending
    std::vector<std::size_t> preference;  // digit indices by |b|, then ascending
    std::int64_t gamma_max = 0;
    std::int64_t delta_max = 0;
    std::vector<Point> states;
    std::vector<std::uint8_t> alive;
    std::unordered_map<Point, std::uint32_t, PointHash> index;

    bool in_box(const Point& s) const {
      return s.g <= gamma_max && s.g >= -gamma_max && s.d <= delta_max && s.d >= -delta_max;
    }

    // Box coordinates are capped well below 2^62, so q*delta + b cannot overflow in 128 bits.
    std::optional<Point> next(const Point& s, std::int64_t b) const {
      const __int128 g = -(static_cast<__int128>(q) * s.d + b);
      const __int128 d = static_cast<__int128>(s.g) - static_cast<__int128>(p) * s.d;
      if (g > gamma_max || g < -gamma_max || d > delta_max || d < -delta_max) return std::nullopt;
      return Point{static_cast<std::int64_t>(g), static_cast<std::int64_t>(d)};
    }

    // s with A s - b v = t, if integral.
    std::optional<Point> prev(const Point& t, std::int64_t b) const {
      const __int128 num = static_cast<__int128>(t.g) + b;
      if (num % q != 0) return std::nullopt;
      const __int128 d = -num / q;
      const __int128 g = static_cast<__int128>(t.d) + static_cast<__int128>(p) * d;
      if (g > gamma_max || g < -gamma_max || d > delta_max || d < -delta_max) return std::nullopt;
      return Point{static_cast<std::int64_t>(g), static_cast<std::int64_t>(d)};
    }

    std::uint32_t explore(const Point& start, std::size_t limit, std::size_t already) {
      if (auto it = index.find(start); it != index.end()) return it->second;
      const std::size_t first_new = states.size();
      auto add = [&](const Point& s) {
        if (already + (states.size() - first_new) + 1 > limit)
          throw StateLimitExceeded("neighbor automaton exceeded " + std::to_string(limit) + " states");
        const auto id = static_cast<std::uint32_t>(states.size());
        states.push_back(s);
        alive.push_back(1);
        index.emplace(s, id);
        return id;
      };
      const std::uint32_t root = add(start);
      for (std::size_t i = first_new; i < states.size(); ++i) {
        const Point s = states[i];
        for (std::int64_t b : digits)
          if (auto n = next(s, b); n && !index.contains(*n)) add(*n);
      }
      prune_new(first_new);
      return root;
    }

    // Reverse pruning over the newly added states. Older states are closed
    // under successors, so their aliveness is already final.
    void prune_new(std::size_t first_new) {
      const std::size_t count = states.size() - first_new;
      std::vector<std::uint32_t> outdeg(count, 0);
      std::vector<std::uint32_t> dead;
      for (std::size_t k = 0; k < count; ++k) {
        const Point s = states[first_new + k];
        for (std::int64_t b : digits)
          if (auto n = next(s, b)) {
            const std::uint32_t j = index.at(*n);
            if (j >= first_new || alive[j]) ++outdeg[k];
          }
        if (outdeg[k] == 0) dead.push_back(static_cast<std::uint32_t>(first_new + k));
      }
      for (std::uint32_t id : dead) alive[id] = 0;
      while (!dead.empty()) {
        const Point t = states[dead.back()];
        dead.pop_back();
        for (std::int64_t b : digits) {
          auto s = prev(t, b);
          if (!s) continue;
          auto it = index.find(*s);
          if (it == index.end() || it->second < first_new || !alive[it->second]) continue;
          if (--outdeg[it->second - first_new] == 0) {
            alive[it->second] = 0;
            dead.push_back(it->second);
          }
        }
      }
    }

    std::size_t component_size(std::uint32_t root) const {
      std::vector<std::uint8_t> seen(states.size(), 0);
      std::vector<std::uint32_t> stack{root};
      seen[root] = 1;
      std::size_t n = 0;
      while (!stack.empty()) {
        const Point s = states[stack.back()];
        stack.pop_back();
        ++n;
        for (std::int64_t b : digits)
          if (auto nx = next(s, b)) {
            const std::uint32_t j = index.at(*nx);
            if (!seen[j]) {
              seen[j] = 1;
              stack.push_back(j);
            }
          }
      }
      return n;
    }

    // Greedy walk through alive states; the first repeated state closes the period.
    RadixExpansion witness(std::uint32_t root, const std::vector<Rational>& alphabet) const {
      std::map<std::uint32_t, std::size_t> position;
      std::vector<Rational> path;
      std::uint32_t cur = root;
      while (!position.contains(cur)) {
        position[cur] = path.size();
        bool moved = false;
        for (std::size_t k : preference) {
          auto n = next(states[cur], digits[k]);
          if (!n) continue;
          const std::uint32_t j = index.at(*n);
          if (!alive[j]) continue;
          path.push_back(alphabet[k]);
          cur = j;
          moved = true;
          break;
        }
        if (!moved) throw std::logic_error("alive state without alive successor");
      }
      const std::size_t start = position[cur];
      RadixExpansion e;
      e.preperiod.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(start));
      e.period.assign(path.begin() + static_cast<std::ptrdiff_t>(start), path.end());
      return e;
    }

    bool fixed_point() const {
      for (std::size_t i = 0; i < states.size(); ++i) {
        bool has_alive_succ = false;
        for (std::int64_t b : digits)
          if (auto n = next(states[i], b)) has_alive_succ = has_alive_succ || alive[index.at(*n)];
        if (has_alive_succ != static_cast<bool>(alive[i])) return false;
      }
      return true;
    }
  };

  std::size_t total_states() const {
    std::size_t n = 0;
    for (const auto& [_, layer] : layers_) n += layer.states.size();
    return n;
  }

  Layer& layer_for(const Integer& scale) {
    if (auto it = layers_.find(scale); it != layers_.end()) return it->second;
    Layer layer;
    layer.p = system_.poly().p();
    layer.q = system_.poly().q();
    const auto& diffs = system_.differences();
    for (const Rational& b : diffs) layer.digits.push_back(to_int64(b.numerator() * (scale / b.denominator())));
    layer.preference.resize(diffs.size());
    for (std::size_t i = 0; i < diffs.size(); ++i) layer.preference[i] = i;
    std::stable_sort(layer.preference.begin(), layer.preference.end(),
                     [&](std::size_t a, std::size_t b) { return abs(diffs[a]) < abs(diffs[b]); });
    const Rational reach = system_.max_difference() * Rational(scale);
    const Integer gmax = floor(reach * bounds_.alpha_bound);
    const Integer dmax = floor(reach * bounds_.beta_bound);
    const Integer cap = Integer(1) << 60;
    if (gmax > cap || dmax > cap) throw StateLimitExceeded("neighbor box coordinates exceed 2^60");
    layer.gamma_max = to_int64(gmax);
    layer.delta_max = to_int64(dmax);
    return layers_.emplace(scale, std::move(layer)).first->second;
  }

  struct IntegerLess {
    bool operator()(const Integer& a, const Integer& b) const { return cmp(a, b) < 0; }
  };

  DigitSystem system_;
  TailBounds bounds_;
  AutomatonOptions options_;
  std::map<Integer, Layer, IntegerLess> layers_;
};

/// l in T - T, decided by the automaton with default bounds. Witness
/// digits are drawn from D - D.
inline MembershipResult is_member(const LatticePoint& l, const DigitSystem& system, AutomatonOptions options = {},
                                  int bound_terms = 13) {
  NeighborAutomaton automaton(system, tail_bounds(system.poly(), bound_terms), options);
  return automaton.query(l);
}

}  // namespace selfaffine
