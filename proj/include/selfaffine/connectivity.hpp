#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "selfaffine/algebra.hpp"
#include "selfaffine/coords.hpp"
#include "selfaffine/errors.hpp"
#include "selfaffine/neighbors.hpp"
#include "selfaffine/radix.hpp"
#include "selfaffine/rational.hpp"
#include "selfaffine/union_find.hpp"

namespace selfaffine {

enum class Verdict { kConnected, kDisconnected };

inline std::string to_string(Verdict v) { return v == Verdict::kConnected ? "connected" : "disconnected"; }

/// Digits joined when the translated copies T + d_i v and T + d_j v meet.
struct EGraph {
  std::vector<Rational> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  bool connected() const {
    UnionFind uf(vertices.size());
    for (const auto& [i, j] : edges) uf.unite(i, j);
    return uf.components() <= 1;
  }
};

/// Outcome of testing (d_j - d_i) v in T - T for one digit pair.
struct PairEvidence {
  std::size_t i = 0;
  std::size_t j = 0;
  bool edge = false;
  std::optional<RadixExpansion> witness;  // digits over D - D, value (d_j - d_i) v
  std::size_t explored_states = 0;        // refutation size when !edge
};

struct ConnectivityReport {
  DigitSystem system;
  Verdict verdict = Verdict::kDisconnected;
  EGraph e_graph;
  std::optional<bool> is_tile;
  std::vector<PairEvidence> evidence;
  TailBounds bounds;
  std::size_t automaton_states = 0;
  std::size_t alive_states = 0;
  std::chrono::microseconds elapsed{0};
};

struct DecideOptions {
  int bound_terms = 13;
  std::size_t state_limit = 10'000'000;
};

namespace detail {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

}  // namespace detail

/// For prime |q| and integer digits: whether D is a complete set of
/// residues mod |q|, the criterion for T to have interior. Empty when the
/// criterion does not apply.
inline std::optional<bool> is_tile_candidate(const DigitSystem& system) {
  const std::int64_t q = std::abs(system.poly().q());
  if (!detail::is_prime(q)) return std::nullopt;
  const auto& ds = system.digits();
  if (!std::all_of(ds.begin(), ds.end(), [](const Rational& d) { return d.is_integer(); })) return std::nullopt;
  if (static_cast<std::int64_t>(ds.size()) != q) return false;
  std::vector<bool> hit(static_cast<std::size_t>(q), false);
  for (const Rational& d : ds) {
    Integer r = d.numerator() % Integer(static_cast<long>(q));
    if (r < 0) r += q;
    const auto k = static_cast<std::size_t>(r.get_si());
    if (hit[k]) return false;
    hit[k] = true;
  }
  return true;
}

/// Connectedness of T(A, D): T is connected iff the E-graph on the digits is
/// connected, and each E-graph edge is a membership query in T - T.
inline ConnectivityReport decide(const DigitSystem& system, const DecideOptions& options = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  ConnectivityReport report{system, Verdict::kDisconnected, {}, is_tile_candidate(system), {}, tail_bounds(system.poly(), options.bound_terms)};
  NeighborAutomaton automaton(system, report.bounds, AutomatonOptions{options.state_limit});
  const auto& ds = system.digits();
  report.e_graph.vertices = ds;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      const LatticePoint target{ds[j] - ds[i], 0};
      MembershipResult m = automaton.query(target);
      if (m.member && !verify(*m.witness, target, system.poly(), system.differences()))
        throw std::logic_error("membership witness failed to evaluate to its target");
      if (m.member) report.e_graph.edges.emplace_back(i, j);
      report.evidence.push_back({i, j, m.member, std::move(m.witness), m.explored_states});
    }
  }
  report.verdict = report.e_graph.connected() ? Verdict::kConnected : Verdict::kDisconnected;
  report.automaton_states = automaton.state_count();
  report.alive_states = automaton.alive_count();
  report.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);
  return report;
}

/// Closed-form answer for f = x^n +- q: connected iff, after translating the
/// smallest digit to 0, D = {0, a, 2a, ..., (k-1)a} for some a > 0.
inline Verdict decide_xn_pm_q(std::vector<Rational> digits) {
  if (digits.empty()) throw InvalidInput("digit set is empty");
  std::sort(digits.begin(), digits.end());
  if (digits.size() == 1) return Verdict::kConnected;
  const Rational a = digits[1] - digits[0];
  if (a.sign() <= 0) return Verdict::kDisconnected;
  for (std::size_t k = 0; k < digits.size(); ++k)
    if (digits[k] - digits[0] != Rational(static_cast<long long>(k)) * a) return Verdict::kDisconnected;
  return Verdict::kConnected;
}

enum class BoundCheck { kDisconnectedByBound, kInconclusive, kNotApplicable };

inline std::string to_string(BoundCheck b) {
  switch (b) {
    case BoundCheck::kDisconnectedByBound: return "disconnected_by_bound";
    case BoundCheck::kInconclusive: return "inconclusive";
    case BoundCheck::kNotApplicable: return "not_applicable";
  }
  return "?";
}

/// Known disconnection regions for D = {0, 1, b}, |det A| = 3, p != 0:
///   x^2 +- x + 3:  b >= 67/25 or b <= 67/42
///   x^2 +- 2x + 3: b >= 37/10 or b <= 37/27
///   x^2 +- 3x + 3: b >= 33/10 or b <= 33/23
///   x^2 +- x - 3:  b >  19/5  or b <  19/14
inline BoundCheck check_thm4_bound(const QuadraticPoly& f, const Rational& b) {
  if (!(b > Rational(1))) return BoundCheck::kNotApplicable;
  const std::int64_t p = std::abs(f.p());
  struct Region {
    std::int64_t p, q;
    Rational upper, lower;
    bool strict;
  };
  static const Region regions[] = {
      {1, 3, Rational(67, 25), Rational(67, 42), false},
      {2, 3, Rational(37, 10), Rational(37, 27), false},
      {3, 3, Rational(33, 10), Rational(33, 23), false},
      {1, -3, Rational(19, 5), Rational(19, 14), true},
  };
  for (const Region& r : regions) {
    if (r.p != p || r.q != f.q()) continue;
    const bool hit = r.strict ? (b > r.upper || b < r.lower) : (b >= r.upper || b <= r.lower);
    return hit ? BoundCheck::kDisconnectedByBound : BoundCheck::kInconclusive;
  }
  return BoundCheck::kNotApplicable;
}

enum class Thm5Outcome { kConnectedPlusQ, kConnectedMinusQ, kInconclusive };

inline std::string to_string(Thm5Outcome o) {
  switch (o) {
    case Thm5Outcome::kConnectedPlusQ: return "connected_plus_q";
    case Thm5Outcome::kConnectedMinusQ: return "connected_minus_q";
    case Thm5Outcome::kInconclusive: return "inconclusive";
  }
  return "?";
}

struct Thm5Check {
  Thm5Outcome outcome = Thm5Outcome::kInconclusive;
  /// Expansions of v, v and 2v in base A (sign of p as given), all verified.
  std::vector<Certificate> certificates;
  /// Hypotheses that failed, in plain words.
  std::vector<std::string> failed;
};

/// Sufficient conditions for digit sets with gaps of 1 and 2:
///   x^2 + p x + q, 2p > q + 2, {0, +-1, ..., +-(q-1)} in D - D, 2p-2 and 2q-p in D - D;
///   x^2 + p x - q, 2p > q - 2, same range condition, 2p+1 and 2q-p-2 in D - D.
/// Every certificate digit must also lie in D - D; for the first family
/// this adds q in D - D, which the conditions above leave open.
/// On success the returned expansions of v and 2v prove (T+v), (T+2v) meet T.
inline Thm5Check check_thm5(const DigitSystem& system) {
  Thm5Check out;
  const auto [normalized, flipped] = normalize_sign(system.poly());
  const std::int64_t p = normalized.p();
  const std::int64_t q = std::abs(normalized.q());
  const bool plus = normalized.q() > 0;
  const auto& ds = system.digits();
  const auto& delta = system.differences();
  auto in_delta = [&](std::int64_t v) { return std::binary_search(delta.begin(), delta.end(), Rational(v)); };

  if (p == 0) out.failed.push_back("p = 0 (handled by the arithmetic-progression criterion)");
  if (!std::all_of(ds.begin(), ds.end(), [](const Rational& d) { return d.is_integer(); }))
    out.failed.push_back("digits must be integers");
  if (ds.front() != Rational(0)) out.failed.push_back("smallest digit must be 0");
  if (static_cast<std::int64_t>(ds.size()) != q) out.failed.push_back("digit count must equal |q|");
  bool gap1 = false, gap2 = false, gaps_ok = true;
  for (std::size_t i = 1; i < ds.size(); ++i) {
    const Rational g = ds[i] - ds[i - 1];
    gap1 = gap1 || g == Rational(1);
    gap2 = gap2 || g == Rational(2);
    gaps_ok = gaps_ok && (g == Rational(1) || g == Rational(2));
  }
  if (!gaps_ok || !gap1 || !gap2) out.failed.push_back("consecutive gaps must be 1 or 2, each occurring at least once");
  for (std::int64_t k = 0; k < q; ++k)
    if (!in_delta(k)) {
      out.failed.push_back("D - D must contain 0, +-1, ..., +-(q-1)");
      break;
    }
  if (plus) {
    if (!(2 * p > q + 2)) out.failed.push_back("needs 2p > q + 2");
    if (!in_delta(2 * p - 2)) out.failed.push_back("2p - 2 not in D - D");
    if (!in_delta(2 * q - p)) out.failed.push_back("2q - p not in D - D");
  } else {
    if (!(2 * p > q - 2)) out.failed.push_back("needs 2p > q - 2");
    if (!in_delta(2 * p + 1)) out.failed.push_back("2p + 1 not in D - D");
    if (!in_delta(2 * q - p - 2)) out.failed.push_back("2q - p - 2 not in D - D");
  }
  if (!out.failed.empty()) return out;

  std::vector<Certificate> certs = thm5_certificates(p, q, plus ? Thm5Variant::kPlusQ : Thm5Variant::kMinusQ);
  const RadixExpansion sum = add(certs[0].expansion, certs[1].expansion);
  if (eval(sum, normalized) != eval(certs[2].expansion, normalized))
    throw std::logic_error("2v certificate differs from the sum of the v certificates");
  // The 2v expansion of the +q family carries the digit -q, which the
  // hypotheses above do not place in D - D.
  for (const Certificate& c : certs)
    for (const auto* part : {&c.expansion.preperiod, &c.expansion.period})
      for (const Rational& d : *part)
        if (!std::binary_search(delta.begin(), delta.end(), abs(d)))
          out.failed.push_back("certificate digit " + d.to_string() + " not in D - D (" + c.label + ")");
  if (!out.failed.empty()) return out;
  for (Certificate& c : certs) {
    if (flipped) c.expansion = negate_base(c.expansion);
    if (!verify(c.expansion, c.target, system.poly(), delta)) throw std::logic_error("certificate failed verification: " + c.label);
  }
  out.certificates = std::move(certs);
  out.outcome = plus ? Thm5Outcome::kConnectedPlusQ : Thm5Outcome::kConnectedMinusQ;
  return out;
}

struct SweepItem {
  Rational b;
  std::optional<Verdict> verdict;
  std::string error;
  std::size_t states = 0;
  std::int64_t millis = 0;
};

/// decide() on D = {0, 1, b} for each b, results in input order. Items that
/// fail record their error and the sweep continues.
inline std::vector<SweepItem> sweep(const QuadraticPoly& f, const std::vector<Rational>& b_values,
                                    const DecideOptions& options = {}, unsigned jobs = 1) {
  std::vector<SweepItem> items(b_values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < b_values.size(); k = next++) {
      SweepItem& item = items[k];
      item.b = b_values[k];
      try {
        if (!(item.b > Rational(1))) throw InvalidInput("b must exceed 1");
        const ConnectivityReport r = decide(DigitSystem(f, {0, 1, item.b}), options);
        item.verdict = r.verdict;
        item.states = r.automaton_states;
        item.millis = std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count();
      } catch (const std::exception& e) {
        item.error = e.what();
      }
    }
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return items;
}

/// Pairs (j, k) of consecutive decided items whose verdicts differ; failed
/// items in between are skipped.
inline std::vector<std::pair<std::size_t, std::size_t>> verdict_transitions(const std::vector<SweepItem>& items) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::optional<std::size_t> last;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (!items[k].verdict) continue;
    if (last && *items[*last].verdict != *items[k].verdict) out.emplace_back(*last, k);
    last = k;
  }
  return out;
}

}  // namespace selfaffine
