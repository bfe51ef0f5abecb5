#pragma once

// Canned input sets with their published verdicts, run through the engine.

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "selfaffine/connectivity.hpp"
#include "selfaffine/errors.hpp"

namespace selfaffine {

struct ReproRow {
  std::string instance;
  std::string expected;
  std::string got;
  bool pass = false;
  std::size_t states = 0;
};

struct ReproTable {
  std::string name;
  std::vector<ReproRow> rows;

  bool all_pass() const {
    for (const ReproRow& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

inline std::vector<std::string> reproduce_table_names() { return {"thm1_3", "thm1_4", "prop1_2", "sec5"}; }

namespace detail {

inline std::string system_label(const QuadraticPoly& f, const std::vector<Rational>& ds) {
  std::string s = f.to_string() + " D={";
  for (std::size_t i = 0; i < ds.size(); ++i) s += (i ? "," : "") + ds[i].to_string();
  return s + "}";
}

inline std::vector<Rational> rationals(std::initializer_list<std::int64_t> xs) {
  std::vector<Rational> out;
  for (std::int64_t x : xs) out.emplace_back(x);
  return out;
}

}  // namespace detail

/// The ten polynomials x^2 + p x + q with |q| = 3 the three-digit results
/// are stated for.
inline std::vector<QuadraticPoly> three_digit_polys() {
  return {{1, 3}, {-1, 3}, {2, 3}, {-2, 3}, {3, 3}, {-3, 3}, {1, -3}, {-1, -3}, {0, 3}, {0, -3}};
}

/// Published verdict for D = {0, 1, m}, m = 2..6.
inline Verdict expected_three_digit(const QuadraticPoly& f, std::int64_t m) {
  if (m == 2) return Verdict::kConnected;
  if (m >= 4) return Verdict::kDisconnected;
  const std::int64_t ap = std::abs(f.p());
  const bool connected = (f.q() == 3 && (ap == 2 || ap == 3)) || (f.q() == -3 && ap == 1);
  return connected ? Verdict::kConnected : Verdict::kDisconnected;
}

/// Sample values inside each disconnection region of the bound table, per
/// family (upper region first, then lower).
struct BoundSamples {
  std::int64_t p;
  std::int64_t q;
  std::vector<Rational> upper;
  std::vector<Rational> lower;
};

inline std::vector<BoundSamples> bound_region_samples() {
  auto r = [](const char* s) { return Rational::parse(s); };
  return {
      {1, 3, {r("67/25"), r("3"), r("4")}, {r("67/42"), r("3/2"), r("5/4")}},
      {2, 3, {r("37/10"), r("4"), r("5")}, {r("37/27"), r("5/4"), r("6/5")}},
      {3, 3, {r("33/10"), r("7/2"), r("4")}, {r("33/23"), r("7/5"), r("6/5")}},
      {1, -3, {r("39/10"), r("4"), r("5")}, {r("4/3"), r("5/4"), r("6/5")}},
  };
}

inline ReproTable reproduce_thm1_3(const DecideOptions& options = {}) {
  ReproTable t{"thm1_3", {}};
  for (const QuadraticPoly& f : three_digit_polys()) {
    for (std::int64_t m = 2; m <= 6; ++m) {
      const std::vector<Rational> ds = detail::rationals({0, 1, m});
      const ConnectivityReport r = decide(DigitSystem(f, ds), options);
      const Verdict want = expected_three_digit(f, m);
      ReproRow row{detail::system_label(f, ds), to_string(want), to_string(r.verdict), r.verdict == want,
                   r.automaton_states};
      if (m == 2) {
        row.expected += ", tile";
        const bool tile = r.is_tile.value_or(false);
        row.got += tile ? ", tile" : ", not a tile";
        row.pass = row.pass && tile;
      }
      if (f.p() == 0) {
        const Verdict arith = decide_xn_pm_q(ds);
        row.got += " (progression rule: " + to_string(arith) + ")";
        row.pass = row.pass && arith == want;
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

inline ReproTable reproduce_thm1_4(const DecideOptions& options = {}) {
  ReproTable t{"thm1_4", {}};
  for (const BoundSamples& s : bound_region_samples()) {
    for (const std::int64_t sign : {1, -1}) {
      const QuadraticPoly f(sign * s.p, s.q);
      std::vector<Rational> bs = s.upper;
      bs.insert(bs.end(), s.lower.begin(), s.lower.end());
      for (const Rational& b : bs) {
        const std::vector<Rational> ds{Rational(0), Rational(1), b};
        const BoundCheck bound = check_thm4_bound(f, b);
        const ConnectivityReport r = decide(DigitSystem(f, ds), options);
        t.rows.push_back({detail::system_label(f, ds), "disconnected (bound region)",
                          to_string(r.verdict) + " (" + to_string(bound) + ")",
                          r.verdict == Verdict::kDisconnected && bound == BoundCheck::kDisconnectedByBound,
                          r.automaton_states});
      }
    }
  }
  return t;
}

inline ReproTable reproduce_prop1_2(const DecideOptions& options = {}) {
  ReproTable t{"prop1_2", {}};
  const QuadraticPoly f(-1, -3);
  const std::vector<std::pair<const char*, Verdict>> cases{{"13/10", Verdict::kDisconnected},
                                                           {"8/5", Verdict::kConnected},
                                                           {"2", Verdict::kConnected},
                                                           {"8/3", Verdict::kConnected},
                                                           {"9/2", Verdict::kDisconnected}};
  for (const auto& [text, want] : cases) {
    const std::vector<Rational> ds{Rational(0), Rational(1), Rational::parse(text)};
    const ConnectivityReport r = decide(DigitSystem(f, ds), options);
    t.rows.push_back({detail::system_label(f, ds), to_string(want), to_string(r.verdict), r.verdict == want,
                      r.automaton_states});
  }
  return t;
}

inline ReproTable reproduce_sec5(const DecideOptions& options = {}) {
  ReproTable t{"sec5", {}};
  const std::vector<std::pair<QuadraticPoly, std::vector<Rational>>> cases{
      {{5, 6}, detail::rationals({0, 1, 2, 4, 6, 8})},
      {{4, -6}, detail::rationals({0, 1, 3, 5, 7, 9})},
  };
  for (const auto& [f, ds] : cases) {
    const DigitSystem system(f, ds);
    const ConnectivityReport r = decide(system, options);
    const Thm5Check c = check_thm5(system);
    const Thm5Outcome want_outcome = f.q() > 0 ? Thm5Outcome::kConnectedPlusQ : Thm5Outcome::kConnectedMinusQ;
    t.rows.push_back({detail::system_label(f, ds), "connected, " + to_string(want_outcome),
                      to_string(r.verdict) + ", " + to_string(c.outcome),
                      r.verdict == Verdict::kConnected && c.outcome == want_outcome, r.automaton_states});
  }
  return t;
}

inline ReproTable reproduce(const std::string& name, const DecideOptions& options = {}) {
  if (name == "thm1_3") return reproduce_thm1_3(options);
  if (name == "thm1_4") return reproduce_thm1_4(options);
  if (name == "prop1_2") return reproduce_prop1_2(options);
  if (name == "sec5") return reproduce_sec5(options);
  throw InvalidInput("unknown table '" + name + "' (expected thm1_3, thm1_4, prop1_2 or sec5)");
}

inline void print_table(const ReproTable& t, std::ostream& os) {
  std::size_t w0 = 8, w1 = 8;
  for (const ReproRow& r : t.rows) {
    w0 = std::max(w0, r.instance.size());
    w1 = std::max(w1, r.expected.size());
  }
  os << "== " << t.name << "\n";
  os << std::left << "     " << std::setw(static_cast<int>(w0)) << "instance" << "  " << std::setw(static_cast<int>(w1))
     << "expected" << "  got\n";
  for (const ReproRow& r : t.rows)
    os << (r.pass ? "PASS " : "FAIL ") << std::setw(static_cast<int>(w0)) << r.instance << "  "
       << std::setw(static_cast<int>(w1)) << r.expected << "  " << r.got << "  [" << r.states << " states]\n";
  std::size_t passed = 0;
  for (const ReproRow& r : t.rows) passed += r.pass;
  os << passed << "/" << t.rows.size() << " rows match\n";
}

}  // namespace selfaffine
