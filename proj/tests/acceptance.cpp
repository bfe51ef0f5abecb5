// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.
//
//   acceptance GOLDEN_SWEEP_CSV [FIGURE_DIR]

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "selfaffine/connectivity.hpp"
#include "selfaffine/coords.hpp"
#include "selfaffine/radix.hpp"
#include "selfaffine/render.hpp"
#include "selfaffine/report.hpp"

using namespace selfaffine;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << " [failed: " << what << "]";
    }
  }
};

std::vector<Rational> ints(std::initializer_list<long long> xs) { return {xs.begin(), xs.end()}; }

std::string label(const QuadraticPoly& f, const std::vector<Rational>& ds) {
  std::string s = f.to_string() + " {";
  for (std::size_t i = 0; i < ds.size(); ++i) s += (i ? "," : "") + ds[i].to_string();
  return s + "}";
}

// Every system decided below, kept for the property checks.
struct Decided {
  DigitSystem system;
  ConnectivityReport report;
};
std::vector<Decided> g_decided;

ConnectivityReport decide_logged(const QuadraticPoly& f, const std::vector<Rational>& ds,
                                 const DecideOptions& options = {}) {
  DigitSystem s(f, ds);
  ConnectivityReport r = decide(s, options);
  g_decided.push_back({s, r});
  return r;
}

Outcome tail_bound_reproduction() {
  Outcome o;
  const auto t0 = Clock::now();
  const TailBounds a = tail_bounds({1, 3}, 13);
  const TailBounds b = tail_bounds({2, 3}, 13);
  const TailBounds c = tail_bounds({3, 3}, 13);
  const TailBounds d = tail_bounds({1, -3}, 13);
  const double s = seconds_since(t0);
  o.require(a.alpha_bound < Rational(88, 100) && a.beta_bound < Rational(63, 100), "x^2+x+3");
  o.require(b.alpha_bound < Rational(117, 100) && b.beta_bound < Rational(73, 100), "x^2+2x+3");
  o.require(c.alpha_bound < Rational(224, 100) && c.beta_bound < Rational(108, 100), "x^2+3x+3");
  o.require(d.alpha_bound == Rational(2) && d.beta_bound == Rational(1) && d.exact, "x^2+x-3 exact");
  o.require(s < 1.0, "runtime under 1 s");
  o.notes << " alpha/beta: " << a.alpha_bound.to_double() << "/" << a.beta_bound.to_double() << ", "
          << b.alpha_bound.to_double() << "/" << b.beta_bound.to_double() << ", " << c.alpha_bound.to_double() << "/"
          << c.beta_bound.to_double() << ", " << d.alpha_bound << "/" << d.beta_bound << "; " << s << " s";
  return o;
}

Outcome three_digit_table() {
  Outcome o;
  const auto t0 = Clock::now();
  struct Row {
    QuadraticPoly f;
    bool connected_at_three;
  };
  const std::vector<Row> rows{{{1, 3}, false},  {{-1, 3}, false}, {{2, 3}, true},  {{-2, 3}, true},
                              {{3, 3}, true},   {{-3, 3}, true},  {{1, -3}, true}, {{-1, -3}, true},
                              {{0, 3}, false},  {{0, -3}, false}};
  std::size_t matched = 0, total_states = 0;
  for (const Row& row : rows)
    for (long long m = 2; m <= 6; ++m) {
      const ConnectivityReport r = decide_logged(row.f, ints({0, 1, m}));
      const bool want = m == 2 || (m == 3 && row.connected_at_three);
      const bool ok = (r.verdict == Verdict::kConnected) == want;
      o.require(ok, label(row.f, ints({0, 1, m})));
      matched += ok;
      total_states += r.automaton_states;
    }
  const double s = seconds_since(t0);
  o.require(s < 60, "runtime under 60 s");
  o.notes << " " << matched << "/50 instances match; " << total_states << " states; " << s << " s";
  return o;
}

Outcome tan_fixed_points() {
  Outcome o;
  const auto t0 = Clock::now();
  const QuadraticPoly f(-1, -3);
  for (const char* b : {"8/5", "2", "8/3"})
    o.require(decide_logged(f, {0, 1, Rational::parse(b)}).verdict == Verdict::kConnected, std::string("b=") + b);
  for (const char* b : {"13/10", "9/2"})
    o.require(decide_logged(f, {0, 1, Rational::parse(b)}).verdict == Verdict::kDisconnected, std::string("b=") + b);
  const double s = seconds_since(t0);
  o.require(s < 30, "runtime under 30 s");
  o.notes << " 5 values; " << s << " s";
  return o;
}

Outcome bound_region_samples_disconnected() {
  Outcome o;
  struct Family {
    std::int64_t p, q;
    std::vector<const char*> samples;
  };
  const std::vector<Family> families{
      {1, 3, {"67/25", "3", "4", "67/42", "3/2", "5/4"}},
      {2, 3, {"37/10", "4", "5", "37/27", "5/4", "6/5"}},
      {3, 3, {"33/10", "7/2", "4", "33/23", "7/5", "6/5"}},
      {1, -3, {"39/10", "4", "5", "4/3", "5/4", "6/5"}},
  };
  std::size_t n = 0;
  for (const Family& fam : families)
    for (const std::int64_t sign : {1, -1}) {
      const QuadraticPoly f(sign * fam.p, fam.q);
      for (const char* text : fam.samples) {
        const Rational b = Rational::parse(text);
        const std::string where = label(f, {0, 1, b});
        o.require(check_thm4_bound(f, b) == BoundCheck::kDisconnectedByBound, where + " outside region table");
        o.require(decide_logged(f, {0, 1, b}).verdict == Verdict::kDisconnected, where);
        ++n;
      }
    }
  o.notes << " " << n << " samples";
  return o;
}

Outcome radix_identities() {
  Outcome o;
  auto check = [&](const char* text, LatticePoint target, QuadraticPoly f, const std::vector<Rational>& alphabet) {
    o.require(verify(RadixExpansion::parse(text), target, f, alphabet), f.to_string() + " " + text);
  };
  std::vector<Rational> three;
  for (long long d = -3; d <= 3; ++d) three.emplace_back(d);
  check("0.(3)[3,0]", {2, 0}, {-1, -3}, three);
  check("0.(-2,-3)[3,-3,0]", {2, 0}, {2, 3}, three);
  check("0.(-3,0)[3,-3]", {2, 0}, {3, 3}, three);

  const std::vector<Rational> plus_alphabet = DigitSystem({5, 6}, ints({0, 1, 2, 4, 6, 8})).differences();
  check("0.[-4,-1,5]", {1, 0}, {5, 6}, plus_alphabet);
  check("0.(-4)[-2,2]", {1, 0}, {5, 6}, plus_alphabet);
  check("0.(-8)[-3,7,-6,1,3,-2]", {2, 0}, {5, 6}, plus_alphabet);
  const std::vector<Rational> minus_alphabet = DigitSystem({4, -6}, ints({0, 1, 3, 5, 7, 9})).differences();
  check("0.[-4,5]", {1, 0}, {4, -6}, minus_alphabet);
  check("0.(-5)[1]", {1, 0}, {4, -6}, minus_alphabet);
  check("0.(-9)[6,-3]", {2, 0}, {4, -6}, minus_alphabet);

  // The 2v expansions are the digitwise sums of the two expansions of v.
  o.require(add(RadixExpansion::parse("0.[-4,-1,5]"), RadixExpansion::parse("0.(-4)[-2,2]")) ==
                RadixExpansion::parse("0.(-8)[-3,7,-6,1,3,-2]"),
            "plus-family digit sum");
  o.require(add(RadixExpansion::parse("0.[-4,5]"), RadixExpansion::parse("0.(-5)[1]")) ==
                RadixExpansion::parse("0.(-9)[6,-3]"),
            "minus-family digit sum");
  o.notes << " 9 expansions, 2 digit sums";
  return o;
}

Outcome section_five_examples() {
  Outcome o;
  const auto t0 = Clock::now();
  const ConnectivityReport a = decide_logged({5, 6}, ints({0, 1, 2, 4, 6, 8}));
  const ConnectivityReport b = decide_logged({4, -6}, ints({0, 1, 3, 5, 7, 9}));
  o.require(a.verdict == Verdict::kConnected, "x^2+5x+6 connected");
  o.require(b.verdict == Verdict::kConnected, "x^2+4x-6 connected");
  const Thm5Check ca = check_thm5(a.system);
  const Thm5Check cb = check_thm5(b.system);
  o.require(ca.outcome == Thm5Outcome::kConnectedPlusQ && ca.certificates.size() == 3, "x^2+5x+6 certificate");
  o.require(cb.outcome == Thm5Outcome::kConnectedMinusQ && cb.certificates.size() == 3, "x^2+4x-6 certificate");
  const double s = seconds_since(t0);
  o.require(s < 600, "runtime under 10 min");
  o.notes << " states " << a.automaton_states << " and " << b.automaton_states << "; " << s << " s";
  return o;
}

Outcome property_suites() {
  Outcome o;
  const auto t0 = Clock::now();
  // (a) the sign of p never changes the verdict.
  std::size_t symmetric = 0;
  const std::size_t n_decided = g_decided.size();
  for (std::size_t k = 0; k < n_decided; ++k) {
    const Decided& d = g_decided[k];
    const QuadraticPoly mirror(-d.system.poly().p(), d.system.poly().q());
    const Verdict v = decide(DigitSystem(mirror, d.system.digits())).verdict;
    o.require(v == d.report.verdict, "sign symmetry " + label(d.system.poly(), d.system.digits()));
    ++symmetric;
  }
  // (b) every edge witness evaluates back to its target.
  std::size_t witnesses = 0;
  for (std::size_t k = 0; k < n_decided; ++k) {
    const Decided& d = g_decided[k];
    for (const PairEvidence& e : d.report.evidence) {
      if (!e.edge) continue;
      const LatticePoint target{d.system.digits()[e.j] - d.system.digits()[e.i], 0};
      o.require(e.witness && eval(*e.witness, d.system.poly()) == target, "witness " + label(d.system.poly(), d.system.digits()));
      ++witnesses;
    }
  }
  // (c) automaton against depth-12 enumeration and frontier iteration.
  std::size_t oracle_points = 0;
  for (const QuadraticPoly f : {QuadraticPoly(1, 3), QuadraticPoly(-1, 3), QuadraticPoly(2, 3), QuadraticPoly(-2, 3),
                                QuadraticPoly(3, 3), QuadraticPoly(-3, 3), QuadraticPoly(1, -3), QuadraticPoly(-1, -3),
                                QuadraticPoly(0, 3), QuadraticPoly(0, -3)}) {
    const oracle::Tally t = oracle::compare_consecutive_digits(f);
    for (const std::string& m : t.mismatches) o.require(false, m);
    oracle_points += t.members + t.non_members;
  }
  // (d) recurrence and basis identities for 200 terms.
  std::size_t identities = 0;
  for (const QuadraticPoly f : {QuadraticPoly(1, 3), QuadraticPoly(2, 3), QuadraticPoly(3, 3), QuadraticPoly(1, -3),
                                QuadraticPoly(0, 3), QuadraticPoly(5, 6), QuadraticPoly(4, -6)}) {
    const CoordSeq c = coord_seq(f, 200);
    const Rational p(f.p()), q(f.q());
    const Mat2 inv = companion(f).inverse();
    LatticePoint x{1, 0};
    for (std::size_t i = 0; i < 200; ++i) {
      x = inv * x;
      o.require(x == LatticePoint{c.alphas[i], c.betas[i]}, "basis identity " + f.to_string());
      if (i + 2 < 200) {
        o.require(q * c.alphas[i + 2] + p * c.alphas[i + 1] + c.alphas[i] == Rational(0), "alpha recurrence");
        o.require(q * c.betas[i + 2] + p * c.betas[i + 1] + c.betas[i] == Rational(0), "beta recurrence");
      }
      ++identities;
    }
  }
  o.notes << " " << symmetric << " mirrored systems, " << witnesses << " witnesses, " << oracle_points
          << " oracle points, " << identities << " basis terms; " << seconds_since(t0) << " s";
  return o;
}

std::string pgm_bytes(const GrayImage& img) {
  std::ostringstream os;
  write_pgm(img, os);
  return os.str();
}

Outcome figures(const std::filesystem::path& dir) {
  Outcome o;
  const auto t0 = Clock::now();
  std::filesystem::create_directories(dir);
  struct Panel {
    std::string name;
    QuadraticPoly f;
    std::vector<Rational> digits;
    Point2 basis;
    bool two_gap_panel;
  };
  const std::vector<Panel> panels{
      {"fig1a", {1, 3}, ints({0, 1, 4}), {1, 0}, true},       {"fig1b", {2, 3}, ints({0, 1, 4}), {1, 0}, true},
      {"fig1c", {3, 3}, ints({0, 1, 4}), {1, 0}, true},       {"fig1d", {1, -3}, ints({0, 1, 4}), {1, 0}, true},
      {"fig2a", {1, 3}, ints({0, 1, 3}), {1, 0}, false},      {"fig2b", {2, 3}, ints({0, 1, 3}), {1, 0}, false},
      {"fig2c", {3, 3}, ints({0, 1, 3}), {1, 0}, false},      {"fig2d", {1, -3}, ints({0, 1, 3}), {1, 0}, false},
      {"fig3a", {5, 6}, ints({0, 1, 2, 4, 6, 8}), {0, 1}, false},
      {"fig3b", {4, -6}, ints({0, 1, 3, 5, 7, 9}), {0, 1}, false},
  };
  for (const Panel& panel : panels) {
    const DigitSystem s(panel.f, panel.digits);
    RenderConfig config;
    config.basis = panel.basis;
    const int depth = default_depth(s.digits().size());
    const PointCloud cloud = enumerate_points(s, depth, config.basis);
    const std::string first = pgm_bytes(rasterize(cloud, config));
    const std::string second = pgm_bytes(rasterize(enumerate_points(s, depth, config.basis), config));
    o.require(first == second, panel.name + " deterministic");
    std::ofstream(dir / (panel.name + ".pgm"), std::ios::binary) << first;

    const Verdict v = decide(s).verdict;
    o.notes << " " << panel.name << ":";
    if (panel.two_gap_panel) {
      const std::size_t k = component_estimate(cloud, pixel_size(cloud, config));
      o.require(v == Verdict::kDisconnected && k >= 2, panel.name + " shows several pieces");
      o.notes << k;
    }
    if (v == Verdict::kConnected) {
      const std::size_t k = component_estimate(cloud, covering_radius(cloud, s.poly(), depth));
      o.require(k == 1, panel.name + " connected set in one piece");
      o.notes << k;
    }
    if (!panel.two_gap_panel && v == Verdict::kDisconnected) o.notes << "-";
  }
  o.notes << "; " << seconds_since(t0) << " s";
  return o;
}

std::vector<std::vector<std::string>> read_csv_without_ms(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!cells.empty()) cells.pop_back();
    rows.push_back(cells);
  }
  return rows;
}

Outcome conjecture_probe(const std::string& golden_path) {
  Outcome o;
  const auto t0 = Clock::now();
  const QuadraticPoly f(-1, -3);
  const std::vector<Rational> bs = rational_range(Rational(6, 5), Rational(9, 2), Rational(1, 20));
  const std::vector<SweepItem> items = sweep(f, bs, {}, std::max(1u, std::thread::hardware_concurrency()));
  o.require(items.size() == 67, "67 values");
  for (const SweepItem& it : items) o.require(it.verdict.has_value(), "b=" + it.b.to_string() + " decided");

  std::istringstream produced(sweep_csv(items));
  std::ifstream golden(golden_path);
  o.require(golden.good(), "golden file readable");
  o.require(read_csv_without_ms(produced) == read_csv_without_ms(golden), "matches golden CSV (ms column ignored)");

  for (const SweepItem& it : items) {
    if (!it.verdict) continue;
    for (const char* c : {"8/5", "2", "8/3"})
      if (it.b == Rational::parse(c)) o.require(*it.verdict == Verdict::kConnected, std::string("fixed point ") + c);
    for (const char* c : {"13/10", "9/2"})
      if (it.b == Rational::parse(c)) o.require(*it.verdict == Verdict::kDisconnected, std::string("fixed point ") + c);
    if (check_thm4_bound(f, it.b) == BoundCheck::kDisconnectedByBound)
      o.require(*it.verdict == Verdict::kDisconnected, "bound region b=" + it.b.to_string());
  }
  o.notes << " transitions:";
  for (const auto& [j, k] : verdict_transitions(items)) o.notes << " " << items[j].b << "|" << items[k].b;
  o.notes << "; " << seconds_since(t0) << " s";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance GOLDEN_SWEEP_CSV [FIGURE_DIR]\n";
    return 2;
  }
  const std::string golden = argv[1];
  const std::filesystem::path figure_dir = argc > 2 ? argv[2] : "figures";

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"tail bounds at n=13", tail_bound_reproduction},
      {"three-digit table, 10 polynomials x m=2..6", three_digit_table},
      {"x^2-x-3 fixed points", tan_fixed_points},
      {"bound-region samples disconnected", bound_region_samples_disconnected},
      {"radix identities", radix_identities},
      {"six-digit examples with certificates", section_five_examples},
      {"property suites", property_suites},
      {"figures and component estimates", [&] { return figures(figure_dir); }},
      {"sweep of x^2-x-3 over 6/5..9/2", [&] { return conjecture_probe(golden); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes << " [exception: " << e.what() << "]";
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " --"
              << o.notes.str() << std::endl;
  }
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << criteria.size() - failures << "/" << criteria.size() << "\n";
  return failures ? 1 : 0;
}
