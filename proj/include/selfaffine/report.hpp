#pragma once

// Serialization for the command-line surface: rational lists, key=value
// config files, the JSON connectivity report and the sweep CSV.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "selfaffine/connectivity.hpp"
#include "selfaffine/errors.hpp"
#include "selfaffine/rational.hpp"

namespace selfaffine {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 1,
  kExitResourceLimit = 2,
  kExitMismatch = 3,
};

inline std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(Rational::parse(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline LatticePoint parse_lattice_point(std::string_view text) {
  const std::vector<Rational> xs = parse_rational_list(text);
  if (xs.size() != 2) throw InvalidInput("expected a point 'gamma,delta', got '" + std::string(text) + "'");
  return {xs[0], xs[1]};
}

/// key=value lines; '#' starts a comment, blank lines are skipped. Keys are
/// long flag names without the leading dashes.
inline std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidInput("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    if (key.empty()) throw InvalidInput("config line " + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

inline std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file " + path);
  return parse_config(in);
}

/// Splices config entries into an argument list right after the
/// subcommand name so that explicit flags, coming later, win under a
/// take-last policy. "--config PATH" / "--config=PATH" is removed. One-letter
/// keys become short flags.
inline std::vector<std::string> merge_config_args(const std::vector<std::string>& args,
                                                  const std::vector<std::string>& subcommands) {
  std::vector<std::string> rest;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw InvalidInput("--config needs a file name");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config_path.empty()) return rest;
  std::vector<std::string> injected;
  for (const auto& [key, value] : load_config(config_path)) {
    if (key == "config") throw InvalidInput("config files cannot include other config files");
    if (key.size() == 1) {
      injected.push_back("-" + key);
      injected.push_back(value);
    } else {
      injected.push_back("--" + key + "=" + value);
    }
  }
  auto pos = std::find_if(rest.begin(), rest.end(), [&](const std::string& a) {
    return std::find(subcommands.begin(), subcommands.end(), a) != subcommands.end();
  });
  if (pos == rest.end()) throw InvalidInput("--config given without a subcommand");
  rest.insert(pos + 1, injected.begin(), injected.end());
  return rest;
}

inline Json rationals_json(const std::vector<Rational>& xs) {
  Json arr = Json::array();
  for (const Rational& x : xs) arr.push_back(x.to_string());
  return arr;
}

inline Json point_json(const LatticePoint& l) { return Json::array({l.gamma.to_string(), l.delta.to_string()}); }

inline Json bounds_json(const TailBounds& tb) {
  return Json{{"alpha", tb.alpha_bound.to_string()},
              {"beta", tb.beta_bound.to_string()},
              {"alpha_approx", tb.alpha_bound.to_double()},
              {"beta_approx", tb.beta_bound.to_double()},
              {"terms", tb.terms_used},
              {"exact", tb.exact},
              {"method", to_string(tb.method)}};
}

inline Json thm5_json(const Thm5Check& c) {
  Json j{{"outcome", to_string(c.outcome)}, {"failed", c.failed}, {"certificates", Json::array()}};
  for (const Certificate& cert : c.certificates)
    j["certificates"].push_back(
        Json{{"label", cert.label}, {"target", point_json(cert.target)}, {"expansion", cert.expansion.to_string()}});
  return j;
}

struct AnalyzeInput {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::vector<Rational> digits;
  DecideOptions options;
};

/// Full analysis of one digit system as the schema-1 JSON report.
///
/// For p = 0 with |D| = |q| the verdict comes from the arithmetic-progression
/// criterion ("route": "xn_pm_q"); the automaton still runs and its verdict
/// is reported alongside.
inline Json analyze(const AnalyzeInput& in) {
  const QuadraticPoly poly(in.p, in.q);
  const DigitSystem system = DigitSystem::translated(poly, in.digits);
  const ConnectivityReport r = decide(system, in.options);

  Verdict verdict = r.verdict;
  std::string route = "automaton";
  if (poly.p() == 0 && static_cast<std::int64_t>(system.digits().size()) == std::abs(poly.q())) {
    route = "xn_pm_q";
    verdict = decide_xn_pm_q(system.digits());
  }
  const auto [normalized, flipped] = normalize_sign(poly);

  Json j;
  j["schema"] = kReportSchema;
  j["command"] = "analyze";
  j["input"] = Json{{"p", in.p},
                    {"q", in.q},
                    {"digits", rationals_json(in.digits)},
                    {"bound_terms", in.options.bound_terms},
                    {"state_limit", in.options.state_limit}};
  j["polynomial"] = poly.to_string();
  j["digits"] = rationals_json(system.digits());
  j["sign_normalized"] = Json{{"p", normalized.p()}, {"flipped", flipped}};
  j["route"] = route;
  j["verdict"] = to_string(verdict);
  j["automaton_verdict"] = to_string(r.verdict);
  j["is_tile"] = r.is_tile ? Json(*r.is_tile) : Json(nullptr);
  j["bounds"] = bounds_json(r.bounds);
  Json edges = Json::array();
  for (const auto& [a, b] : r.e_graph.edges) edges.push_back(Json::array({r.e_graph.vertices[a].to_string(), r.e_graph.vertices[b].to_string()}));
  j["edges"] = edges;
  Json certs = Json::array();
  for (const PairEvidence& e : r.evidence) {
    Json c{{"pair", Json::array({r.e_graph.vertices[e.i].to_string(), r.e_graph.vertices[e.j].to_string()})},
           {"target", point_json({r.e_graph.vertices[e.j] - r.e_graph.vertices[e.i], 0})},
           {"edge", e.edge}};
    if (e.edge)
      c["witness"] = e.witness->to_string();
    else
      c["explored_states"] = e.explored_states;
    certs.push_back(std::move(c));
  }
  j["certificates"] = certs;
  Json checks;
  if (system.digits().size() == 3 && system.digits()[1] == Rational(1) && system.digits()[2] > Rational(1))
    checks["thm4_bound"] = to_string(check_thm4_bound(poly, system.digits()[2]));
  else
    checks["thm4_bound"] = to_string(BoundCheck::kNotApplicable);
  checks["thm5"] = thm5_json(check_thm5(system));
  j["cross_checks"] = checks;
  j["automaton"] = Json{{"states", r.automaton_states}, {"alive", r.alive_states}};
  j["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count();
  return j;
}

inline std::string to_json_text(const Json& j) { return j.dump(2) + "\n"; }

inline Json error_json(std::string_view kind, std::string_view message) {
  return Json{{"schema", kReportSchema}, {"error", kind}, {"message", message}};
}

/// b from..to inclusive in exact steps.
inline std::vector<Rational> rational_range(const Rational& from, const Rational& to, const Rational& step) {
  if (step.sign() <= 0) throw InvalidInput("step must be positive");
  if (to < from) throw InvalidInput("range end precedes start");
  std::vector<Rational> out;
  for (Rational b = from; b <= to; b += step) {
    out.push_back(b);
    if (out.size() > 1'000'000) throw InvalidInput("range has more than 10^6 values");
  }
  return out;
}

inline std::string sweep_csv(const std::vector<SweepItem>& items) {
  std::ostringstream os;
  os << "b,numerator,denominator,verdict,states,ms\n";
  for (const SweepItem& it : items) {
    os << it.b << "," << it.b.numerator() << "," << it.b.denominator() << ","
       << (it.verdict ? to_string(*it.verdict) : std::string("error")) << "," << it.states << "," << it.millis << "\n";
  }
  return os.str();
}

}  // namespace selfaffine
