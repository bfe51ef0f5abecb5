// selfaffine: connectedness of planar self-affine sets with collinear digits.
//
//   selfaffine analyze   -p 1 -q 3 --digits 0,1,2
//   selfaffine sweep     -p -1 -q -3 --b-from 6/5 --b-to 9/2 --step 1/20
//   selfaffine verify    -p 2 -q 3 --expansion "0.(-2,-3)[3,-3,0]" --target 2,0
//   selfaffine render    -p 1 -q 3 --digits 0,1,4 --out fig.pgm
//   selfaffine reproduce thm1_3
//
// Any subcommand accepts --config FILE with key=value lines mirroring the
// flags; flags given on the command line win.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "selfaffine/radix.hpp"
#include "selfaffine/render.hpp"
#include "selfaffine/report.hpp"
#include "selfaffine/reproduce.hpp"

using namespace selfaffine;

namespace {

struct Common {
  std::int64_t p = 0;
  std::int64_t q = 0;
  int bound_terms = 13;
  std::size_t state_limit = 10'000'000;

  DecideOptions options() const { return {bound_terms, state_limit}; }
};

void add_poly(CLI::App* sub, Common& c) {
  sub->add_option("-p", c.p, "linear coefficient of x^2 + p x + q")->required()->allow_extra_args(false);
  sub->add_option("-q", c.q, "constant coefficient")->required()->allow_extra_args(false);
}

void add_engine(CLI::App* sub, Common& c) {
  sub->add_option("--bound-terms", c.bound_terms, "explicit terms before the tail estimate")->capture_default_str();
  sub->add_option("--state-limit", c.state_limit, "automaton state cap")->capture_default_str();
}

int fail(int code, std::string_view kind, std::string_view message) {
  std::cerr << error_json(kind, message).dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connectedness of self-affine sets with collinear digit sets"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  app.add_option("--config", config_path, "key=value file mirroring the flags (flags win)");

  Common common;

  auto* analyze_cmd = app.add_subcommand("analyze", "decide connectedness and print a JSON report");
  std::string digits_text;
  add_poly(analyze_cmd, common);
  add_engine(analyze_cmd, common);
  analyze_cmd->add_option("--digits", digits_text, "comma-separated digits, e.g. 0,1,8/5")->required();
  std::string out_path;
  analyze_cmd->add_option("--out", out_path, "write the report here instead of stdout");

  auto* sweep_cmd = app.add_subcommand("sweep", "decide D = {0,1,b} over a range of b, CSV output");
  add_poly(sweep_cmd, common);
  add_engine(sweep_cmd, common);
  std::string b_from, b_to, b_step = "1/20", b_values;
  unsigned jobs = 1;
  sweep_cmd->add_option("--b-from", b_from, "first b");
  sweep_cmd->add_option("--b-to", b_to, "last b (inclusive)");
  sweep_cmd->add_option("--step", b_step, "step between b values")->capture_default_str();
  sweep_cmd->add_option("--b-values", b_values, "explicit comma-separated b values instead of a range");
  sweep_cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str();
  sweep_cmd->add_option("--out", out_path, "write the CSV here instead of stdout");

  auto* verify_cmd = app.add_subcommand("verify", "check a radix expansion against a target point");
  add_poly(verify_cmd, common);
  std::string expansion_text, target_text = "", alphabet_digits;
  verify_cmd->add_option("--expansion", expansion_text, "e.g. \"0.(3)[3,0]\"")->required();
  verify_cmd->add_option("--target", target_text, "gamma,delta of gamma v + delta A v")->required();
  verify_cmd->add_option("--digits", alphabet_digits, "digit set D; fractional digits must lie in D - D");

  auto* render_cmd = app.add_subcommand("render", "rasterize the depth-N approximation to a PGM file");
  add_poly(render_cmd, common);
  RenderConfig rc;
  std::string basis_text = "1,0";
  bool components = false;
  render_cmd->add_option("--digits", digits_text, "comma-separated digits")->required();
  render_cmd->add_option("--out", out_path, "PGM output path")->required();
  render_cmd->add_option("--depth", rc.depth, "digits per point (0 picks the smallest N with |D|^N >= 1e5)")
      ->capture_default_str();
  render_cmd->add_option("--width", rc.width)->capture_default_str();
  render_cmd->add_option("--height", rc.height)->capture_default_str();
  render_cmd->add_option("--basis", basis_text, "the vector v as x,y")->capture_default_str();
  render_cmd->add_option("--margin", rc.margin)->capture_default_str();
  render_cmd->add_option("--budget", rc.point_budget, "maximum number of points")->capture_default_str();
  render_cmd->add_flag("--components", components, "also report component estimates");

  auto* reproduce_cmd = app.add_subcommand("reproduce", "run a canned table and compare against published verdicts");
  std::string table_name;
  reproduce_cmd->add_option("table", table_name, "thm1_3, thm1_4, prop1_2, sec5 or all")->required();
  add_engine(reproduce_cmd, common);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = merge_config_args(args, {"analyze", "sweep", "verify", "render", "reproduce"});
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kExitInvalidInput, "invalid_input", e.what());
  } catch (const InvalidInput& e) {
    return fail(kExitInvalidInput, "invalid_input", e.what());
  }

  auto emit = [&](const std::string& text) {
    if (out_path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open " + out_path + " for writing");
    out << text;
  };

  try {
    if (analyze_cmd->parsed()) {
      emit(to_json_text(analyze({common.p, common.q, parse_rational_list(digits_text), common.options()})));
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      const QuadraticPoly f(common.p, common.q);
      std::vector<Rational> bs;
      if (!b_values.empty()) {
        bs = parse_rational_list(b_values);
      } else {
        if (b_from.empty() || b_to.empty()) throw InvalidInput("sweep needs --b-from and --b-to, or --b-values");
        bs = rational_range(Rational::parse(b_from), Rational::parse(b_to), Rational::parse(b_step));
      }
      const std::vector<SweepItem> items = sweep(f, bs, common.options(), jobs);
      emit(sweep_csv(items));
      for (const auto& [j, k] : verdict_transitions(items))
        std::cerr << "verdict changes between b=" << items[j].b << " (" << to_string(*items[j].verdict)
                  << ") and b=" << items[k].b << " (" << to_string(*items[k].verdict) << ")\n";
      for (const SweepItem& it : items)
        if (!it.verdict) {
          std::cerr << "b=" << it.b << ": " << it.error << "\n";
          return kExitResourceLimit;
        }
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      const QuadraticPoly f(common.p, common.q);
      const RadixExpansion e = RadixExpansion::parse(expansion_text);
      const LatticePoint target = parse_lattice_point(target_text);
      bool ok = false;
      if (alphabet_digits.empty()) {
        ok = eval(e, f) == target;
      } else {
        ok = verify(e, target, f, DigitSystem(f, parse_rational_list(alphabet_digits)).differences());
      }
      std::cout << (ok ? "true" : "false") << "\n";
      return ok ? kExitOk : kExitMismatch;
    }

    if (render_cmd->parsed()) {
      const QuadraticPoly f(common.p, common.q);
      const DigitSystem system(f, parse_rational_list(digits_text));
      const std::vector<Rational> basis = parse_rational_list(basis_text);
      if (basis.size() != 2) throw InvalidInput("--basis needs two coordinates");
      rc.basis = {basis[0].to_double(), basis[1].to_double()};
      const int depth = rc.depth > 0 ? rc.depth : default_depth(system.digits().size());
      const PointCloud cloud = enumerate_points(system, depth, rc.basis, rc.point_budget);
      save_pgm(rasterize(cloud, rc), out_path);
      Json summary{{"schema", kReportSchema},
                   {"command", "render"},
                   {"out", out_path},
                   {"polynomial", f.to_string()},
                   {"digits", rationals_json(system.digits())},
                   {"depth", depth},
                   {"points", cloud.points.size()},
                   {"width", rc.width},
                   {"height", rc.height}};
      if (components) {
        const double radius = covering_radius(cloud, f, depth);
        const double pixel = pixel_size(cloud, rc);
        summary["covering_radius"] = radius;
        summary["components_at_covering_radius"] = component_estimate(cloud, radius);
        summary["pixel_size"] = pixel;
        summary["components_at_pixel_size"] = component_estimate(cloud, pixel);
      }
      std::cout << summary.dump() << "\n";
      return kExitOk;
    }

    if (reproduce_cmd->parsed()) {
      std::vector<std::string> names = table_name == "all" ? reproduce_table_names() : std::vector{table_name};
      bool all = true;
      for (const std::string& name : names) {
        const ReproTable t = reproduce(name, common.options());
        print_table(t, std::cout);
        all = all && t.all_pass();
      }
      return all ? kExitOk : kExitMismatch;
    }
  } catch (const InvalidInput& e) {
    return fail(kExitInvalidInput, "invalid_input", e.what());
  } catch (const StateLimitExceeded& e) {
    return fail(kExitResourceLimit, "resource_limit", e.what());
  } catch (const std::exception& e) {
    return fail(4, "internal", e.what());
  }
  return kExitOk;
}
