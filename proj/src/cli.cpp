// SPDX-License-Identifier: Apache-2.0
#include "amgm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "amgm/bounds.hpp"
#include "amgm/core_stats.hpp"
#include "amgm/errors.hpp"
#include "amgm/extended_real.hpp"
#include "amgm/extremal.hpp"
#include "amgm/json_io.hpp"
#include "amgm/verify.hpp"

namespace amgm::cli {
namespace {

using nlohmann::json;

std::string fmt17(double x) { return fmt::format("{:.17g}", x); }

// The one textual spelling of +infinity accepted on the command line.
bool is_inf_token(const std::string& s) {
  std::string t;
  for (char ch : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  return t == "inf";
}

ExtendedReal parse_extended(const std::string& s) {
  if (is_inf_token(s)) return ExtendedReal::infinity();
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InadmissibleParamsError(fmt::format("'{}' is not a number or INF", s));
  }
  if (pos != s.size() || std::isnan(v)) {
    throw InadmissibleParamsError(fmt::format("'{}' is not a number or INF", s));
  }
  return ExtendedReal(v);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// eval accepts inline JSON (starts with '[' or '{') or a file path.
std::string load_eval_text(const std::string& input) {
  const auto first = input.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (input[first] == '[' || input[first] == '{')) {
    return input;
  }
  std::ifstream in(input);
  if (!in) throw InadmissibleParamsError(fmt::format("cannot read input file '{}'", input));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_eval(const std::string& input, std::ostream& out) {
  const json parsed = json::parse(load_eval_text(input));
  const DiscreteDistribution d = distribution_from_json(parsed);
  const MomentSummary s = sqrt_moments(d);
  const BoundResult r = check_bounds(d);

  json o = to_json(s);
  const json rb = to_json(r);
  for (const auto& [k, v] : rb.items()) o[k] = v;
  out << o.dump(2) << "\n";
  return kExitOk;
}

struct ExtremalOpts {
  std::string side = "hi";
  double V = 0.0;
  std::optional<double> E;
  std::optional<std::string> F;
  double u = 0.0;
  double c = 0.0;
};

int cmd_extremal(const ExtremalOpts& o, std::ostream& out) {
  TwoPointSpec spec;
  double bound = 0.0;
  if (o.side == "hi") {
    if (!o.E) throw InadmissibleParamsError("side hi requires --e");
    spec = two_point_hi(o.V, *o.E, o.u);
    bound = upper_bound(o.V, *o.E);
  } else {
    if (!o.F) throw InadmissibleParamsError("side lo requires --f");
    const ExtendedReal f = parse_extended(*o.F);
    spec = two_point_lo(o.V, f, o.u);
    bound = lower_bound(o.V, f);
  }
  const DiscreteDistribution d = spec_to_distribution(spec, o.c);
  const json result{{"spec", to_json(spec)},
                    {"distribution", to_json(d)},
                    {"moments", to_json(sqrt_moments(d))},
                    {"psi", psi(spec, o.c)},
                    {"bound", bound}};
  out << result.dump(2) << "\n";
  return kExitOk;
}

struct VerifyOpts {
  std::string suite;
  std::uint64_t trials = 0;  // 0: use the suite's default
  std::uint64_t seed = 0;
  int max_atoms = 8;
  double value_cap = 100.0;
  double zero_prob = 0.2;
  double V = 1.0;
  double E = 4.0;
  std::string F = "2";
  std::string side = "hi";
  int grid = 1000;
};

CampaignConfig make_config(const VerifyOpts& o, std::uint64_t default_trials) {
  CampaignConfig cfg;
  cfg.trials = o.trials != 0 ? o.trials : default_trials;
  cfg.max_atoms = o.max_atoms;
  cfg.value_cap = o.value_cap;
  cfg.zero_atom_prob = o.zero_prob;
  cfg.seed = o.seed;
  return cfg;
}

json run_one_suite(const std::string& name, const VerifyOpts& o) {
  if (name == "sandwich") return to_json(falsify_sandwich(make_config(o, 100000)));
  if (name == "prop2") {
    return to_json(verify_infimum(o.V, parse_extended(o.F), make_config(o, 10000)));
  }
  if (name == "prop3") return to_json(verify_equality_cases(make_config(o, 10000)));
  if (name == "lemvar") return to_json(verify_variance_product(make_config(o, 100000)));
  if (name == "attain") {
    const BoundSide side = o.side == "hi" ? BoundSide::hi : BoundSide::lo;
    const ExtendedReal param =
        side == BoundSide::hi ? ExtendedReal(o.E) : parse_extended(o.F);
    return to_json(verify_attainment(o.V, param, side, o.grid));
  }
  throw InadmissibleParamsError(fmt::format("unknown suite '{}'", name));
}

int cmd_verify(const VerifyOpts& o, std::ostream& out) {
  json result;
  if (o.suite == "all") {
    VerifyOpts hi = o;
    hi.side = "hi";
    VerifyOpts lo = o;
    lo.side = "lo";
    VerifyOpts inf = o;
    inf.F = "INF";
    result = json{{"sandwich", run_one_suite("sandwich", o)},
                  {"prop2", run_one_suite("prop2", o)},
                  {"prop2_inf", run_one_suite("prop2", inf)},
                  {"prop3", run_one_suite("prop3", o)},
                  {"lemvar", run_one_suite("lemvar", o)},
                  {"attain_hi", run_one_suite("attain", hi)},
                  {"attain_lo", run_one_suite("attain", lo)}};
  } else {
    result = run_one_suite(o.suite, o);
  }
  out << result.dump(2) << "\n";

  std::uint64_t failures = 0;
  if (result.contains("failures")) {
    failures = result.at("failures").get<std::uint64_t>();
  } else {
    for (const auto& [k, rep] : result.items()) {
      failures += rep.at("failures").get<std::uint64_t>();
    }
  }
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

struct SweepOpts {
  std::string side = "hi";
  std::string v_list;
  std::string param_list;
  std::string output = "-";
};

struct SweepRow {
  double v;
  ExtendedReal param;
  std::string param_text;
  std::optional<double> bound;
};

int cmd_sweep(const SweepOpts& o, std::ostream& out, std::ostream& err) {
  const bool hi = o.side == "hi";
  std::vector<SweepRow> rows;
  for (const std::string& vs : split_list(o.v_list)) {
    const ExtendedReal vx = parse_extended(vs);
    if (vx.is_infinite()) throw InadmissibleParamsError("--v entries must be finite");
    const double v = vx.finite_value();
    for (const std::string& ps : split_list(o.param_list)) {
      const ExtendedReal param = parse_extended(ps);
      SweepRow row{v, param, is_inf_token(ps) ? "INF" : fmt17(param.finite_value()), {}};
      if (hi) {
        if (!param.is_infinite() && admissible_hi(v, param.finite_value())) {
          row.bound = upper_bound(v, param.finite_value());
        }
      } else if (admissible_lo(v, param)) {
        row.bound = lower_bound(v, param);
      }
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) throw InadmissibleParamsError("sweep produced no rows");

  std::ostringstream csv;
  csv << "v,param,bound,skipped\n";
  for (const SweepRow& r : rows) {
    csv << fmt17(r.v) << ',' << r.param_text << ','
        << (r.bound ? fmt17(*r.bound) : std::string{}) << ','
        << (r.bound ? "false" : "true") << '\n';
  }
  if (o.output == "-") {
    out << csv.str();
  } else {
    std::ofstream f(o.output);
    if (!f) throw InadmissibleParamsError(fmt::format("cannot write '{}'", o.output));
    f << csv.str();
  }

  // The bound formulas are monotone: nondecreasing in V on both sides,
  // nondecreasing (hi) / nonincreasing (lo) in the second parameter.  A
  // violation beyond roundoff is an internal bug, not a usage error.
  const auto check = [&](const SweepRow& a, const SweepRow& b, bool increasing) {
    if (!a.bound || !b.bound) return true;
    const double tol = 1e-12 * std::max({1.0, std::abs(*a.bound), std::abs(*b.bound)});
    return increasing ? *b.bound >= *a.bound - tol : *b.bound <= *a.bound + tol;
  };
  std::vector<SweepRow> sorted = rows;
  std::stable_sort(sorted.begin(), sorted.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.v != b.v) return a.v < b.v;
    if (a.param.is_infinite() != b.param.is_infinite()) return b.param.is_infinite();
    if (a.param.is_infinite()) return false;
    return a.param.finite_value() < b.param.finite_value();
  });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const SweepRow& a = sorted[i - 1];
    const SweepRow& b = sorted[i];
    if (a.v == b.v && !check(a, b, hi)) {
      err << fmt::format("monotonicity violation at v={}: bound({}) -> bound({})\n", a.v,
                         a.param_text, b.param_text);
      return kExitInternal;
    }
    if (a.v != b.v) continue;
  }
  // Same-parameter columns must be nondecreasing in v on both sides.
  std::stable_sort(sorted.begin(), sorted.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.param_text != b.param_text) return a.param_text < b.param_text;
    return a.v < b.v;
  });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const SweepRow& a = sorted[i - 1];
    const SweepRow& b = sorted[i];
    if (a.param_text == b.param_text && !check(a, b, true)) {
      err << fmt::format("monotonicity violation at param={}: bound(v={}) -> bound(v={})\n",
                         a.param_text, a.v, b.v);
      return kExitInternal;
    }
  }
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact bounds on the gap between the arithmetic and geometric means"};
  app.require_subcommand(1);

  std::string eval_input;
  CLI::App* eval = app.add_subcommand("eval", "moment summary and gap enclosure of a law");
  eval->add_option("input", eval_input, "JSON text, bare value array, or a path to either")
      ->required();

  ExtremalOpts ex;
  CLI::App* extremal = app.add_subcommand("extremal", "gap-extremal two-point family member");
  extremal->add_option("--side", ex.side, "hi or lo")
      ->check(CLI::IsMember({"hi", "lo"}))
      ->capture_default_str();
  extremal->add_option("--v", ex.V, "target Var sqrt(X)")->required();
  double ex_e = 0.0;
  std::string ex_f;
  CLI::Option* opt_e = extremal->add_option("--e", ex_e, "target E (side hi)");
  CLI::Option* opt_f = extremal->add_option("--f", ex_f, "target F, INF allowed (side lo)");
  extremal->add_option("--u", ex.u, "bottom sqrt-atom anchor")->capture_default_str();
  extremal->add_option("--c", ex.c, "shift applied to both sqrt-atoms")->capture_default_str();

  VerifyOpts vo;
  CLI::App* verify = app.add_subcommand("verify", "randomized verification campaigns");
  verify->add_option("suite", vo.suite, "sandwich|prop2|prop3|lemvar|attain|all")
      ->required()
      ->check(CLI::IsMember({"sandwich", "prop2", "prop3", "lemvar", "attain", "all"}));
  verify->add_option("--trials", vo.trials, "trial count (0 = suite default)");
  CLI::Option* opt_seed = verify->add_option("--seed", vo.seed, "campaign seed");
  verify->add_option("--max-atoms", vo.max_atoms, "atoms per random law")->capture_default_str();
  verify->add_option("--value-cap", vo.value_cap, "value range upper end")->capture_default_str();
  verify->add_option("--zero-prob", vo.zero_prob, "chance of an atom at exactly 0")
      ->capture_default_str();
  verify->add_option("--v", vo.V, "V for prop2/attain")->capture_default_str();
  verify->add_option("--e", vo.E, "E for attain hi")->capture_default_str();
  verify->add_option("--f", vo.F, "F for prop2/attain lo, INF allowed")->capture_default_str();
  verify->add_option("--side", vo.side, "attain side")->check(CLI::IsMember({"hi", "lo"}));
  verify->add_option("--grid", vo.grid, "attain grid size")->capture_default_str();
  bool ci = false;
  verify->add_flag("--ci", ci, "CI mode: refuses to run without an explicit --seed");

  SweepOpts sw;
  CLI::App* sweep = app.add_subcommand("sweep", "bound tables over (V, E-or-F) grids");
  sweep->add_option("--side", sw.side, "hi or lo")
      ->check(CLI::IsMember({"hi", "lo"}))
      ->capture_default_str();
  sweep->add_option("--v", sw.v_list, "comma-separated V values")->required();
  sweep->add_option("--params", sw.param_list, "comma-separated E or F values, INF allowed")
      ->required();
  sweep->add_option("--output", sw.output, "CSV path ('-' for stdout)")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("amgm");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(eval_input, out);
    if (extremal->parsed()) {
      if (opt_e->count() > 0) ex.E = ex_e;
      if (opt_f->count() > 0) ex.F = ex_f;
      return cmd_extremal(ex, out);
    }
    if (verify->parsed()) {
      if (ci && opt_seed->count() == 0) {
        err << "--ci requires an explicit --seed\n";
        return kExitUsage;
      }
      return cmd_verify(vo, out);
    }
    if (sweep->parsed()) return cmd_sweep(sw, out, err);
  } catch (const SandwichViolationError& e) {
    err << "internal consistency violation: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid JSON input: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;  // unreachable: require_subcommand(1)
}

}  // namespace amgm::cli
