#include "cli_app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "varreg/convergence.hpp"
#include "varreg/kl.hpp"
#include "varreg/registry.hpp"
#include "varreg/solvers.hpp"

#ifndef VARREG_PRESET_DIR
#define VARREG_PRESET_DIR "presets"
#endif

namespace varreg::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every key any subcommand understands. Keys a subcommand does not use are
// ignored by it, so one preset can drive several subcommands.
const std::set<std::string> kTopLevelKeys = {
    "description", "scheme", "solver",   "y",          "problem",         "parameter",     "seed",
    "alphas",      "xrange", "samples",  "tau",        "delta",           "alpha",         "converse_alphas",
    "agreement_tol", "experiment", "x_exact", "noise", "rule", "alpha_min", "x_star", "discrepancy_tol",
    "reg_tol",     "tol",    "n_list",   "eps",        "mode",            "z_constants"};

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(fmt::format("{} must be a JSON object", where));
  for (const auto& [key, _] : obj.items()) {
    if (!known.contains(key)) throw ConfigError(fmt::format("unknown key '{}' in {}", key, where));
  }
}

double number(const json& obj, const std::string& key, std::optional<double> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(fmt::format("missing required key '{}'", key));
  }
  if (!obj.at(key).is_number()) throw ConfigError(fmt::format("'{}' must be a number", key));
  return obj.at(key).get<double>();
}

std::vector<double> numbers(const json& obj, const std::string& key, std::optional<std::vector<double>> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(fmt::format("missing required key '{}'", key));
  }
  const json& arr = obj.at(key);
  if (!arr.is_array()) throw ConfigError(fmt::format("'{}' must be an array of numbers", key));
  std::vector<double> out;
  for (const auto& v : arr) {
    if (!v.is_number()) throw ConfigError(fmt::format("'{}' must be an array of numbers", key));
    out.push_back(v.get<double>());
  }
  return out;
}

std::string text(const json& obj, const std::string& key, std::optional<std::string> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(fmt::format("missing required key '{}'", key));
  }
  if (!obj.at(key).is_string()) throw ConfigError(fmt::format("'{}' must be a string", key));
  return obj.at(key).get<std::string>();
}

Point point(const json& obj, const std::string& key, std::optional<Point> fallback = std::nullopt) {
  if (!obj.contains(key) && fallback) return *fallback;
  const auto v = numbers(obj, key);
  if (v.empty()) throw ConfigError(fmt::format("'{}' must not be empty", key));
  return Point(std::span<const double>(v));
}

ForwardPtr parse_forward(const json& f) {
  const std::string kind = text(f, "kind");
  if (kind == "identity") {
    reject_unknown(f, {"kind", "dim"}, "scheme.forward");
    const double dim = number(f, "dim", 1.0);
    if (dim < 1 || dim != std::floor(dim)) throw ConfigError("scheme.forward.dim must be a positive integer");
    return std::make_shared<ForwardOp>(ForwardOp::identity(static_cast<Eigen::Index>(dim)));
  }
  if (kind == "linear") {
    reject_unknown(f, {"kind", "matrix"}, "scheme.forward");
    const json& rows = f.at("matrix");
    if (!rows.is_array() || rows.empty()) throw ConfigError("scheme.forward.matrix must be a nonempty array of rows");
    const auto cols = rows.front().size();
    Matrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != cols) throw ConfigError("scheme.forward.matrix rows must agree");
      for (std::size_t k = 0; k < cols; ++k) {
        if (!rows[i][k].is_number()) throw ConfigError("scheme.forward.matrix entries must be numbers");
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k].get<double>();
      }
    }
    return std::make_shared<ForwardOp>(ForwardOp::linear(a));
  }
  if (kind == "scalar_map") {
    reject_unknown(f, {"kind", "name"}, "scheme.forward");
    return std::make_shared<ForwardOp>(scalar_map_by_name(text(f, "name")));
  }
  throw ConfigError(fmt::format("unknown forward kind '{}'", kind));
}

VariationalScheme parse_scheme(const json& cfg) {
  if (!cfg.contains("scheme")) throw ConfigError("missing required key 'scheme'");
  const json& s = cfg.at("scheme");
  if (s.is_string()) {
    if (s.get<std::string>() == "example24") return example24_scheme();
    throw ConfigError(fmt::format("unknown named scheme '{}'", s.get<std::string>()));
  }
  reject_unknown(s, {"forward", "discrepancy", "regularizer"}, "scheme");
  if (!s.contains("forward")) throw ConfigError("missing required key 'scheme.forward'");
  return VariationalScheme(parse_forward(s.at("forward")), discrepancy_by_id(text(s, "discrepancy")),
                           regularizer_by_id(text(s, "regularizer")));
}

SolverConfig parse_solver(const json& cfg) {
  SolverConfig sc;
  if (!cfg.contains("solver")) return sc;
  const json& s = cfg.at("solver");
  reject_unknown(s, {"xtol", "ftol", "grid_points", "bracket", "max_iter"}, "solver");
  sc.xtol = number(s, "xtol", sc.xtol);
  sc.ftol = number(s, "ftol", sc.ftol);
  const double gp = number(s, "grid_points", static_cast<double>(sc.grid_points));
  const double mi = number(s, "max_iter", static_cast<double>(sc.max_iter));
  if (gp < 2 || gp != std::floor(gp)) throw ConfigError("solver.grid_points must be an integer >= 2");
  if (mi < 1 || mi != std::floor(mi)) throw ConfigError("solver.max_iter must be a positive integer");
  sc.grid_points = static_cast<std::size_t>(gp);
  sc.max_iter = static_cast<std::size_t>(mi);
  const auto bracket = numbers(s, "bracket", std::vector<double>{sc.bracket_lo, sc.bracket_hi});
  if (bracket.size() != 2) throw ConfigError("solver.bracket must be [lo, hi]");
  sc.bracket_lo = bracket[0];
  sc.bracket_hi = bracket[1];
  try {
    sc.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return sc;
}

double positive(const json& cfg, const std::string& key, std::optional<double> fallback = std::nullopt) {
  const double v = number(cfg, key, fallback);
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(fmt::format("'{}' must be positive", key));
  return v;
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "INFINITY" : "-INFINITY";
  return fmt::format("{:.17g}", v);
}

std::string num(const ExtReal& v) { return v.is_infinite() ? "INFINITY" : num(v.value()); }

json to_json(const ExtReal& v) { return v.is_infinite() ? json("INFINITY") : json(v.value()); }

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error(fmt::format("cannot open '{}' for writing", tmp.string()));
    f << content;
    if (!f.flush()) throw std::runtime_error(fmt::format("write to '{}' failed", tmp.string()));
  }
  fs::rename(tmp, path);
}

json load_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config '{}'", path.string()));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("malformed JSON in '{}': {}", path.string(), e.what()));
  }
}

struct Context {
  json cfg;
  fs::path out_dir;
  std::uint64_t seed = 0;
  std::ostream& out;
};

// Each command splits into a parse step (config errors, exit 1) returning the
// run step (runtime errors, exit 2; failed properties, exit 3).
using Runner = std::function<int(Context&)>;

Runner parse_solve(const json& cfg, const std::optional<std::string>& problem_flag,
                   const std::optional<double>& param_flag) {
  auto scheme = std::make_shared<VariationalScheme>(parse_scheme(cfg));
  const SolverConfig sc = parse_solver(cfg);
  const Point y = point(cfg, "y");
  const std::string problem = problem_flag ? *problem_flag : text(cfg, "problem");
  if (problem != "tikhonov" && problem != "ivanov" && problem != "morozov") {
    throw ConfigError(fmt::format("problem must be tikhonov, ivanov or morozov, got '{}'", problem));
  }
  const double param = param_flag ? *param_flag : number(cfg, "parameter");
  if (!std::isfinite(param) || param < 0.0 || (problem != "ivanov" && param == 0.0)) {
    throw ConfigError(fmt::format("invalid parameter {} for {}", param, problem));
  }

  return [=](Context& ctx) {
    SolveReport r;
    if (problem == "tikhonov") {
      r = tikhonov_solve(*scheme, y, param, sc);
    } else if (problem == "ivanov") {
      r = ivanov_solve(*scheme, y, param, sc);
    } else {
      r = morozov_solve(*scheme, y, param, sc);
    }

    json report = {{"problem", problem},
                   {"parameter", param},
                   {"method", to_string(r.method)},
                   {"iterations", r.iterations},
                   {"tolerance_achieved", r.tolerance_achieved},
                   {"note", r.note},
                   {"objective", to_json(r.objective)},
                   {"discrepancy_at_min", to_json(r.discrepancy_at_min)},
                   {"regularizer_at_min", to_json(r.regularizer_at_min)},
                   {"minimizers", json::array()}};
    std::string csv = "problem,parameter,method,index,rho,R";
    for (Eigen::Index k = 0; k < r.minimizer().dim(); ++k) csv += fmt::format(",x_{}", k);
    csv += "\n";
    for (std::size_t i = 0; i < r.minimizers.size(); ++i) {
      const Point& x = r.minimizers[i];
      report["minimizers"].push_back(x.to_std());
      csv += fmt::format("{},{},{},{},{},{}", problem, num(param), to_string(r.method), i,
                         num(scheme->data_fit(x, y)), num(scheme->regularizer().value(x)));
      for (double c : x.to_std()) csv += "," + num(c);
      csv += "\n";
    }
    write_atomic(ctx.out_dir / "solve.json", report.dump(2) + "\n");
    write_atomic(ctx.out_dir / "solve.csv", csv);
    ctx.out << fmt::format("{} ({}): x = {}, objective {}\n", problem, to_string(r.method),
                           num(r.minimizer()[0]), num(r.objective));
    return kOk;
  };
}

Runner parse_figure1(const json& cfg) {
  auto scheme = std::make_shared<VariationalScheme>(cfg.contains("scheme") ? parse_scheme(cfg) : example24_scheme());
  if (scheme->forward().input_dim() != 1) throw ConfigError("figure1 needs a 1-D scheme");
  const Point y = point(cfg, "y", Point{1.0});
  const auto alphas = numbers(cfg, "alphas", std::vector<double>{0.5, 1.0, 1.5});
  for (double a : alphas) {
    if (!(a > 0.0)) throw ConfigError("alphas must be positive");
  }
  const auto xrange = numbers(cfg, "xrange", std::vector<double>{-2.0, 2.0});
  if (xrange.size() != 2 || !(xrange[0] < xrange[1])) throw ConfigError("xrange must be [lo, hi] with lo < hi");
  const double samples = number(cfg, "samples", 401.0);
  if (samples < 2 || samples != std::floor(samples)) throw ConfigError("samples must be an integer >= 2");
  const auto n = static_cast<std::size_t>(samples);

  return [=](Context& ctx) {
    std::string csv = "x,rho,R";
    for (double a : alphas) csv += fmt::format(",T_{:g}", a);
    csv += "\n";
    for (std::size_t i = 0; i < n; ++i) {
      const double x = xrange[0] + (xrange[1] - xrange[0]) * static_cast<double>(i) / static_cast<double>(n - 1);
      const Point p{x};
      const ExtReal rho = scheme->data_fit(p, y);
      const ExtReal reg = scheme->regularizer().value(p);
      csv += fmt::format("{},{},{}", num(x), num(rho), num(reg));
      for (double a : alphas) csv += "," + num(rho + a * reg);
      csv += "\n";
    }
    write_atomic(ctx.out_dir / "figure1.csv", csv);
    ctx.out << fmt::format("figure1: {} samples written\n", n);
    return kOk;
  };
}

Runner parse_crosscheck(const json& cfg) {
  auto scheme = std::make_shared<VariationalScheme>(parse_scheme(cfg));
  const SolverConfig sc = parse_solver(cfg);
  const Point y = point(cfg, "y");
  CrossCheckParams params;
  params.tau = number(cfg, "tau", params.tau);
  params.delta = positive(cfg, "delta", params.delta);
  params.alpha = positive(cfg, "alpha", params.alpha);
  params.converse_alphas = numbers(cfg, "converse_alphas", std::vector<double>{});
  params.agreement_tol = positive(cfg, "agreement_tol", params.agreement_tol);
  if (!(params.tau >= 0.0)) throw ConfigError("'tau' must be nonnegative");

  return [=](Context& ctx) {
    const auto rep = cross_check_thm23(*scheme, y, params, sc);
    std::string csv = "check,status,distance,reason\n";
    for (const auto& row : rep.rows) {
      std::string reason = row.reason;
      std::replace(reason.begin(), reason.end(), ',', ';');
      csv += fmt::format("{},{},{},{}\n", row.name, to_string(row.status), num(row.distance), reason);
      ctx.out << fmt::format("{:<28} {:<8} {}\n", row.name, to_string(row.status), row.reason);
    }
    write_atomic(ctx.out_dir / "crosscheck.csv", csv);
    return rep.any_failed() ? kPropertyFailure : kOk;
  };
}

std::vector<double> parse_noise(const json& cfg) {
  if (!cfg.contains("noise")) throw ConfigError("missing required key 'noise'");
  const json& nz = cfg.at("noise");
  reject_unknown(nz, {"levels", "halvings"}, "noise");
  if (nz.contains("levels") == nz.contains("halvings")) throw ConfigError("noise needs exactly one of levels, halvings");
  std::vector<double> levels;
  if (nz.contains("levels")) {
    levels = numbers(nz, "levels");
  } else {
    const double k = number(nz, "halvings");
    if (k < 1 || k > 1000 || k != std::floor(k)) throw ConfigError("noise.halvings must be an integer in [1, 1000]");
    for (int i = 1; i <= static_cast<int>(k); ++i) levels.push_back(std::ldexp(1.0, -i));
  }
  if (levels.empty()) throw ConfigError("noise levels must not be empty");
  for (double d : levels) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw ConfigError("noise levels must be finite and nonnegative");
  }
  return levels;
}

Runner parse_converge(const json& cfg) {
  auto scheme = std::make_shared<VariationalScheme>(parse_scheme(cfg));
  const SolverConfig sc = parse_solver(cfg);
  const Point x_exact = point(cfg, "x_exact");
  const auto levels = parse_noise(cfg);
  const std::string experiment = text(cfg, "experiment", std::string("r3"));

  if (experiment == "r2") {
    const double alpha = positive(cfg, "alpha");
    const double tol = positive(cfg, "tol", kDefaultConvergenceTol);
    return [=](Context& ctx) {
      const Point y = scheme->forward().apply(x_exact);
      const Vector e = noise_direction(y.dim(), ctx.seed);
      std::vector<Point> terms;
      for (double d : levels) terms.emplace_back(Vector(y.vec() + d * e));
      const DataSequence seq(std::move(terms), y);
      const auto rep = run_r2_experiment(*scheme, seq, alpha, sc, tol);
      std::string csv = "n,delta,distance\n";
      for (std::size_t i = 0; i < levels.size(); ++i) {
        csv += fmt::format("{},{},{}\n", i + 1, num(levels[i]), num(rep.distances[i]));
      }
      write_atomic(ctx.out_dir / "converge.csv", csv);
      ctx.out << fmt::format("r2: terminal distance {}, {}\n", num(rep.verdict.terminal_value),
                             rep.pass() ? "converged" : "not converged");
      return rep.pass() ? kOk : kPropertyFailure;
    };
  }
  if (experiment != "r3") throw ConfigError(fmt::format("experiment must be r2 or r3, got '{}'", experiment));

  ParameterRule rule;
  const std::string rule_name = text(cfg, "rule", std::string("sqrt"));
  if (rule_name == "constant") {
    rule.kind = ParameterRule::Kind::constant;
    rule.constant = positive(cfg, "alpha", rule.constant);
  } else if (rule_name != "sqrt") {
    throw ConfigError(fmt::format("rule must be sqrt or constant, got '{}'", rule_name));
  }
  rule.alpha_min = positive(cfg, "alpha_min", rule.alpha_min);
  R3Options opts;
  opts.discrepancy_tol = positive(cfg, "discrepancy_tol", opts.discrepancy_tol);
  opts.reg_tol = positive(cfg, "reg_tol", opts.reg_tol);
  if (cfg.contains("x_star")) opts.x_star = point(cfg, "x_star");

  return [=](Context& ctx) mutable {
    opts.seed = ctx.seed;
    const auto rep = run_r3_experiment(*scheme, x_exact, levels, rule, sc, opts);
    std::string csv = "n,delta,alpha,rho,R,err\n";
    for (const auto& row : rep.rows) {
      csv += fmt::format("{},{},{},{},{},{}\n", row.n, num(row.delta), num(row.alpha), num(row.rho), num(row.reg),
                         num(row.err));
    }
    write_atomic(ctx.out_dir / "converge.csv", csv);
    ctx.out << fmt::format("r3 ({}): final rho {}, |R(x_n) - R(x*)| = {}, {}\n", rule.name(),
                           num(rep.discrepancy.terminal_value), num(rep.final_gap), rep.pass ? "PASS" : "FAIL");
    return rep.pass ? kOk : kPropertyFailure;
  };
}

Runner parse_kl(const json& cfg) {
  std::vector<long> n_list;
  for (double v : numbers(cfg, "n_list", std::vector<double>{10, 100, 1000, 10000, 1000000})) {
    if (v < 3 || v != std::floor(v) || v > 1e15) throw ConfigError("n_list entries must be integers >= 3");
    n_list.push_back(static_cast<long>(v));
  }
  if (n_list.empty()) throw ConfigError("n_list must not be empty");
  const double eps = positive(cfg, "eps", 1.0);
  const std::string mode = text(cfg, "mode", std::string("counterexample"));

  if (mode == "counterexample") {
    return [=](Context& ctx) {
      const auto rep = counterexample_report(n_list, eps);
      std::string csv = "n,eps,dkl_exact,dkl_closed_form,l1\n";
      for (const auto& r : rep.rows) {
        csv += fmt::format("{},{},{},{},{}\n", r.n, num(r.eps), num(r.dkl_exact), num(r.dkl_closed_form), num(r.l1));
      }
      write_atomic(ctx.out_dir / "kl.csv", csv);
      ctx.out << fmt::format("kl counterexample: max |exact - closed form| = {}, L1 decreasing: {}, D_KL increasing: {}\n",
                             num(rep.max_abs_error), rep.l1_decreasing, rep.dkl_increasing);
      return rep.all_pass() ? kOk : kPropertyFailure;
    };
  }
  if (mode != "rho2_probe") throw ConfigError(fmt::format("mode must be counterexample or rho2_probe, got '{}'", mode));

  const auto z_constants = numbers(cfg, "z_constants", std::vector<double>{2.0});
  for (double z : z_constants) {
    if (!(z > 0.0)) throw ConfigError("z_constants must be positive");
  }
  const double tol = positive(cfg, "tol", kDefaultConvergenceTol);
  return [=](Context& ctx) {
    const StepFunction y = StepFunction::constant(eps);
    std::vector<StepFunction> seq, zs;
    for (long n : n_list) seq.push_back(counterexample_sequence(n, eps));
    for (double z : z_constants) zs.push_back(StepFunction::constant(z));
    const auto rep = rho2_kl_equivalence_probe(y, seq, zs, tol);
    std::string csv = "n,dkl";
    for (std::size_t k = 0; k < zs.size(); ++k) csv += fmt::format(",pairing_{}", k);
    csv += "\n";
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      csv += fmt::format("{},{}", n_list[i], num(rep.dkl.trend[i]));
      for (const auto& p : rep.pairings) csv += "," + num(p.trend[i]);
      csv += "\n";
    }
    write_atomic(ctx.out_dir / "kl_rho2.csv", csv);
    ctx.out << fmt::format("rho2 probe: D_KL(y_n, y) -> 0: {}, pairings -> 0: {}, implication {}\n",
                           rep.dkl.converged, rep.pairings_converge,
                           rep.vacuous ? "vacuous" : (rep.implication_holds ? "holds" : "violated"));
    return rep.implication_holds ? kOk : kPropertyFailure;
  };
}

std::optional<std::uint64_t> parse_seed_text(const std::string& s, const std::string& where) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(fmt::format("{} must be a nonnegative integer, got '{}'", where, s));
  }
  return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational regularization toolkit: Tikhonov, Ivanov and Morozov solvers and convergence experiments"};
  app.require_subcommand(1);

  std::string config_path, preset, out_dir = ".";
  std::optional<std::string> seed_flag;
  std::optional<std::string> problem_flag;
  std::optional<double> param_flag;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--preset", preset, "Name of a bundled preset");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed_flag, "Seed, overrides VARREG_SEED and the config");

  auto* solve = app.add_subcommand("solve", "Solve a Tikhonov, Ivanov or Morozov problem")->fallthrough();
  solve->add_option("--problem", problem_flag, "tikhonov, ivanov or morozov");
  solve->add_option("--param", param_flag, "alpha, tau or delta");
  auto* figure1 = app.add_subcommand("figure1", "Sample rho, R and T_alpha on an x range")->fallthrough();
  auto* crosscheck = app.add_subcommand("crosscheck", "Cross-relations between the three problems")->fallthrough();
  auto* converge = app.add_subcommand("converge", "Stability and convergence experiments")->fallthrough();
  auto* kl = app.add_subcommand("kl", "Kullback-Leibler counterexample and probes")->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  Runner runner;
  Context ctx{json::object(), fs::path(out_dir), 0, out};
  try {
    if (!preset.empty()) ctx.cfg = load_json_file(fs::path(VARREG_PRESET_DIR) / (preset + ".json"));
    if (!config_path.empty()) {
      const json overlay = load_json_file(config_path);
      if (!overlay.is_object()) throw ConfigError("config must be a JSON object");
      ctx.cfg.merge_patch(overlay);
    }
    reject_unknown(ctx.cfg, kTopLevelKeys, "config");

    if (ctx.cfg.contains("seed")) {
      const json& s = ctx.cfg.at("seed");
      if (!s.is_number_unsigned()) throw ConfigError("'seed' must be a nonnegative integer");
      ctx.seed = s.get<std::uint64_t>();
    } else {
      ctx.seed = R3Options{}.seed;
    }
    if (const char* env = std::getenv("VARREG_SEED"); env != nullptr && *env != '\0') {
      ctx.seed = *parse_seed_text(env, "VARREG_SEED");
    }
    if (seed_flag) ctx.seed = *parse_seed_text(*seed_flag, "--seed");

    if (solve->parsed()) runner = parse_solve(ctx.cfg, problem_flag, param_flag);
    if (figure1->parsed()) runner = parse_figure1(ctx.cfg);
    if (crosscheck->parsed()) runner = parse_crosscheck(ctx.cfg);
    if (converge->parsed()) runner = parse_converge(ctx.cfg);
    if (kl->parsed()) runner = parse_kl(ctx.cfg);
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    return runner(ctx);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}

}  // namespace varreg::cli
