#include "varreg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <fmt/format.h>

#include "solver_detail.hpp"

namespace varreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double finite_or_inf(const ExtReal& v) { return v.to_double(); }

/// rho(F(x), y) as a double; +inf outside the domain (including points where a
/// Bregman gradient does not exist).
double data_fit_value(const VariationalScheme& s, const Point& x, const Point& y) {
  try {
    return finite_or_inf(s.data_fit(x, y));
  } catch (const UndefinedGradient&) {
    return kInf;
  }
}

double reg_value(const VariationalScheme& s, const Point& x) { return finite_or_inf(s.regularizer().value(x)); }

Point scalar_point(double x) { return Point{x}; }

bool is_scalar(const VariationalScheme& s) { return s.forward().input_dim() == 1; }

void require_convex_pipeline(const VariationalScheme& s) {
  if (!s.forward().is_linear() || !s.discrepancy().convex_in_first()) {
    throw UnsupportedProblem(fmt::format(
        "multi-dimensional solve needs a linear forward operator and a discrepancy convex in its first slot "
        "(got '{}', '{}')",
        s.forward().name(), s.discrepancy().id()));
  }
}

detail::SmoothPart data_fit_part(const VariationalScheme& s, const Point& y) {
  detail::SmoothPart part;
  part.value = [&s, &y](const Vector& x) { return data_fit_value(s, Point(x), y); };
  part.gradient = [&s, &y](const Vector& x) -> std::optional<Vector> {
    const Point px(x);
    const Point z = s.forward().apply(px);
    const auto g = s.discrepancy().gradient_first(z, y);
    if (!g) return std::nullopt;
    return s.forward().jacobian_transpose(px, *g);
  };
  return part;
}

/// A start point where the data fit and its gradient exist.
Vector start_point(const VariationalScheme& s, const Point& y) {
  const Eigen::Index dim = s.forward().input_dim();
  std::vector<Vector> tries{s.regularizer().minimizer(dim).vec(), Vector::Constant(dim, 0.5), Vector::Ones(dim)};
  const auto part = data_fit_part(s, y);
  for (const auto& t : tries) {
    if (reg_value(s, Point(t)) < kInf && part.value(t) < kInf && part.gradient(t)) return t;
  }
  throw SolverError("no admissible start point for the proximal gradient solver");
}

SolveReport finish(const VariationalScheme& s, const Point& y, std::vector<Point> xs, SolveMethod method,
                   std::size_t iterations, double tol, const std::function<ExtReal(const Point&)>& objective) {
  SolveReport r;
  r.minimizers = std::move(xs);
  r.method = method;
  r.iterations = iterations;
  r.tolerance_achieved = tol;
  const Point& x = r.minimizers.front();
  r.objective = objective(x);
  r.discrepancy_at_min = s.data_fit(x, y);
  r.regularizer_at_min = s.regularizer().value(x);
  return r;
}

std::vector<Point> to_points(const std::vector<double>& xs) {
  std::vector<Point> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(scalar_point(x));
  return out;
}

/// Best candidate first: reorder so that minimizers.front() has the lowest objective.
void put_best_first(std::vector<double>& xs, const detail::ScalarFn& g) {
  auto it = std::min_element(xs.begin(), xs.end(), [&](double a, double b) { return g(a) < g(b); });
  std::rotate(xs.begin(), it, std::next(it));
}

void require_data_dim(const VariationalScheme& s, const Point& y) {
  if (y.dim() != s.forward().output_dim()) {
    throw DimensionMismatch(fmt::format("data has dimension {}, scheme expects {}", y.dim(), s.forward().output_dim()));
  }
}

}  // namespace

void SolverConfig::validate() const {
  if (!(xtol > 0.0) || !(ftol > 0.0)) throw Error("solver tolerances must be positive");
  if (grid_points < 3) throw Error("solver grid needs at least 3 points");
  if (!(bracket_lo < bracket_hi)) throw Error("solver bracket must satisfy lo < hi");
  if (max_iter == 0) throw Error("solver max_iter must be positive");
}

std::string to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::closed_form: return "closed_form";
    case SolveMethod::golden_section: return "golden_section";
    case SolveMethod::projected_gradient: return "projected_gradient";
    case SolveMethod::grid_refine: return "grid_refine";
    case SolveMethod::alpha_bisection: return "alpha_bisection";
  }
  return "unknown";
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skip: return "SKIP";
    case CheckStatus::refuted: return "REFUTED";
  }
  return "UNKNOWN";
}

Point tikhonov_closed_form(const Matrix& a, const Point& y, double alpha) {
  if (!(alpha > 0.0)) throw Error(fmt::format("alpha must be positive, got {}", alpha));
  if (a.rows() != y.dim()) {
    throw DimensionMismatch(fmt::format("A has {} rows but y has dimension {}", a.rows(), y.dim()));
  }
  const Matrix normal = a.transpose() * a + alpha * Matrix::Identity(a.cols(), a.cols());
  const Vector rhs = a.transpose() * y.vec();
  const Eigen::LLT<Matrix> llt(normal);
  Vector x = llt.solve(rhs);
  // One step of iterative refinement keeps the residual at rounding level.
  x += llt.solve(rhs - normal * x);
  return Point(std::move(x));
}

SolveReport tikhonov_solve(const VariationalScheme& s, const Point& y, double alpha, const SolverConfig& cfg) {
  if (!(alpha > 0.0)) throw Error(fmt::format("alpha must be positive, got {}", alpha));
  require_data_dim(s, y);
  cfg.validate();
  auto objective = [&](const Point& x) { return scheme_objective(s, x, y, alpha); };

  if (is_scalar(s)) {
    const detail::ScalarFn g = [&](double x) {
      const Point p = scalar_point(x);
      return data_fit_value(s, p, y) + alpha * reg_value(s, p);
    };
    auto res = detail::minimize_scalar(g, std::nullopt, cfg, {}, true);
    put_best_first(res.minimizers, g);
    return finish(s, y, to_points(res.minimizers), SolveMethod::golden_section, res.evaluations, res.tolerance,
                  objective);
  }

  require_convex_pipeline(s);
  const auto part = data_fit_part(s, y);
  const auto& reg = s.regularizer();
  auto res = detail::proximal_gradient(
      part, [&](const Vector& v, double t) { return reg.prox(Point(v), alpha * t).vec(); },
      [&](const Vector& x) { return alpha * reg_value(s, Point(x)); }, start_point(s, y), cfg);
  return finish(s, y, {Point(res.x)}, SolveMethod::projected_gradient, res.iterations, res.last_step, objective);
}

SolveReport ivanov_solve(const VariationalScheme& s, const Point& y, double tau, const SolverConfig& cfg) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw Error(fmt::format("tau must be finite and nonnegative, got {}", tau));
  require_data_dim(s, y);
  cfg.validate();
  const auto& reg = s.regularizer();
  const Eigen::Index dim = s.forward().input_dim();
  const Point r_min = reg.minimizer(dim);
  if (!(reg_value(s, r_min) <= tau)) {
    throw InfeasibleError(fmt::format("sublevel set {{R <= {}}} is empty", tau));
  }
  auto objective = [&](const Point& x) { return s.data_fit(x, y); };

  if (is_scalar(s)) {
    const detail::ScalarFn g = [&](double x) { return data_fit_value(s, scalar_point(x), y); };
    const detail::ScalarConstraint c{[&](double x) { return reg_value(s, scalar_point(x)); }, tau};
    auto res = detail::minimize_scalar(g, c, cfg, {r_min[0]}, false);
    put_best_first(res.minimizers, g);
    return finish(s, y, to_points(res.minimizers), SolveMethod::golden_section, res.evaluations, res.tolerance,
                  objective);
  }

  require_convex_pipeline(s);
  const auto part = data_fit_part(s, y);
  auto project = [&](const Vector& v, double) {
    const auto p = reg.sublevel_projection(Point(v), tau);
    if (!p) throw InfeasibleError("sublevel projection failed");
    return p->vec();
  };
  Vector x0 = start_point(s, y);
  if (!(reg_value(s, Point(x0)) <= tau)) x0 = r_min.vec();
  auto res = detail::proximal_gradient(part, project, [](const Vector&) { return 0.0; }, x0, cfg);
  return finish(s, y, {Point(res.x)}, SolveMethod::projected_gradient, res.iterations, res.last_step, objective);
}

namespace {

SolveReport morozov_direct_scalar(const VariationalScheme& s, const Point& y, double delta, const SolverConfig& cfg,
                                  std::size_t prior_iterations, const std::string& why) {
  const detail::ScalarFn g = [&](double x) { return reg_value(s, scalar_point(x)); };
  const detail::ScalarConstraint c{[&](double x) { return data_fit_value(s, scalar_point(x), y); }, delta};
  auto res = detail::minimize_scalar(g, c, cfg, {}, false);
  put_best_first(res.minimizers, g);
  auto report = finish(s, y, to_points(res.minimizers), SolveMethod::grid_refine,
                       prior_iterations + res.evaluations, res.tolerance,
                       [&](const Point& x) { return s.regularizer().value(x); });
  report.note = why;
  return report;
}

/// min over x of rho(F(x), y), the feasibility floor for Morozov.
double min_data_fit(const VariationalScheme& s, const Point& y, const SolverConfig& cfg) {
  if (is_scalar(s)) {
    const detail::ScalarFn g = [&](double x) { return data_fit_value(s, scalar_point(x), y); };
    return detail::minimize_scalar(g, std::nullopt, cfg, {}, false).best;
  }
  require_convex_pipeline(s);
  const auto part = data_fit_part(s, y);
  auto res = detail::proximal_gradient(
      part, [](const Vector& v, double) { return v; }, [](const Vector&) { return 0.0; }, start_point(s, y), cfg);
  return res.objective;
}

}  // namespace

SolveReport morozov_solve(const VariationalScheme& s, const Point& y, double delta, const SolverConfig& cfg) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw Error(fmt::format("delta must be finite and nonnegative, got {}", delta));
  }
  require_data_dim(s, y);
  cfg.validate();
  const double floor = min_data_fit(s, y, cfg);
  if (floor > delta + kMinimizerGap) {
    throw InfeasibleError(fmt::format("no x with rho(F(x), y) <= {} (minimum is {})", delta, floor));
  }
  auto objective = [&](const Point& x) { return s.regularizer().value(x); };

  const Point r_min = s.regularizer().minimizer(s.forward().input_dim());
  if (data_fit_value(s, r_min, y) <= delta) {
    auto report = finish(s, y, {r_min}, SolveMethod::alpha_bisection, 0, 0.0, objective);
    report.note = "R-minimal point is feasible";
    return report;
  }

  std::size_t iterations = 0;
  bool monotone = true;
  bool nonunique = false;
  std::vector<std::pair<double, double>> path;  // (alpha, rho)
  auto solve_at = [&](double alpha) {
    auto r = tikhonov_solve(s, y, alpha, cfg);
    iterations += r.iterations;
    if (!r.unique()) nonunique = true;
    const double rho = r.discrepancy_at_min.to_double();
    for (const auto& [a, p] : path) {
      if ((a < alpha && p > rho + 1e-9 * std::max(1.0, rho)) || (a > alpha && p + 1e-9 * std::max(1.0, p) < rho)) {
        monotone = false;
      }
    }
    path.emplace_back(alpha, rho);
    return std::pair{r.minimizer(), rho};
  };

  double a_lo = 1.0;
  double a_hi = 1.0;
  auto [x_lo, rho_lo] = solve_at(a_lo);
  if (rho_lo > delta) {
    a_hi = a_lo;
    while (rho_lo > delta && a_lo > 1e-14) {
      a_lo *= 0.5;
      std::tie(x_lo, rho_lo) = solve_at(a_lo);
    }
  } else {
    double rho_hi = rho_lo;
    while (rho_hi <= delta && a_hi < 1e14) {
      a_hi *= 2.0;
      rho_hi = solve_at(a_hi).second;
    }
    if (rho_hi <= delta) {
      auto report = finish(s, y, {x_lo}, SolveMethod::alpha_bisection, iterations, 0.0, objective);
      report.note = "alpha bracket exhausted";
      return report;
    }
  }

  const double target_tol = 1e-12 * std::max(1.0, delta);
  for (int k = 0; k < 200 && rho_lo <= delta && delta - rho_lo > target_tol; ++k) {
    const double mid = std::sqrt(a_lo * a_hi);
    if (!(mid > a_lo && mid < a_hi) || a_hi / a_lo - 1.0 < 1e-15) break;
    auto [x_mid, rho_mid] = solve_at(mid);
    if (rho_mid <= delta) {
      a_lo = mid;
      x_lo = std::move(x_mid);
      rho_lo = rho_mid;
    } else {
      a_hi = mid;
    }
  }

  const bool active = rho_lo <= delta && delta - rho_lo <= 1e-6 * std::max(1.0, delta);
  if (!active || !monotone || nonunique) {
    const std::string why = !monotone ? "alpha -> rho path not monotone"
                            : nonunique ? "non-unique Tikhonov minimizers on the alpha path"
                                        : "alpha -> rho path jumps over delta";
    if (is_scalar(s)) return morozov_direct_scalar(s, y, delta, cfg, iterations, why + "; direct grid fallback");
    auto report = finish(s, y, {x_lo}, SolveMethod::alpha_bisection, iterations, a_hi / a_lo - 1.0, objective);
    report.note = why;
    return report;
  }
  auto report = finish(s, y, {x_lo}, SolveMethod::alpha_bisection, iterations, a_hi / a_lo - 1.0, objective);
  report.note = fmt::format("alpha = {:.17g}", a_lo);
  return report;
}

bool CrossCheckReport::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.status == CheckStatus::fail; });
}

namespace {

CheckRow compare_row(std::string name, const Point& from, const SolveReport& to, double tol, std::string level) {
  CheckRow row;
  row.name = std::move(name);
  row.from = from;
  row.to = to.minimizer();
  row.distance = distance(from, to.minimizer());
  if (!to.unique()) {
    row.status = CheckStatus::fail;
    row.reason = fmt::format("{}: re-solve returned {} minimizers", level, to.minimizers.size());
  } else {
    row.status = row.distance <= tol ? CheckStatus::pass : CheckStatus::fail;
    row.reason = fmt::format("{}: |dx| = {:.3e}", level, row.distance);
  }
  return row;
}

CheckRow skip_row(std::string name, const SolveReport& r) {
  CheckRow row;
  row.name = std::move(name);
  row.status = CheckStatus::skip;
  row.reason = fmt::format("minimizer not unique ({} found); the relation requires uniqueness", r.minimizers.size());
  return row;
}

CheckRow error_row(std::string name, const std::exception& e) {
  CheckRow row;
  row.name = std::move(name);
  row.status = CheckStatus::skip;
  row.reason = fmt::format("solver error: {}", e.what());
  return row;
}

}  // namespace

CrossCheckReport cross_check_thm23(const VariationalScheme& s, const Point& y, const CrossCheckParams& params,
                                   const SolverConfig& cfg) {
  CrossCheckReport report;
  const double tol = params.agreement_tol;

  try {
    const auto iv = ivanov_solve(s, y, params.tau, cfg);
    if (!iv.unique()) {
      report.rows.push_back(skip_row("(i) ivanov->morozov", iv));
    } else {
      const double delta = iv.discrepancy_at_min.value();
      report.rows.push_back(compare_row("(i) ivanov->morozov", iv.minimizer(), morozov_solve(s, y, delta, cfg), tol,
                                        fmt::format("delta = {:.17g}", delta)));
    }
  } catch (const SolverError& e) {
    report.rows.push_back(error_row("(i) ivanov->morozov", e));
  }

  try {
    const auto mo = morozov_solve(s, y, params.delta, cfg);
    if (!mo.unique()) {
      report.rows.push_back(skip_row("(ii) morozov->ivanov", mo));
    } else {
      const double tau = mo.regularizer_at_min.value();
      report.rows.push_back(compare_row("(ii) morozov->ivanov", mo.minimizer(), ivanov_solve(s, y, tau, cfg), tol,
                                        fmt::format("tau = {:.17g}", tau)));
    }
  } catch (const SolverError& e) {
    report.rows.push_back(error_row("(ii) morozov->ivanov", e));
  }

  try {
    const auto tk = tikhonov_solve(s, y, params.alpha, cfg);
    if (!tk.unique()) {
      report.rows.push_back(skip_row("(iii) tikhonov->ivanov", tk));
      report.rows.push_back(skip_row("(iii) tikhonov->morozov", tk));
    } else {
      const double tau = tk.regularizer_at_min.value();
      const double delta = tk.discrepancy_at_min.value();
      report.rows.push_back(compare_row("(iii) tikhonov->ivanov", tk.minimizer(), ivanov_solve(s, y, tau, cfg), tol,
                                        fmt::format("tau = {:.17g}", tau)));
      report.rows.push_back(compare_row("(iii) tikhonov->morozov", tk.minimizer(), morozov_solve(s, y, delta, cfg),
                                        tol, fmt::format("delta = {:.17g}", delta)));
    }
  } catch (const SolverError& e) {
    report.rows.push_back(error_row("(iii) tikhonov", e));
  }

  if (!params.converse_alphas.empty()) {
    CheckRow row;
    row.name = "converse ivanov->tikhonov";
    try {
      const auto iv = ivanov_solve(s, y, params.tau, cfg);
      const Point& x_tau = iv.minimizer();
      double min_gap = kInf;
      for (double alpha : params.converse_alphas) {
        const auto tk = tikhonov_solve(s, y, alpha, cfg);
        const double gap = scheme_objective(s, x_tau, y, alpha).value() - tk.objective.value();
        min_gap = std::min(min_gap, gap);
      }
      row.from = x_tau;
      row.distance = min_gap;
      if (min_gap >= 0.01) {
        row.status = CheckStatus::refuted;
        row.reason = fmt::format(
            "x_tau is not a Tikhonov minimizer for any swept alpha (smallest objective gap {:.6f})", min_gap);
      } else {
        row.status = CheckStatus::pass;
        row.reason = fmt::format("x_tau is (near) Tikhonov-optimal for some swept alpha (gap {:.3e})", min_gap);
      }
    } catch (const SolverError& e) {
      row = error_row(row.name, e);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

double data_fit_directional_derivative(const VariationalScheme& s, const Point& y, const Point& x, const Point& v,
                                       double h) {
  require_same_dim(x, v, "directional derivative");
  const Point z = s.forward().apply(x);
  if (const auto g = s.discrepancy().gradient_first(z, y)) {
    return s.forward().jacobian_transpose(x, *g).dot(v.vec());
  }
  const double f0 = data_fit_value(s, x, y);
  const double f1 = data_fit_value(s, Point(Vector(x.vec() + h * v.vec())), y);
  return (f1 - f0) / h;
}

bool Prop25Report::all_hold() const {
  return std::all_of(rows.begin(), rows.end(), [](const Prop25Row& r) { return r.holds; });
}

Prop25Report prop25_check(const VariationalScheme& s, const Point& y, double alpha, const Point& x_star,
                          const std::vector<Point>& directions) {
  if (!(alpha > 0.0)) throw Error(fmt::format("alpha must be positive, got {}", alpha));
  Prop25Report report;
  for (const auto& v : directions) {
    Prop25Row row{v};
    row.rhs = data_fit_directional_derivative(s, y, x_star, v);
    const auto r_dir = s.regularizer().directional_derivative(x_star, v);
    // R'(x*; v) = +inf makes the left side -inf: the inequality holds trivially.
    row.lhs = r_dir ? -alpha * *r_dir : -kInf;
    row.holds = row.lhs <= row.rhs + 1e-4;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<ParetoRow> pareto_trace(const VariationalScheme& s, const Point& y, const std::vector<double>& alphas,
                                    const SolverConfig& cfg) {
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (!(alphas[k] > 0.0)) throw Error("pareto_trace: alphas must be positive");
    if (k > 0 && alphas[k] < alphas[k - 1]) throw Error("pareto_trace: alphas must be sorted ascending");
  }
  std::vector<ParetoRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    ParetoRow row;
    row.alpha = alpha;
    try {
      const auto r = tikhonov_solve(s, y, alpha, cfg);
      row.x = r.minimizer();
      row.rho = r.discrepancy_at_min.to_double();
      row.reg = r.regularizer_at_min.to_double();
    } catch (const SolverError& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool pareto_no_crossing(const std::vector<ParetoRow>& rows, double slack) {
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (!rows[k].error.empty() || !rows[k - 1].error.empty()) continue;
    if (rows[k - 1].rho > rows[k].rho + slack || rows[k - 1].reg < rows[k].reg - slack) return false;
  }
  return true;
}

}  // namespace varreg
