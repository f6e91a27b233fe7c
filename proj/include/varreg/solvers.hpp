#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "varreg/ext_real.hpp"
#include "varreg/point.hpp"
#include "varreg/scheme.hpp"

namespace varreg {

class SolverError : public Error {
 public:
  using Error::Error;
};

/// The objective keeps decreasing past the end of the 1-D bracket.
class UnboundedError : public SolverError {
 public:
  using SolverError::SolverError;
};

class InfeasibleError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// The scheme is outside what the solvers handle (non-convex multi-dimensional problems).
class UnsupportedProblem : public SolverError {
 public:
  using SolverError::SolverError;
};

struct SolverConfig {
  double xtol = 1e-9;
  double ftol = 1e-12;
  std::size_t grid_points = 4001;
  double bracket_lo = -10.0;
  double bracket_hi = 10.0;
  std::size_t max_iter = 100000;

  void validate() const;
};

enum class SolveMethod { closed_form, golden_section, projected_gradient, grid_refine, alpha_bisection };

std::string to_string(SolveMethod m);

/// Objective values within this gap of the best are reported as minimizers.
inline constexpr double kMinimizerGap = 1e-8;

struct SolveReport {
  std::vector<Point> minimizers;
  ExtReal objective;
  ExtReal discrepancy_at_min;
  ExtReal regularizer_at_min;
  SolveMethod method = SolveMethod::golden_section;
  std::size_t iterations = 0;
  double tolerance_achieved = 0.0;
  std::string note;

  [[nodiscard]] bool unique() const { return minimizers.size() == 1; }
  [[nodiscard]] const Point& minimizer() const { return minimizers.front(); }
};

/// Solves (A^T A + alpha I) x = A^T y, the minimizer of |Ax - y|^2 + alpha |x|^2.
Point tikhonov_closed_form(const Matrix& a, const Point& y, double alpha);

/// argmin_x rho(F(x), y) + alpha R(x).
/// 1-D: grid (cfg.grid_points) plus golden-section refinement of every basin,
/// all minimizers within kMinimizerGap reported. Multi-D: accelerated proximal
/// gradient, which needs a linear F and a discrepancy convex in its first slot.
SolveReport tikhonov_solve(const VariationalScheme& s, const Point& y, double alpha, const SolverConfig& cfg = {});

/// argmin rho(F(x), y) subject to R(x) <= tau.
SolveReport ivanov_solve(const VariationalScheme& s, const Point& y, double tau, const SolverConfig& cfg = {});

/// argmin R(x) subject to rho(F(x), y) <= delta. Bisects alpha over Tikhonov
/// subproblems; in 1-D falls back to a direct constrained grid search when the
/// alpha -> rho(F(x_alpha), y) path jumps over delta or is not monotone.
SolveReport morozov_solve(const VariationalScheme& s, const Point& y, double delta, const SolverConfig& cfg = {});

enum class CheckStatus { pass, fail, skip, refuted };
std::string to_string(CheckStatus s);

struct CheckRow {
  std::string name;
  CheckStatus status = CheckStatus::skip;
  std::string reason;
  std::optional<Point> from;
  std::optional<Point> to;
  double distance = 0.0;
};

struct CrossCheckParams {
  double tau = 1.0;
  double delta = 1.0;
  double alpha = 1.0;
  /// When nonempty, also confirms that the Ivanov minimizer at tau is not a
  /// Tikhonov minimizer for any of these alphas (the converse of (iii)).
  std::vector<double> converse_alphas;
  double agreement_tol = 1e-6;
};

struct CrossCheckReport {
  std::vector<CheckRow> rows;
  [[nodiscard]] bool any_failed() const;
};

/// Cross-relations between the three problems:
/// (i) unique Ivanov minimizer at tau solves Morozov at delta = rho(F(x_tau), y);
/// (ii) unique Morozov minimizer at delta solves Ivanov at tau = R(x_delta);
/// (iii) unique Tikhonov minimizer at alpha solves both constrained problems at the induced levels.
CrossCheckReport cross_check_thm23(const VariationalScheme& s, const Point& y, const CrossCheckParams& params,
                                   const SolverConfig& cfg = {});

/// f'(x; v) for f(x) = rho(F(x), y): gradient-based where the discrepancy has
/// a gradient, otherwise the one-sided difference with step h.
double data_fit_directional_derivative(const VariationalScheme& s, const Point& y, const Point& x, const Point& v,
                                       double h = 1e-6);

struct Prop25Row {
  Point direction;
  double lhs = 0.0;  ///< -alpha R'(x*; v)
  double rhs = 0.0;  ///< f'(x*; v)
  bool holds = false;
};

struct Prop25Report {
  std::vector<Prop25Row> rows;
  [[nodiscard]] bool all_hold() const;
};

/// Necessary condition for a local Tikhonov minimizer: -alpha R'(x*; v) <= f'(x*; v) + 1e-4.
Prop25Report prop25_check(const VariationalScheme& s, const Point& y, double alpha, const Point& x_star,
                          const std::vector<Point>& directions);

struct ParetoRow {
  double alpha = 0.0;
  double rho = 0.0;
  double reg = 0.0;
  std::optional<Point> x;
  std::string error;
};

/// (rho, R) at the Tikhonov minimizer for each alpha (positive, sorted ascending).
std::vector<ParetoRow> pareto_trace(const VariationalScheme& s, const Point& y, const std::vector<double>& alphas,
                                    const SolverConfig& cfg = {});

/// Weighted-sum ordering: rho nondecreasing and R nonincreasing in alpha, up to slack.
bool pareto_no_crossing(const std::vector<ParetoRow>& rows, double slack = 1e-8);

}  // namespace varreg
