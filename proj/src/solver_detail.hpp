#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "varreg/point.hpp"
#include "varreg/solvers.hpp"

namespace varreg::detail {

/// Scalar objective; +inf marks points outside the effective domain.
using ScalarFn = std::function<double(double)>;

struct ScalarConstraint {
  ScalarFn fn;
  double level = 0.0;
};

struct ScalarResult {
  std::vector<double> minimizers;  // ascending
  double best = 0.0;
  std::size_t evaluations = 0;
  double tolerance = 0.0;
  bool used_golden = false;
};

/// Global minimization of g over [lo, hi] (optionally subject to c(x) <= level)
/// by grid scan, boundary bisection and golden-section refinement per basin.
/// extra_feasible are points known to satisfy the constraint (added as candidates).
/// check_unbounded: raise UnboundedError if the best point sits on a bracket end
/// and g still decreases outward.
ScalarResult minimize_scalar(const ScalarFn& g, const std::optional<ScalarConstraint>& constraint,
                             const SolverConfig& cfg, const std::vector<double>& extra_feasible,
                             bool check_unbounded);

/// Golden-section search for a minimum of g on [a, b]; returns (x, g(x)).
std::pair<double, double> golden_section(const ScalarFn& g, double a, double b, double xtol, std::size_t& evals);

struct SmoothPart {
  std::function<double(const Vector&)> value;  // +inf outside the domain
  std::function<std::optional<Vector>(const Vector&)> gradient;
};

struct ProxResult {
  Vector x;
  double objective = 0.0;
  std::size_t iterations = 0;
  double last_step = 0.0;
};

/// Accelerated proximal gradient with backtracking and adaptive restart for
/// min f(x) + h(x), where prox(v, t) = argmin_p t h(p) + 1/2 |p - v|^2 and
/// h_value evaluates h. Stops when both the objective change is below ftol and
/// the step is below xtol.
ProxResult proximal_gradient(const SmoothPart& f, const std::function<Vector(const Vector&, double)>& prox,
                             const std::function<double(const Vector&)>& h_value, Vector x0,
                             const SolverConfig& cfg);

}  // namespace varreg::detail
