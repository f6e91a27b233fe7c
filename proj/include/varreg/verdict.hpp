#pragma once

#include <span>
#include <string>
#include <vector>

namespace varreg {

/// Finite-prefix stand-in for "a_n -> 0".
///
/// converged iff the last term is <= tol and, after a 25% burn-in, the
/// subsample of every second term is nonincreasing up to 10% relative slack
/// (plus an absolute floor of 1e-6 * tol for rounding noise). Infinite terms
/// force converged = false and set saw_infinity.
struct ConvergenceVerdict {
  bool converged = false;
  double terminal_value = 0.0;
  std::vector<double> trend;
  std::string criterion;
  bool saw_infinity = false;
};

ConvergenceVerdict assess_to_zero(std::vector<double> magnitudes, double tol, std::string criterion);

}  // namespace varreg
