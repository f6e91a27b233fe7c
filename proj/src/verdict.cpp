#include "varreg/verdict.hpp"

#include <cmath>

#include "varreg/ext_real.hpp"

namespace varreg {

ConvergenceVerdict assess_to_zero(std::vector<double> magnitudes, double tol, std::string criterion) {
  if (magnitudes.empty()) throw Error("convergence verdict needs a nonempty sequence");
  if (!(tol > 0.0)) throw Error("convergence tolerance must be positive");
  ConvergenceVerdict v;
  v.criterion = std::move(criterion);
  v.trend = std::move(magnitudes);
  v.terminal_value = v.trend.back();
  for (double m : v.trend) {
    if (std::isnan(m) || m < 0.0) throw Error("convergence verdict expects nonnegative magnitudes");
    if (std::isinf(m)) v.saw_infinity = true;
  }
  if (v.saw_infinity) return v;

  bool monotone = true;
  const std::size_t burn = v.trend.size() / 4;
  for (std::size_t k = burn; k + 2 < v.trend.size(); k += 2) {
    if (v.trend[k + 2] > 1.1 * v.trend[k] + 1e-6 * tol) {
      monotone = false;
      break;
    }
  }
  v.converged = v.terminal_value <= tol && monotone;
  return v;
}

}  // namespace varreg
