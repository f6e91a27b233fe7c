#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace varreg {

/// A real step function on [0, 1]: value values[i] on [breakpoints[i], breakpoints[i+1]).
/// Always stored in canonical form (adjacent equal values merged), so equality
/// of functions is equality of representations. Integrals are exact finite sums.
class StepFunction {
 public:
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  static StepFunction constant(double value);
  /// Cell values on the uniform grid of [0, 1] with values.size() cells.
  static StepFunction uniform(std::span<const double> values);

  [[nodiscard]] const std::vector<double>& breakpoints() const { return breakpoints_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] std::size_t cells() const { return values_.size(); }
  [[nodiscard]] double cell_length(std::size_t i) const { return breakpoints_[i + 1] - breakpoints_[i]; }

  /// Value at x in [0, 1] (right-continuous; x = 1 maps to the last cell).
  [[nodiscard]] double at(double x) const;

  [[nodiscard]] double min_value() const;
  [[nodiscard]] double max_value() const;
  [[nodiscard]] bool nonnegative() const { return min_value() >= 0.0; }

  [[nodiscard]] double integral() const;

  [[nodiscard]] StepFunction map(const std::function<double(double)>& f) const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  void canonicalize();

  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Sorted union of both breakpoint sets.
std::vector<double> merged_breakpoints(const StepFunction& a, const StepFunction& b);

/// Cell values of f on a refinement grid of its own breakpoints.
std::vector<double> values_on_grid(const StepFunction& f, std::span<const double> grid);

/// Pointwise op(a, b) on the merged grid.
StepFunction combine(const StepFunction& a, const StepFunction& b, const std::function<double(double, double)>& op);

/// Exact integral of per-cell op(a_i, b_i) * length_i over the merged grid.
double integrate_pair(const StepFunction& a, const StepFunction& b,
                      const std::function<double(double, double)>& op);

StepFunction operator+(const StepFunction& a, const StepFunction& b);
StepFunction operator-(const StepFunction& a, const StepFunction& b);
StepFunction operator*(const StepFunction& a, const StepFunction& b);

double l1_norm(const StepFunction& f);

}  // namespace varreg
