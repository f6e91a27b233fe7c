#include "varreg/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include <fmt/format.h>

#include "varreg/ext_real.hpp"

namespace varreg {

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2 || values_.size() + 1 != breakpoints_.size()) {
    throw Error(fmt::format("step function needs n+1 breakpoints for n values, got {} and {}",
                            breakpoints_.size(), values_.size()));
  }
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw Error("step function breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) throw Error("step function breakpoints must increase strictly");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error("step function values must be finite");
  }
  canonicalize();
}

StepFunction StepFunction::constant(double value) { return StepFunction({0.0, 1.0}, {value}); }

StepFunction StepFunction::uniform(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) throw Error("uniform step function needs at least one cell");
  std::vector<double> breaks(n + 1);
  for (std::size_t i = 0; i <= n; ++i) breaks[i] = static_cast<double>(i) / static_cast<double>(n);
  breaks.back() = 1.0;
  return StepFunction(std::move(breaks), {values.begin(), values.end()});
}

void StepFunction::canonicalize() {
  std::vector<double> b{breakpoints_.front()};
  std::vector<double> v;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!v.empty() && v.back() == values_[i]) {
      b.back() = breakpoints_[i + 1];
    } else {
      v.push_back(values_[i]);
      b.push_back(breakpoints_[i + 1]);
    }
  }
  breakpoints_ = std::move(b);
  values_ = std::move(v);
}

double StepFunction::at(double x) const {
  if (x < 0.0 || x > 1.0) throw Error(fmt::format("step function evaluated outside [0,1] at {}", x));
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  auto idx = static_cast<std::size_t>(std::distance(breakpoints_.begin(), it));
  if (idx == 0) idx = 1;
  return values_[std::min(idx - 1, values_.size() - 1)];
}

double StepFunction::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double StepFunction::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

double StepFunction::integral() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) sum += values_[i] * cell_length(i);
  return sum;
}

StepFunction StepFunction::map(const std::function<double(double)>& f) const {
  std::vector<double> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), f);
  return StepFunction(breakpoints_, std::move(v));
}

std::vector<double> merged_breakpoints(const StepFunction& a, const StepFunction& b) {
  std::vector<double> out;
  out.reserve(a.breakpoints().size() + b.breakpoints().size());
  std::set_union(a.breakpoints().begin(), a.breakpoints().end(), b.breakpoints().begin(), b.breakpoints().end(),
                 std::back_inserter(out));
  return out;
}

std::vector<double> values_on_grid(const StepFunction& f, std::span<const double> grid) {
  std::vector<double> out;
  out.reserve(grid.size() - 1);
  std::size_t cell = 0;
  const auto& bp = f.breakpoints();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    while (bp[cell + 1] <= grid[i]) ++cell;
    if (grid[i + 1] > bp[cell + 1]) throw Error("grid is not a refinement of the step function breakpoints");
    out.push_back(f.values()[cell]);
  }
  return out;
}

StepFunction combine(const StepFunction& a, const StepFunction& b, const std::function<double(double, double)>& op) {
  auto grid = merged_breakpoints(a, b);
  const auto va = values_on_grid(a, grid);
  const auto vb = values_on_grid(b, grid);
  std::vector<double> v(va.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(va[i], vb[i]);
  return StepFunction(std::move(grid), std::move(v));
}

double integrate_pair(const StepFunction& a, const StepFunction& b,
                      const std::function<double(double, double)>& op) {
  const auto grid = merged_breakpoints(a, b);
  const auto va = values_on_grid(a, grid);
  const auto vb = values_on_grid(b, grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) sum += op(va[i], vb[i]) * (grid[i + 1] - grid[i]);
  return sum;
}

StepFunction operator+(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}
StepFunction operator-(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}
StepFunction operator*(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](double x, double y) { return x * y; });
}

double l1_norm(const StepFunction& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.cells(); ++i) sum += std::abs(f.values()[i]) * f.cell_length(i);
  return sum;
}

}  // namespace varreg
