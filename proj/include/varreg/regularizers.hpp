#pragma once

#include <memory>
#include <optional>
#include <string>

#include "varreg/ext_real.hpp"
#include "varreg/point.hpp"

namespace varreg {

/// Regularization functional R: X -> [0, inf]. All built-ins are convex and
/// coordinate-separable, which is what makes the generic sublevel projection
/// (prox with a bisected multiplier) exact.
class Regularizer {
 public:
  virtual ~Regularizer() = default;

  [[nodiscard]] virtual std::string id() const = 0;
  [[nodiscard]] virtual ExtReal value(const Point& x) const = 0;

  /// One-sided derivative lim_{t->0+} (R(x + t v) - R(x)) / t; empty when R
  /// is infinite on every neighborhood in direction v.
  [[nodiscard]] virtual std::optional<double> directional_derivative(const Point& x,
                                                                     const Point& v) const = 0;

  /// argmin_p t R(p) + 1/2 |p - x|^2, t >= 0.
  [[nodiscard]] virtual Point prox(const Point& x, double t) const = 0;

  /// The R-minimal point of dimension dim.
  [[nodiscard]] virtual Point minimizer(Eigen::Index dim) const = 0;

  /// Euclidean projection onto {R <= tau}; empty when that set is empty.
  [[nodiscard]] virtual std::optional<Point> sublevel_projection(const Point& x, double tau) const;
};

using RegularizerPtr = std::shared_ptr<const Regularizer>;

/// R(x) = |x|^2.
class SquaredNormRegularizer final : public Regularizer {
 public:
  [[nodiscard]] std::string id() const override { return "sqnorm"; }
  [[nodiscard]] ExtReal value(const Point& x) const override;
  [[nodiscard]] std::optional<double> directional_derivative(const Point& x, const Point& v) const override;
  [[nodiscard]] Point prox(const Point& x, double t) const override;
  [[nodiscard]] Point minimizer(Eigen::Index dim) const override;
  [[nodiscard]] std::optional<Point> sublevel_projection(const Point& x, double tau) const override;
};

/// R(x) = sum |x_i - c| with a fixed center c. center 0 is the l1 norm, center
/// -1 gives the shifted absolute value |x + 1|.
class ShiftedL1Regularizer final : public Regularizer {
 public:
  ShiftedL1Regularizer(std::string id, double center) : id_(std::move(id)), center_(center) {}

  [[nodiscard]] std::string id() const override { return id_; }
  [[nodiscard]] ExtReal value(const Point& x) const override;
  [[nodiscard]] std::optional<double> directional_derivative(const Point& x, const Point& v) const override;
  [[nodiscard]] Point prox(const Point& x, double t) const override;
  [[nodiscard]] Point minimizer(Eigen::Index dim) const override;

 private:
  std::string id_;
  double center_;
};

/// inner(x) on the box [lo, hi]^d, INFINITY off it.
class BoxIndicatorRegularizer final : public Regularizer {
 public:
  BoxIndicatorRegularizer(RegularizerPtr inner, double lo, double hi);

  [[nodiscard]] std::string id() const override;
  [[nodiscard]] ExtReal value(const Point& x) const override;
  [[nodiscard]] std::optional<double> directional_derivative(const Point& x, const Point& v) const override;
  [[nodiscard]] Point prox(const Point& x, double t) const override;
  [[nodiscard]] Point minimizer(Eigen::Index dim) const override;

 private:
  [[nodiscard]] Point clamp(const Point& x) const;

  RegularizerPtr inner_;
  double lo_;
  double hi_;
};

RegularizerPtr make_sqnorm();
RegularizerPtr make_l1();
RegularizerPtr make_abs_shift();
RegularizerPtr make_boxed(RegularizerPtr inner, double lo, double hi);

/// One-sided finite difference (R(x + h v) - R(x)) / h. Empty if R(x + h v) is infinite.
std::optional<double> one_sided_difference(const Regularizer& r, const Point& x, const Point& v, double h);

}  // namespace varreg
