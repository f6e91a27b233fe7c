#include "varreg/regularizers.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace varreg {

std::optional<Point> Regularizer::sublevel_projection(const Point& x, double tau) const {
  const Point floor_point = minimizer(x.dim());
  const ExtReal floor_value = value(floor_point);
  if (floor_value.is_infinite() || floor_value.value() > tau) return std::nullopt;

  const Point start = prox(x, 0.0);
  const ExtReal start_value = value(start);
  if (start_value.is_finite() && start_value.value() <= tau) return start;
  if (floor_value.value() == tau) return floor_point;

  // R(prox(x, t)) is nonincreasing in t; find the multiplier that hits tau.
  auto feasible = [&](double t) {
    const ExtReal v = value(prox(x, t));
    return v.is_finite() && v.value() <= tau;
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int k = 0; k < 200 && !feasible(hi); ++k) {
    lo = hi;
    hi *= 2.0;
  }
  if (!feasible(hi)) return floor_point;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (feasible(mid) ? hi : lo) = mid;
  }
  return prox(x, hi);
}

// |x|^2

ExtReal SquaredNormRegularizer::value(const Point& x) const { return ExtReal(x.vec().squaredNorm()); }

std::optional<double> SquaredNormRegularizer::directional_derivative(const Point& x, const Point& v) const {
  require_same_dim(x, v, "sqnorm directional derivative");
  return 2.0 * x.vec().dot(v.vec());
}

Point SquaredNormRegularizer::prox(const Point& x, double t) const {
  return Point(Vector(x.vec() / (1.0 + 2.0 * t)));
}

Point SquaredNormRegularizer::minimizer(Eigen::Index dim) const { return Point::zeros(dim); }

std::optional<Point> SquaredNormRegularizer::sublevel_projection(const Point& x, double tau) const {
  if (tau < 0.0) return std::nullopt;
  const double norm = x.vec().norm();
  const double radius = std::sqrt(tau);
  if (norm <= radius) return x;
  Point p(Vector(x.vec() * (radius / norm)));
  // Rounding may leave |p|^2 a few ulps above tau.
  while (p.vec().squaredNorm() > tau) p = Point(Vector(p.vec() * (1.0 - 1e-15)));
  return p;
}

// sum |x_i - c|

ExtReal ShiftedL1Regularizer::value(const Point& x) const {
  return ExtReal((x.vec().array() - center_).abs().sum());
}

std::optional<double> ShiftedL1Regularizer::directional_derivative(const Point& x, const Point& v) const {
  require_same_dim(x, v, "l1 directional derivative");
  double d = 0.0;
  for (Eigen::Index i = 0; i < x.dim(); ++i) {
    const double s = x[i] - center_;
    d += s > 0.0 ? v[i] : s < 0.0 ? -v[i] : std::abs(v[i]);
  }
  return d;
}

Point ShiftedL1Regularizer::prox(const Point& x, double t) const {
  Vector p(x.dim());
  for (Eigen::Index i = 0; i < x.dim(); ++i) {
    const double s = x[i] - center_;
    p[i] = center_ + std::copysign(std::max(std::abs(s) - t, 0.0), s);
  }
  return Point(std::move(p));
}

Point ShiftedL1Regularizer::minimizer(Eigen::Index dim) const {
  return Point(Vector::Constant(dim, center_));
}

// box indicator

BoxIndicatorRegularizer::BoxIndicatorRegularizer(RegularizerPtr inner, double lo, double hi)
    : inner_(std::move(inner)), lo_(lo), hi_(hi) {
  if (!inner_) throw Error("box regularizer needs an inner regularizer");
  if (!(lo_ <= hi_)) throw Error(fmt::format("box bounds must satisfy lo <= hi, got [{}, {}]", lo_, hi_));
}

std::string BoxIndicatorRegularizer::id() const {
  return fmt::format("{}+box:{}:{}", inner_->id(), lo_, hi_);
}

ExtReal BoxIndicatorRegularizer::value(const Point& x) const {
  if ((x.vec().array() < lo_).any() || (x.vec().array() > hi_).any()) return ExtReal::infinity();
  return inner_->value(x);
}

std::optional<double> BoxIndicatorRegularizer::directional_derivative(const Point& x, const Point& v) const {
  require_same_dim(x, v, "box directional derivative");
  if (value(x).is_infinite()) return std::nullopt;
  for (Eigen::Index i = 0; i < x.dim(); ++i) {
    if ((x[i] == hi_ && v[i] > 0.0) || (x[i] == lo_ && v[i] < 0.0)) return std::nullopt;
  }
  return inner_->directional_derivative(x, v);
}

Point BoxIndicatorRegularizer::clamp(const Point& x) const {
  return Point(Vector(x.vec().array().max(lo_).min(hi_)));
}

Point BoxIndicatorRegularizer::prox(const Point& x, double t) const {
  // Exact for separable convex inner functionals.
  return clamp(inner_->prox(x, t));
}

Point BoxIndicatorRegularizer::minimizer(Eigen::Index dim) const {
  return clamp(inner_->minimizer(dim));
}

RegularizerPtr make_sqnorm() { return std::make_shared<SquaredNormRegularizer>(); }
RegularizerPtr make_l1() { return std::make_shared<ShiftedL1Regularizer>("l1", 0.0); }
RegularizerPtr make_abs_shift() { return std::make_shared<ShiftedL1Regularizer>("abs_shift", -1.0); }
RegularizerPtr make_boxed(RegularizerPtr inner, double lo, double hi) {
  return std::make_shared<BoxIndicatorRegularizer>(std::move(inner), lo, hi);
}

std::optional<double> one_sided_difference(const Regularizer& r, const Point& x, const Point& v, double h) {
  const ExtReal base = r.value(x);
  const ExtReal moved = r.value(Point(Vector(x.vec() + h * v.vec())));
  if (base.is_infinite() || moved.is_infinite()) return std::nullopt;
  return (moved.value() - base.value()) / h;
}

}  // namespace varreg
