#include "varreg/point.hpp"

#include <cmath>

#include <fmt/format.h>

#include "varreg/ext_real.hpp"

namespace varreg {

Point::Point(std::initializer_list<double> coords) : coords_(static_cast<Eigen::Index>(coords.size())) {
  Eigen::Index i = 0;
  for (double c : coords) coords_[i++] = c;
  validate();
}

Point::Point(Vector coords) : coords_(std::move(coords)) { validate(); }

Point::Point(std::span<const double> coords)
    : coords_(Eigen::Map<const Vector>(coords.data(), static_cast<Eigen::Index>(coords.size()))) {
  validate();
}

Point Point::zeros(Eigen::Index dim) { return Point(Vector::Zero(dim)); }

std::vector<double> Point::to_std() const { return {coords_.data(), coords_.data() + coords_.size()}; }

bool operator==(const Point& a, const Point& b) {
  return a.dim() == b.dim() && a.coords_ == b.coords_;
}

void Point::validate() const {
  if (coords_.size() == 0) throw Error("Point must have positive dimension");
  for (Eigen::Index i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i])) {
      throw Error(fmt::format("Point coordinate {} is not finite", i));
    }
  }
}

void require_same_dim(const Point& a, const Point& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(fmt::format("{}: dimension {} vs {}", what, a.dim(), b.dim()));
  }
}

double distance(const Point& a, const Point& b) {
  require_same_dim(a, b, "distance");
  return (a.vec() - b.vec()).norm();
}

}  // namespace varreg
