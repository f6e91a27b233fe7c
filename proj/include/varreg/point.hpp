#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace varreg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A finite-dimensional real vector with finite coordinates.
class Point {
 public:
  Point() = default;
  Point(std::initializer_list<double> coords);
  explicit Point(Vector coords);
  explicit Point(std::span<const double> coords);

  static Point zeros(Eigen::Index dim);

  [[nodiscard]] Eigen::Index dim() const { return coords_.size(); }
  [[nodiscard]] const Vector& vec() const { return coords_; }
  [[nodiscard]] double operator[](Eigen::Index i) const { return coords_[i]; }
  [[nodiscard]] std::vector<double> to_std() const;

  friend bool operator==(const Point& a, const Point& b);

 private:
  void validate() const;
  Vector coords_;
};

/// Throws DimensionMismatch unless a.dim() == b.dim().
void require_same_dim(const Point& a, const Point& b, const char* what);

double distance(const Point& a, const Point& b);

}  // namespace varreg
