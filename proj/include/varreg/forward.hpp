#pragma once

#include <functional>
#include <memory>
#include <string>

#include "varreg/point.hpp"

namespace varreg {

/// Forward operator F: X -> Y.
class ForwardOp {
 public:
  enum class Kind { identity, linear, scalar_map };

  static ForwardOp identity(Eigen::Index dim);
  static ForwardOp linear(Matrix a);
  /// A closed-form map R -> R with its derivative.
  static ForwardOp scalar_map(std::string name, std::function<double(double)> f, std::function<double(double)> df);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] Eigen::Index input_dim() const;
  [[nodiscard]] Eigen::Index output_dim() const;
  [[nodiscard]] bool is_linear() const { return kind_ != Kind::scalar_map; }

  [[nodiscard]] Point apply(const Point& x) const;
  /// A^T y; identity and linear kinds only.
  [[nodiscard]] Point adjoint_apply(const Point& y) const;
  /// DF(x)^T g, the chain rule for gradients of rho(F(x), y).
  [[nodiscard]] Vector jacobian_transpose(const Point& x, const Vector& g) const;
  /// Matrix of the operator (identity and linear kinds).
  [[nodiscard]] Matrix matrix() const;

 private:
  ForwardOp() = default;

  Kind kind_ = Kind::identity;
  std::string name_;
  Eigen::Index dim_ = 0;
  Matrix a_;
  std::function<double(double)> f_;
  std::function<double(double)> df_;
};

using ForwardPtr = std::shared_ptr<const ForwardOp>;

/// Named scalar maps for configuration files: "cube", "sin", "scale:<a>".
ForwardOp scalar_map_by_name(const std::string& name);

}  // namespace varreg
