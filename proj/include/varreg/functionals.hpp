#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include "varreg/ext_real.hpp"
#include "varreg/point.hpp"

namespace varreg {

/// Raised when a Bregman distance is requested at a point where the
/// subdifferential of J is empty or multi-valued.
class UndefinedGradient : public Error {
 public:
  using Error::Error;
};

/// Axis-aligned box [lo, hi]^d.
struct Box {
  double lo = 0.0;
  double hi = 0.0;
};

/// A proper convex functional J. Values may be negative (the entropy has
/// minimum -1); an empty optional stands for +inf.
class ConvexFunctional {
 public:
  virtual ~ConvexFunctional() = default;

  [[nodiscard]] virtual std::string id() const = 0;
  [[nodiscard]] virtual bool strictly_convex() const = 0;
  [[nodiscard]] virtual bool quadratic() const { return false; }

  [[nodiscard]] virtual std::optional<double> value(const Point& y) const = 0;
  /// Empty where the subdifferential is not a singleton.
  [[nodiscard]] virtual std::optional<Vector> gradient(const Point& y) const = 0;
  /// Diagonal of the Hessian; every built-in J is separable.
  [[nodiscard]] virtual std::optional<Vector> hessian_diag(const Point& y) const = 0;

  /// Draws a point where value and gradient are both defined.
  [[nodiscard]] virtual Point sample(std::mt19937_64& rng, Eigen::Index dim) const;
  /// Region where J may fail to be strictly convex, used by the guided witness search.
  [[nodiscard]] virtual std::optional<Box> flat_region() const { return std::nullopt; }

  [[nodiscard]] bool in_domain(const Point& y) const { return value(y).has_value(); }
};

using FunctionalPtr = std::shared_ptr<const ConvexFunctional>;

/// J(x) = sum x_i^4.
class QuarticFunctional final : public ConvexFunctional {
 public:
  [[nodiscard]] std::string id() const override { return "quartic"; }
  [[nodiscard]] bool strictly_convex() const override { return true; }
  [[nodiscard]] std::optional<double> value(const Point& y) const override;
  [[nodiscard]] std::optional<Vector> gradient(const Point& y) const override;
  [[nodiscard]] std::optional<Vector> hessian_diag(const Point& y) const override;
};

/// J(x) = 1/2 |x|^2.
class SquaredFunctional final : public ConvexFunctional {
 public:
  [[nodiscard]] std::string id() const override { return "squared"; }
  [[nodiscard]] bool strictly_convex() const override { return true; }
  [[nodiscard]] bool quadratic() const override { return true; }
  [[nodiscard]] std::optional<double> value(const Point& y) const override;
  [[nodiscard]] std::optional<Vector> gradient(const Point& y) const override;
  [[nodiscard]] std::optional<Vector> hessian_diag(const Point& y) const override;
};

/// Negative entropy J(y) = sum (y_i log y_i - y_i) w_i on y >= 0 (0 log 0 = 0),
/// the quadrature of the integral over a grid with cell lengths w_i. An empty
/// weight vector means w_i = 1/dim (uniform grid on [0, 1]). The gradient
/// w_i log y_i exists only when every y_i > 0.
class EntropyFunctional final : public ConvexFunctional {
 public:
  EntropyFunctional() = default;
  explicit EntropyFunctional(Vector weights);

  [[nodiscard]] std::string id() const override { return "entropy"; }
  [[nodiscard]] bool strictly_convex() const override { return true; }
  [[nodiscard]] std::optional<double> value(const Point& y) const override;
  [[nodiscard]] std::optional<Vector> gradient(const Point& y) const override;
  [[nodiscard]] std::optional<Vector> hessian_diag(const Point& y) const override;
  [[nodiscard]] Point sample(std::mt19937_64& rng, Eigen::Index dim) const override;

  [[nodiscard]] Vector weights_for(Eigen::Index dim) const;

 private:
  Vector weights_;
};

/// J(x) = sum max(|x_i| - 1, 0)^2. Differentiable and convex, flat on [-1, 1]^d.
class HingeSquaredFunctional final : public ConvexFunctional {
 public:
  [[nodiscard]] std::string id() const override { return "hinge2"; }
  [[nodiscard]] bool strictly_convex() const override { return false; }
  [[nodiscard]] std::optional<double> value(const Point& y) const override;
  [[nodiscard]] std::optional<Vector> gradient(const Point& y) const override;
  [[nodiscard]] std::optional<Vector> hessian_diag(const Point& y) const override;
  [[nodiscard]] std::optional<Box> flat_region() const override { return Box{-1.0, 1.0}; }
};

/// D_J(z, y) = J(z) - J(y) - <grad J(y), z - y> without clamping. Requires
/// z and y in the domain and a gradient at y.
double bregman_signed(const ConvexFunctional& j, const Point& z, const Point& y);

/// Bregman distance D_J(z, y). INFINITY when z lies outside dom J; throws
/// UndefinedGradient when grad J(y) does not exist.
ExtReal bregman(const ConvexFunctional& j, const Point& z, const Point& y);

struct WitnessReport {
  bool found = false;
  std::optional<std::pair<Point, Point>> pair;
  double divergence = 0.0;
  std::size_t trials = 0;
  std::string note;
};

/// Searches for y1 != y2 (|y1 - y2| >= 1e-3) with D_J(y1, y2) <= 1e-12.
/// A guided phase samples flat_region() first when J declares one.
WitnessReport definiteness_probe(const ConvexFunctional& j, std::size_t trials, std::uint64_t seed,
                                 Eigen::Index dim = 1);

}  // namespace varreg
