#pragma once

#include <memory>
#include <optional>
#include <string>

#include "varreg/ext_real.hpp"
#include "varreg/functionals.hpp"
#include "varreg/point.hpp"

namespace varreg {

/// Discrepancy rho: Y x Y -> [0, inf] with rho(y, y) = 0. The first argument
/// is the reconstructed data F(x), the second the measured data.
class Discrepancy {
 public:
  virtual ~Discrepancy() = default;

  [[nodiscard]] virtual std::string id() const = 0;
  [[nodiscard]] virtual bool symmetric() const = 0;
  /// Whether z -> rho(z, y) is convex for every y; gates the multi-dimensional solvers.
  [[nodiscard]] virtual bool convex_in_first() const = 0;

  [[nodiscard]] virtual ExtReal eval(const Point& z, const Point& y) const = 0;

  /// Pointwise approximation of z in dom rho(., y).
  [[nodiscard]] virtual bool in_domain_first(const Point& z) const { return z.dim() > 0; }

  /// Gradient of z -> rho(z, y); empty where it does not exist.
  [[nodiscard]] virtual std::optional<Vector> gradient_first(const Point& z, const Point& y) const = 0;
};

using DiscrepancyPtr = std::shared_ptr<const Discrepancy>;

/// |z - y|_2^p.
class PowerNormDiscrepancy final : public Discrepancy {
 public:
  explicit PowerNormDiscrepancy(double p);

  [[nodiscard]] std::string id() const override;
  [[nodiscard]] bool symmetric() const override { return true; }
  [[nodiscard]] bool convex_in_first() const override { return p_ >= 1.0; }
  [[nodiscard]] ExtReal eval(const Point& z, const Point& y) const override;
  [[nodiscard]] std::optional<Vector> gradient_first(const Point& z, const Point& y) const override;

  [[nodiscard]] double power() const { return p_; }

 private:
  double p_;
};

/// rho_1(z, y) = D_J(z, y): measured data in the second Bregman slot.
class BregmanFirstDiscrepancy final : public Discrepancy {
 public:
  explicit BregmanFirstDiscrepancy(FunctionalPtr j);

  [[nodiscard]] std::string id() const override { return "bregman1:" + j_->id(); }
  [[nodiscard]] bool symmetric() const override { return j_->quadratic(); }
  [[nodiscard]] bool convex_in_first() const override { return true; }
  [[nodiscard]] ExtReal eval(const Point& z, const Point& y) const override;
  [[nodiscard]] bool in_domain_first(const Point& z) const override;
  [[nodiscard]] std::optional<Vector> gradient_first(const Point& z, const Point& y) const override;

  [[nodiscard]] const ConvexFunctional& functional() const { return *j_; }

 private:
  FunctionalPtr j_;
};

/// rho_2(z, y) = D_J(y, z): measured data in the first Bregman slot.
class BregmanSecondDiscrepancy final : public Discrepancy {
 public:
  explicit BregmanSecondDiscrepancy(FunctionalPtr j);

  [[nodiscard]] std::string id() const override { return "bregman2:" + j_->id(); }
  [[nodiscard]] bool symmetric() const override { return j_->quadratic(); }
  [[nodiscard]] bool convex_in_first() const override { return j_->quadratic(); }
  [[nodiscard]] ExtReal eval(const Point& z, const Point& y) const override;
  [[nodiscard]] bool in_domain_first(const Point& z) const override;
  [[nodiscard]] std::optional<Vector> gradient_first(const Point& z, const Point& y) const override;

  [[nodiscard]] const ConvexFunctional& functional() const { return *j_; }

 private:
  FunctionalPtr j_;
};

/// On R^2: 0 if z and y differ in at most one coordinate, 1 otherwise.
class CoordinateMismatchDiscrepancy final : public Discrepancy {
 public:
  [[nodiscard]] std::string id() const override { return "mismatch2d"; }
  [[nodiscard]] bool symmetric() const override { return true; }
  [[nodiscard]] bool convex_in_first() const override { return false; }
  [[nodiscard]] ExtReal eval(const Point& z, const Point& y) const override;
  [[nodiscard]] std::optional<Vector> gradient_first(const Point&, const Point&) const override {
    return std::nullopt;
  }
};

/// Kullback-Leibler divergence D_KL(z, y) where a Point holds the cell values
/// of a step function on the uniform grid of [0, 1] with dim cells.
class KullbackLeiblerDiscrepancy final : public Discrepancy {
 public:
  [[nodiscard]] std::string id() const override { return "kl"; }
  [[nodiscard]] bool symmetric() const override { return false; }
  [[nodiscard]] bool convex_in_first() const override { return true; }
  [[nodiscard]] ExtReal eval(const Point& z, const Point& y) const override;
  [[nodiscard]] bool in_domain_first(const Point& z) const override;
  [[nodiscard]] std::optional<Vector> gradient_first(const Point& z, const Point& y) const override;
};

DiscrepancyPtr make_sqnorm_discrepancy();
DiscrepancyPtr make_power_norm(double p);
DiscrepancyPtr make_bregman_rho1(FunctionalPtr j);
DiscrepancyPtr make_bregman_rho2(FunctionalPtr j);
DiscrepancyPtr make_coordinate_mismatch();
DiscrepancyPtr make_kl_discrepancy();

/// Searches the probes for a pair z != y with rho(z, y) = 0. Separation of
/// points is not required of a discrepancy; this only reports it.
struct SeparationReport {
  bool separates = true;
  std::optional<std::pair<Point, Point>> counterexample;
};
SeparationReport separates_points_probe(const Discrepancy& d, std::span<const Point> probes);

/// Stored witness that mismatch2d violates every quasi-triangle inequality:
/// rho(a, c) = 1 while rho(a, b) + rho(b, c) = 0.
struct TriangleWitness {
  Point a, b, c;
  ExtReal direct, via_middle;
};
TriangleWitness mismatch_triangle_witness();

}  // namespace varreg
