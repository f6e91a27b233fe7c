#include "varreg/discrepancies.hpp"

#include <cmath>

#include <fmt/format.h>

#include "varreg/kl.hpp"

namespace varreg {

// |z - y|^p

PowerNormDiscrepancy::PowerNormDiscrepancy(double p) : p_(p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(fmt::format("pnorm needs p > 0, got {}", p));
}

std::string PowerNormDiscrepancy::id() const {
  return p_ == 2.0 ? std::string("sqnorm") : fmt::format("pnorm:{}", p_);
}

ExtReal PowerNormDiscrepancy::eval(const Point& z, const Point& y) const {
  require_same_dim(z, y, "pnorm");
  const Vector diff = z.vec() - y.vec();
  if (p_ == 2.0) return ExtReal(diff.squaredNorm());
  return ExtReal(std::pow(diff.norm(), p_));
}

std::optional<Vector> PowerNormDiscrepancy::gradient_first(const Point& z, const Point& y) const {
  require_same_dim(z, y, "pnorm gradient");
  const Vector diff = z.vec() - y.vec();
  if (p_ == 2.0) return Vector(2.0 * diff);
  const double n = diff.norm();
  if (n == 0.0) {
    if (p_ > 1.0) return Vector(Vector::Zero(z.dim()));
    return std::nullopt;
  }
  return Vector(p_ * std::pow(n, p_ - 2.0) * diff);
}

// rho_1

BregmanFirstDiscrepancy::BregmanFirstDiscrepancy(FunctionalPtr j) : j_(std::move(j)) {
  if (!j_) throw Error("bregman1 needs a functional");
}

ExtReal BregmanFirstDiscrepancy::eval(const Point& z, const Point& y) const { return bregman(*j_, z, y); }

bool BregmanFirstDiscrepancy::in_domain_first(const Point& z) const {
  return j_->in_domain(z) && j_->gradient(z).has_value();
}

std::optional<Vector> BregmanFirstDiscrepancy::gradient_first(const Point& z, const Point& y) const {
  const auto gz = j_->gradient(z);
  const auto gy = j_->gradient(y);
  if (!gz || !gy) return std::nullopt;
  return Vector(*gz - *gy);
}

// rho_2

BregmanSecondDiscrepancy::BregmanSecondDiscrepancy(FunctionalPtr j) : j_(std::move(j)) {
  if (!j_) throw Error("bregman2 needs a functional");
}

ExtReal BregmanSecondDiscrepancy::eval(const Point& z, const Point& y) const { return bregman(*j_, y, z); }

bool BregmanSecondDiscrepancy::in_domain_first(const Point& z) const {
  return j_->in_domain(z) && j_->gradient(z).has_value();
}

std::optional<Vector> BregmanSecondDiscrepancy::gradient_first(const Point& z, const Point& y) const {
  // d/dz [J(y) - J(z) - <grad J(z), y - z>] = -H(z) (y - z).
  const auto h = j_->hessian_diag(z);
  if (!h) return std::nullopt;
  return Vector(-(h->array() * (y.vec() - z.vec()).array()));
}

// mismatch2d

ExtReal CoordinateMismatchDiscrepancy::eval(const Point& z, const Point& y) const {
  if (z.dim() != 2 || y.dim() != 2) {
    throw DimensionMismatch(fmt::format("mismatch2d is defined on R^2 only, got dims {} and {}", z.dim(), y.dim()));
  }
  const int differing = (z[0] != y[0] ? 1 : 0) + (z[1] != y[1] ? 1 : 0);
  return ExtReal(differing <= 1 ? 0.0 : 1.0);
}

// kl

namespace {

StepFunction uniform_step(const Point& p) {
  const auto n = static_cast<std::size_t>(p.dim());
  std::vector<double> breaks(n + 1);
  for (std::size_t i = 0; i <= n; ++i) breaks[i] = static_cast<double>(i) / static_cast<double>(n);
  breaks.back() = 1.0;
  return StepFunction(std::move(breaks), p.to_std());
}

}  // namespace

ExtReal KullbackLeiblerDiscrepancy::eval(const Point& z, const Point& y) const {
  require_same_dim(z, y, "kl");
  return kl_divergence(uniform_step(z), uniform_step(y));
}

bool KullbackLeiblerDiscrepancy::in_domain_first(const Point& z) const {
  return (z.vec().array() >= 0.0).all();
}

std::optional<Vector> KullbackLeiblerDiscrepancy::gradient_first(const Point& z, const Point& y) const {
  require_same_dim(z, y, "kl gradient");
  if ((z.vec().array() <= 0.0).any() || (y.vec().array() <= 0.0).any()) return std::nullopt;
  const double w = 1.0 / static_cast<double>(z.dim());
  return Vector(w * (z.vec().array().log() - y.vec().array().log()));
}

DiscrepancyPtr make_sqnorm_discrepancy() { return std::make_shared<PowerNormDiscrepancy>(2.0); }
DiscrepancyPtr make_power_norm(double p) { return std::make_shared<PowerNormDiscrepancy>(p); }
DiscrepancyPtr make_bregman_rho1(FunctionalPtr j) { return std::make_shared<BregmanFirstDiscrepancy>(std::move(j)); }
DiscrepancyPtr make_bregman_rho2(FunctionalPtr j) { return std::make_shared<BregmanSecondDiscrepancy>(std::move(j)); }
DiscrepancyPtr make_coordinate_mismatch() { return std::make_shared<CoordinateMismatchDiscrepancy>(); }
DiscrepancyPtr make_kl_discrepancy() { return std::make_shared<KullbackLeiblerDiscrepancy>(); }

SeparationReport separates_points_probe(const Discrepancy& d, std::span<const Point> probes) {
  SeparationReport report;
  for (const auto& z : probes) {
    for (const auto& y : probes) {
      if (z == y) continue;
      if (d.eval(z, y) == ExtReal(0.0)) {
        report.separates = false;
        report.counterexample.emplace(z, y);
        return report;
      }
    }
  }
  return report;
}

TriangleWitness mismatch_triangle_witness() {
  const CoordinateMismatchDiscrepancy rho;
  TriangleWitness w{Point{0.0, 0.0}, Point{1.0, 0.0}, Point{1.0, 1.0}, ExtReal(), ExtReal()};
  w.direct = rho.eval(w.a, w.c);
  w.via_middle = rho.eval(w.a, w.b) + rho.eval(w.b, w.c);
  return w;
}

}  // namespace varreg
