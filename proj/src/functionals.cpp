#include "varreg/functionals.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace varreg {

Point ConvexFunctional::sample(std::mt19937_64& rng, Eigen::Index dim) const {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = u(rng);
  return Point(std::move(v));
}

// quartic

std::optional<double> QuarticFunctional::value(const Point& y) const {
  return y.vec().array().pow(4).sum();
}

std::optional<Vector> QuarticFunctional::gradient(const Point& y) const {
  return Vector(4.0 * y.vec().array().cube());
}

std::optional<Vector> QuarticFunctional::hessian_diag(const Point& y) const {
  return Vector(12.0 * y.vec().array().square());
}

// squared

std::optional<double> SquaredFunctional::value(const Point& y) const {
  return 0.5 * y.vec().squaredNorm();
}

std::optional<Vector> SquaredFunctional::gradient(const Point& y) const { return y.vec(); }

std::optional<Vector> SquaredFunctional::hessian_diag(const Point& y) const {
  return Vector::Ones(y.dim());
}

// entropy

EntropyFunctional::EntropyFunctional(Vector weights) : weights_(std::move(weights)) {
  if ((weights_.array() <= 0.0).any()) throw Error("entropy weights must be positive");
}

Vector EntropyFunctional::weights_for(Eigen::Index dim) const {
  if (weights_.size() == 0) return Vector::Constant(dim, 1.0 / static_cast<double>(dim));
  if (weights_.size() != dim) {
    throw DimensionMismatch(fmt::format("entropy: {} weights for dimension {}", weights_.size(), dim));
  }
  return weights_;
}

std::optional<double> EntropyFunctional::value(const Point& y) const {
  const Vector w = weights_for(y.dim());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < y.dim(); ++i) {
    const double v = y[i];
    if (v < 0.0) return std::nullopt;
    sum += (v > 0.0 ? v * std::log(v) - v : 0.0) * w[i];
  }
  return sum;
}

std::optional<Vector> EntropyFunctional::gradient(const Point& y) const {
  if ((y.vec().array() <= 0.0).any()) return std::nullopt;
  return Vector(weights_for(y.dim()).array() * y.vec().array().log());
}

std::optional<Vector> EntropyFunctional::hessian_diag(const Point& y) const {
  if ((y.vec().array() <= 0.0).any()) return std::nullopt;
  return Vector(weights_for(y.dim()).array() / y.vec().array());
}

Point EntropyFunctional::sample(std::mt19937_64& rng, Eigen::Index dim) const {
  std::uniform_real_distribution<double> u(0.05, 4.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = u(rng);
  return Point(std::move(v));
}

// hinge squared

std::optional<double> HingeSquaredFunctional::value(const Point& y) const {
  return (y.vec().array().abs() - 1.0).max(0.0).square().sum();
}

std::optional<Vector> HingeSquaredFunctional::gradient(const Point& y) const {
  const auto a = y.vec().array();
  return Vector(2.0 * (a.abs() - 1.0).max(0.0) * a.sign());
}

std::optional<Vector> HingeSquaredFunctional::hessian_diag(const Point& y) const {
  // The second derivative jumps at |x| = 1; the one-sided value 0 is used there.
  return Vector((y.vec().array().abs() > 1.0).cast<double>() * 2.0);
}

// Bregman distance

double bregman_signed(const ConvexFunctional& j, const Point& z, const Point& y) {
  require_same_dim(z, y, "bregman");
  const auto grad = j.gradient(y);
  if (!grad) throw UndefinedGradient("subdifferential not single-valued at y");
  const auto jz = j.value(z);
  const auto jy = j.value(y);
  if (!jz || !jy) throw Error("bregman_signed: argument outside dom J");
  return *jz - *jy - grad->dot(z.vec() - y.vec());
}

ExtReal bregman(const ConvexFunctional& j, const Point& z, const Point& y) {
  require_same_dim(z, y, "bregman");
  const auto grad = j.gradient(y);
  if (!grad) throw UndefinedGradient("subdifferential not single-valued at y");
  const auto jz = j.value(z);
  if (!jz) return ExtReal::infinity();
  const double jy = *j.value(y);
  const double d = *jz - jy - grad->dot(z.vec() - y.vec());
  // Cancellation noise scales with the magnitudes involved.
  const double slack = 1e-12 * (1.0 + std::abs(*jz) + std::abs(jy));
  if (d < -slack) {
    throw Error(fmt::format("bregman: negative distance {} for '{}' (J not convex?)", d, j.id()));
  }
  return ExtReal(std::max(d, 0.0));
}

// Definiteness witness search

namespace {

constexpr double kZeroDivergence = 1e-12;
constexpr double kMinSeparation = 1e-3;

bool is_witness(const ConvexFunctional& j, const Point& a, const Point& b, double& divergence) {
  if (distance(a, b) < kMinSeparation) return false;
  if (!j.gradient(b) || !j.in_domain(a)) return false;
  divergence = bregman_signed(j, a, b);
  return std::abs(divergence) <= kZeroDivergence;
}

}  // namespace

WitnessReport definiteness_probe(const ConvexFunctional& j, std::size_t trials, std::uint64_t seed,
                                 Eigen::Index dim) {
  WitnessReport report;
  std::mt19937_64 rng(seed);

  if (const auto box = j.flat_region()) {
    const double mid = 0.5 * (box->lo + box->hi);
    const double quarter = 0.25 * (box->hi - box->lo);
    const Point a(Vector::Constant(dim, mid + quarter));
    const Point b(Vector::Constant(dim, mid - quarter));
    ++report.trials;
    double d = 0.0;
    if (is_witness(j, a, b, d)) {
      report.found = true;
      report.pair.emplace(a, b);
      report.divergence = d;
      report.note = "guided phase: symmetric pair in flat region";
      return report;
    }
    std::uniform_real_distribution<double> u(box->lo, box->hi);
    for (std::size_t t = 0; t < trials; ++t) {
      Vector va(dim), vb(dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        va[i] = u(rng);
        vb[i] = u(rng);
      }
      ++report.trials;
      const Point pa(std::move(va)), pb(std::move(vb));
      if (is_witness(j, pa, pb, d)) {
        report.found = true;
        report.pair.emplace(pa, pb);
        report.divergence = d;
        report.note = "guided phase: random pair in flat region";
        return report;
      }
    }
  }

  for (std::size_t t = 0; t < trials; ++t) {
    const Point a = j.sample(rng, dim);
    const Point b = j.sample(rng, dim);
    ++report.trials;
    double d = 0.0;
    if (is_witness(j, a, b, d)) {
      report.found = true;
      report.pair.emplace(a, b);
      report.divergence = d;
      report.note = "random phase";
      return report;
    }
  }
  report.note = fmt::format("none found in {} trials", report.trials);
  return report;
}

}  // namespace varreg
