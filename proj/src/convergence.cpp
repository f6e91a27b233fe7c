#include "varreg/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/QR>
#include <fmt/format.h>

namespace varreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vector gradient_or_throw(const ConvexFunctional& j, const Point& p, const char* where) {
  auto g = j.gradient(p);
  if (!g) throw UndefinedGradient(fmt::format("{}: gradient of '{}' undefined", where, j.id()));
  return *g;
}

std::vector<Point> with_limit(std::span<const Point> z_samples, const Point& y) {
  std::vector<Point> zs(z_samples.begin(), z_samples.end());
  if (std::find(zs.begin(), zs.end(), y) == zs.end()) zs.push_back(y);
  return zs;
}

bool all_converged(const std::vector<ConvergenceVerdict>& vs) {
  return std::all_of(vs.begin(), vs.end(), [](const ConvergenceVerdict& v) { return v.converged; });
}

}  // namespace

SampleSets default_sample_sets(const ConvexFunctional& j, Eigen::Index dim, std::uint64_t seed,
                               std::span<const Point> extra) {
  std::mt19937_64 rng(seed);
  SampleSets sets;
  for (int k = 0; k < 8; ++k) sets.z_samples.push_back(j.sample(rng, dim));
  for (int k = 0; k < 8; ++k) sets.ytilde_samples.push_back(j.sample(rng, dim));
  sets.z_samples.insert(sets.z_samples.end(), extra.begin(), extra.end());
  return sets;
}

ConvergenceVerdict check_conv(const Discrepancy& d, const DataSequence& seq, double tol) {
  std::vector<double> values;
  values.reserve(seq.size());
  for (const auto& yn : seq.terms()) values.push_back(d.eval(seq.limit(), yn).to_double());
  return assess_to_zero(std::move(values), tol, fmt::format("[CONV] {}(y, y_n) -> 0", d.id()));
}

bool ContReport::all_pass() const { return all_converged(per_z); }

ContReport check_cont(const Discrepancy& d, std::span<const Point> z_samples, const DataSequence& seq, double tol) {
  ContReport report;
  for (std::size_t k = 0; k < z_samples.size(); ++k) {
    const Point& z = z_samples[k];
    const ExtReal base = d.eval(z, seq.limit());
    if (base.is_infinite()) {
      report.skipped.push_back(k);
      continue;
    }
    std::vector<double> diffs;
    diffs.reserve(seq.size());
    for (const auto& yn : seq.terms()) {
      const ExtReal v = d.eval(z, yn);
      diffs.push_back(v.is_infinite() ? kInf : std::abs(v.value() - base.value()));
    }
    report.evaluated.push_back(k);
    report.per_z.push_back(assess_to_zero(std::move(diffs), tol, fmt::format("[CONT] at probe {}", k)));
  }
  return report;
}

double rho1_identity_residual(const ConvexFunctional& j, const Point& z, const Point& y, const Point& yn) {
  const Vector gy = gradient_or_throw(j, y, "rho1 identity");
  const Vector gyn = gradient_or_throw(j, yn, "rho1 identity");
  const double lhs = bregman_signed(j, z, yn) - bregman_signed(j, z, y);
  const double rhs = bregman_signed(j, y, yn) + (gyn - gy).dot(y.vec() - z.vec());
  return lhs - rhs;
}

double rho2_identity_residual(const ConvexFunctional& j, const Point& z, const Point& y, const Point& yn) {
  const Vector gy = gradient_or_throw(j, y, "rho2 identity");
  const Vector gz = gradient_or_throw(j, z, "rho2 identity");
  const double lhs = bregman_signed(j, yn, z) - bregman_signed(j, y, z);
  const double rhs = bregman_signed(j, yn, y) + (gy - gz).dot(yn.vec() - y.vec());
  return lhs - rhs;
}

double rho2_identity_residual_printed_sign(const ConvexFunctional& j, const Point& z, const Point& y,
                                           const Point& yn) {
  const Vector gy = gradient_or_throw(j, y, "rho2 identity");
  const Vector gz = gradient_or_throw(j, z, "rho2 identity");
  const double lhs = bregman_signed(j, yn, z) - bregman_signed(j, y, z);
  const double rhs = bregman_signed(j, yn, y) + (gy - gz).dot(y.vec() - yn.vec());
  return lhs - rhs;
}

TauInReport check_tauin_rho1(const ConvexFunctional& j, std::span<const Point> z_samples, const DataSequence& seq,
                             double tol) {
  const Point& y = seq.limit();
  const Vector gy = gradient_or_throw(j, y, "tau_IN rho1 limit");
  TauInReport report;

  for (const auto& z : with_limit(z_samples, y)) {
    const ExtReal base = bregman(j, z, y);
    if (base.is_infinite()) continue;
    std::vector<double> diffs;
    for (const auto& yn : seq.terms()) {
      const ExtReal v = bregman(j, z, yn);
      diffs.push_back(v.is_infinite() ? kInf : std::abs(v.value() - base.value()));
    }
    report.a_verdicts.push_back(assess_to_zero(std::move(diffs), tol, "rho1(z, y_n) -> rho1(z, y)"));
  }

  std::vector<double> div;
  for (const auto& yn : seq.terms()) div.push_back(bregman(j, y, yn).to_double());
  report.b_divergence = assess_to_zero(std::move(div), tol, "rho1(y, y_n) -> 0");

  for (const auto& z : z_samples) {
    if (!j.in_domain(z)) continue;
    std::vector<double> pair;
    for (const auto& yn : seq.terms()) {
      const Vector gyn = gradient_or_throw(j, yn, "tau_IN rho1 term");
      pair.push_back(std::abs((gyn - gy).dot(y.vec() - z.vec())));
      report.max_identity_residual =
          std::max(report.max_identity_residual, std::abs(rho1_identity_residual(j, z, y, yn)));
    }
    report.b_pairings.push_back(assess_to_zero(std::move(pair), tol, "<grad J(y_n) - grad J(y), y - z> -> 0"));
  }

  report.a = all_converged(report.a_verdicts);
  report.b = report.b_divergence.converged && all_converged(report.b_pairings);
  return report;
}

TauInReport check_tauin_rho2(const ConvexFunctional& j, std::span<const Point> z_samples, const DataSequence& seq,
                             double tol) {
  const Point& y = seq.limit();
  const Vector gy = gradient_or_throw(j, y, "tau_IN rho2 limit");
  TauInReport report;

  for (const auto& z : with_limit(z_samples, y)) {
    if (!j.gradient(z)) continue;
    const ExtReal base = bregman(j, y, z);
    std::vector<double> diffs;
    for (const auto& yn : seq.terms()) {
      const ExtReal v = bregman(j, yn, z);
      diffs.push_back(v.is_infinite() ? kInf : std::abs(v.value() - base.value()));
    }
    report.a_verdicts.push_back(assess_to_zero(std::move(diffs), tol, "rho2(z, y_n) -> rho2(z, y)"));
  }

  std::vector<double> div;
  for (const auto& yn : seq.terms()) div.push_back(bregman(j, yn, y).to_double());
  report.b_divergence = assess_to_zero(std::move(div), tol, "rho2(y, y_n) -> 0");

  for (const auto& z : z_samples) {
    const auto gz = j.gradient(z);
    if (!gz) continue;
    std::vector<double> pair;
    for (const auto& yn : seq.terms()) {
      pair.push_back(std::abs((gy - *gz).dot(yn.vec() - y.vec())));
      if (j.in_domain(yn)) {
        report.max_identity_residual =
            std::max(report.max_identity_residual, std::abs(rho2_identity_residual(j, z, y, yn)));
      }
    }
    report.b_pairings.push_back(assess_to_zero(std::move(pair), tol, "<grad J(y) - grad J(z), y_n - y> -> 0"));
  }

  report.a = all_converged(report.a_verdicts);
  report.b = report.b_divergence.converged && all_converged(report.b_pairings);
  return report;
}

bool in_ball(const Discrepancy& d, const Point& center, double radius, const Point& p) {
  const ExtReal v = d.eval(center, p);
  return v.is_finite() && v.value() < radius;
}

BallWitness ball_openness_witness() {
  const CoordinateMismatchDiscrepancy rho;
  BallWitness w;
  w.rho_center_inside = rho.eval(w.center, w.inside);
  w.rho_inside_sequence = rho.eval(w.inside, w.sequence_term);
  w.rho_center_sequence = rho.eval(w.center, w.sequence_term);
  w.inside_in_ball = in_ball(rho, w.center, w.radius, w.inside);
  w.sequence_in_ball = in_ball(rho, w.center, w.radius, w.sequence_term);
  return w;
}

MismatchContWitness mismatch_cont_witness(std::size_t length) {
  std::vector<Point> terms(length, Point{0.0, 5.0});
  return {DataSequence(std::move(terms), Point{0.0, 0.0}), Point{7.0, 5.0}};
}

double parameter_choice_sqrt(double rho_level, double alpha_min) {
  if (!(rho_level >= 0.0) || !std::isfinite(rho_level)) {
    throw Error(fmt::format("parameter choice needs a finite nonnegative level, got {}", rho_level));
  }
  return rho_level == 0.0 ? alpha_min : std::sqrt(rho_level);
}

double ParameterRule::operator()(double rho_level) const {
  if (kind == Kind::constant) return constant;
  return parameter_choice_sqrt(rho_level, alpha_min);
}

std::string ParameterRule::name() const {
  return kind == Kind::sqrt ? std::string("sqrt") : fmt::format("constant:{}", constant);
}

StabilityReport run_r2_experiment(const VariationalScheme& s, const DataSequence& seq, double alpha,
                                  const SolverConfig& cfg, double tol) {
  StabilityReport report;
  report.limit_minimizers = tikhonov_solve(s, seq.limit(), alpha, cfg).minimizers;
  for (const auto& yn : seq.terms()) {
    try {
      const auto r = tikhonov_solve(s, yn, alpha, cfg);
      double best = kInf;
      for (const auto& m : report.limit_minimizers) best = std::min(best, distance(r.minimizer(), m));
      report.distances.push_back(best);
      report.term_errors.emplace_back();
    } catch (const SolverError& e) {
      report.distances.push_back(kInf);
      report.term_errors.emplace_back(e.what());
    }
  }
  report.verdict = assess_to_zero(report.distances, tol, "(R2) |x_n - argmin T_{alpha,y}| -> 0");
  return report;
}

Vector noise_direction(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Eigen::Index> pick(0, dim - 1);
  const Eigen::Index axis = pick(rng);
  const double sign = std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
  Vector e = Vector::Zero(dim);
  e[axis] = sign;
  return e;
}

ConvergenceReport run_r3_experiment(const VariationalScheme& s, const Point& x_exact,
                                    const std::vector<double>& noise_levels, const ParameterRule& rule,
                                    const SolverConfig& cfg, const R3Options& opts) {
  if (noise_levels.empty()) throw Error("R3 experiment needs at least one noise level");
  const Point y = s.forward().apply(x_exact);
  const auto reg_x_exact = s.regularizer().value(x_exact);
  if (reg_x_exact.is_infinite()) throw Error("x_exact must lie in dom R");

  const Vector e = noise_direction(y.dim(), opts.seed);

  ConvergenceReport report;
  if (opts.x_star) {
    report.x_star = *opts.x_star;
  } else if (s.forward().is_linear() && s.regularizer().id() == "sqnorm") {
    report.x_star = Point(Vector(s.forward().matrix().completeOrthogonalDecomposition().solve(y.vec())));
  } else {
    report.x_star = x_exact;
  }
  report.reg_star = s.regularizer().value(report.x_star).value();

  std::vector<double> rho_column;
  for (std::size_t n = 0; n < noise_levels.size(); ++n) {
    const double delta = noise_levels[n];
    const Point yn(Vector(y.vec() + delta * e));
    const double level = s.discrepancy().eval(y, yn).value();
    const double alpha = rule(level);
    const auto sol = tikhonov_solve(s, yn, alpha, cfg);
    R3Row row{n + 1, delta, alpha};
    row.rho = sol.discrepancy_at_min.to_double();
    row.reg = sol.regularizer_at_min.to_double();
    row.err = distance(sol.minimizer(), report.x_star);
    rho_column.push_back(row.rho);
    report.rows.push_back(row);
  }

  report.discrepancy = assess_to_zero(std::move(rho_column), opts.discrepancy_tol, "(R3) rho(F(x_n), y_n) -> 0");
  const std::size_t tail = std::max<std::size_t>(1, report.rows.size() / 4);
  report.tail_excess = -kInf;
  for (std::size_t k = report.rows.size() - tail; k < report.rows.size(); ++k) {
    report.tail_excess = std::max(report.tail_excess, report.rows[k].reg - report.reg_star);
  }
  report.final_gap = std::abs(report.rows.back().reg - report.reg_star);
  report.pass = report.discrepancy.converged && report.tail_excess <= opts.reg_tol && report.final_gap <= opts.reg_tol;
  return report;
}

}  // namespace varreg
