#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "varreg/discrepancies.hpp"
#include "varreg/functionals.hpp"
#include "varreg/scheme.hpp"
#include "varreg/solvers.hpp"
#include "varreg/verdict.hpp"

namespace varreg {

inline constexpr double kDefaultConvergenceTol = 1e-6;

/// Probe sets: Z for the [CONT] / tau_IN tests and samples of Y-tilde (points
/// with a single-valued gradient).
struct SampleSets {
  std::vector<Point> z_samples;
  std::vector<Point> ytilde_samples;
};

/// Eight seeded points in the domain of j (with gradient), plus any extra probes.
SampleSets default_sample_sets(const ConvexFunctional& j, Eigen::Index dim, std::uint64_t seed,
                               std::span<const Point> extra = {});

/// [CONV]: rho(y, y_n) -> 0 where y = seq.limit().
ConvergenceVerdict check_conv(const Discrepancy& d, const DataSequence& seq, double tol = kDefaultConvergenceTol);

struct ContReport {
  std::vector<ConvergenceVerdict> per_z;  ///< aligned with the probes that were not skipped
  std::vector<std::size_t> evaluated;     ///< indices into Z of the evaluated probes
  std::vector<std::size_t> skipped;       ///< probes with rho(z, y) = INFINITY
  [[nodiscard]] bool all_pass() const;
};

/// [CONT]: rho(z, y_n) -> rho(z, y) for every z in Z with finite rho(z, y).
ContReport check_cont(const Discrepancy& d, std::span<const Point> z_samples, const DataSequence& seq,
                      double tol = kDefaultConvergenceTol);

/// Both characterizations of tau_IN convergence for a Bregman discrepancy:
/// (a) rho(z, y_n) -> rho(z, y) for z in Z and z = y;
/// (b) rho(y, y_n) -> 0 and the gradient pairings -> 0 for z in Z.
struct TauInReport {
  bool a = false;
  bool b = false;
  std::vector<ConvergenceVerdict> a_verdicts;
  ConvergenceVerdict b_divergence;
  std::vector<ConvergenceVerdict> b_pairings;
  double max_identity_residual = 0.0;  ///< identity checked term by term
  [[nodiscard]] bool agree() const { return a == b; }
};

/// rho_1(z, y) = D_J(z, y); pairing <grad J(y_n) - grad J(y), y - z>.
TauInReport check_tauin_rho1(const ConvexFunctional& j, std::span<const Point> z_samples, const DataSequence& seq,
                             double tol = kDefaultConvergenceTol);

/// rho_2(z, y) = D_J(y, z); pairing <grad J(y) - grad J(z), y_n - y>.
TauInReport check_tauin_rho2(const ConvexFunctional& j, std::span<const Point> z_samples, const DataSequence& seq,
                             double tol = kDefaultConvergenceTol);

/// rho_1(z, y_n) - rho_1(z, y) - [rho_1(y, y_n) + <grad J(y_n) - grad J(y), y - z>].
double rho1_identity_residual(const ConvexFunctional& j, const Point& z, const Point& y, const Point& yn);
/// rho_2(z, y_n) - rho_2(z, y) - [rho_2(y, y_n) + <grad J(y) - grad J(z), y_n - y>].
double rho2_identity_residual(const ConvexFunctional& j, const Point& z, const Point& y, const Point& yn);
/// Same with the pairing written as <grad J(y) - grad J(z), y - y_n>; not an identity in general.
double rho2_identity_residual_printed_sign(const ConvexFunctional& j, const Point& z, const Point& y, const Point& yn);

/// The 2-D construction showing the mismatch ball B_{1/2}((0,0)) is not tau_rho-open:
/// u = (1,0) lies in the ball, the constant sequence (1,1) rho-converges to u, yet
/// never enters the ball.
struct BallWitness {
  Point center{0.0, 0.0};
  Point inside{1.0, 0.0};
  Point sequence_term{1.0, 1.0};
  double radius = 0.5;
  ExtReal rho_center_inside;    ///< rho((0,0), (1,0)) = 0
  ExtReal rho_inside_sequence;  ///< rho((1,0), (1,1)) = 0
  ExtReal rho_center_sequence;  ///< rho((0,0), (1,1)) = 1
  bool inside_in_ball = false;
  bool sequence_in_ball = false;
};
BallWitness ball_openness_witness();

/// Whether rho(center, p) < radius.
bool in_ball(const Discrepancy& d, const Point& center, double radius, const Point& p);

/// The stored mismatch2d sequence y_n = (0, 5) -> y = (0, 0) with probe z = (7, 5):
/// [CONV] holds while [CONT] fails at z.
struct MismatchContWitness {
  DataSequence sequence;
  Point z;
};
MismatchContWitness mismatch_cont_witness(std::size_t length = 16);

/// alpha = sqrt(rho_level); alpha_min when rho_level == 0.
double parameter_choice_sqrt(double rho_level, double alpha_min = 1e-12);

struct StabilityReport {
  std::vector<double> distances;  ///< |x_n - nearest minimizer of T_{alpha,y}|
  std::vector<Point> limit_minimizers;
  std::vector<std::string> term_errors;  ///< empty string when the term solved
  ConvergenceVerdict verdict;
  [[nodiscard]] bool pass() const { return verdict.converged; }
};

/// Stability: minimizers for y_n approach the minimizer set for y at fixed alpha.
StabilityReport run_r2_experiment(const VariationalScheme& s, const DataSequence& seq, double alpha,
                                  const SolverConfig& cfg = {}, double tol = kDefaultConvergenceTol);

/// Parameter choice rule alpha(rho(y, y_n)).
struct ParameterRule {
  enum class Kind { sqrt, constant } kind = Kind::sqrt;
  double constant = 0.5;
  double alpha_min = 1e-12;
  [[nodiscard]] double operator()(double rho_level) const;
  [[nodiscard]] std::string name() const;
};

struct R3Row {
  std::size_t n = 0;
  double delta = 0.0;
  double alpha = 0.0;
  double rho = 0.0;  ///< rho(F(x_n), y_n)
  double reg = 0.0;  ///< R(x_n)
  double err = 0.0;  ///< |x_n - x*|
};

struct ConvergenceReport {
  std::vector<R3Row> rows;
  Point x_star;
  double reg_star = 0.0;
  ConvergenceVerdict discrepancy;
  double tail_excess = 0.0;  ///< max over the last quarter of R(x_n) - R(x*)
  double final_gap = 0.0;    ///< |R(x_N) - R(x*)|
  bool pass = false;
};

/// Seeded signed unit coordinate vector used to perturb exact data.
Vector noise_direction(Eigen::Index dim, std::uint64_t seed);

struct R3Options {
  std::uint64_t seed = 7;
  double discrepancy_tol = 1e-6;
  double reg_tol = 1e-3;
  /// R-minimal solution; defaults to A^+ y for linear schemes with R = |x|^2, else x_exact.
  std::optional<Point> x_star;
};

/// Convergence: y = F(x_exact), y_n = y + delta_n e (e a seeded signed unit
/// coordinate vector), alpha_n = rule(rho(y, y_n)). Passes iff the
/// discrepancy column tends to 0 and both the tail excess and the final gap
/// of R(x_n) over R(x*) are within reg_tol.
ConvergenceReport run_r3_experiment(const VariationalScheme& s, const Point& x_exact,
                                    const std::vector<double>& noise_levels, const ParameterRule& rule,
                                    const SolverConfig& cfg = {}, const R3Options& opts = {});

}  // namespace varreg
