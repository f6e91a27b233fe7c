#pragma once

#include <span>
#include <vector>

#include "varreg/ext_real.hpp"
#include "varreg/step_function.hpp"
#include "varreg/verdict.hpp"

namespace varreg {

// Kullback-Leibler machinery on nonnegative step functions over [0, 1].
// Conventions: 0 log 0 = 0; a cell with z > 0 and y = 0 makes D_KL infinite.

/// J(y) = integral of y log y - y. Requires y >= 0; may be negative.
double kl_J(const StepFunction& y);

/// True iff grad J(y) = log y exists, i.e. y is bounded away from zero.
bool kl_grad_domain(const StepFunction& y);

/// D_KL(z, y) = integral of z log(z / y) - z + y.
ExtReal kl_divergence(const StepFunction& z, const StepFunction& y);

/// Integral of |z - y|.
double l1_distance(const StepFunction& z, const StepFunction& y);

struct BorweinReport {
  double lhs = 0.0;  ///< |z - y|_1^2
  double rhs = 0.0;  ///< (2/3 |y|_1 + 4/3 |z|_1) D_KL(z, y)
  bool holds = false;
  // Same bound with the weights on the other arguments. This is the form that
  // is actually true: z = 0 forces the weight on |y|_1 to be at least 1.
  double rhs_swapped = 0.0;  ///< (2/3 |z|_1 + 4/3 |y|_1) D_KL(z, y)
  bool holds_swapped = false;
};

/// Checks |z - y|_1^2 <= (2/3 |y|_1 + 4/3 |z|_1) D_KL(z, y) + 1e-12. D_KL(z, y) must be finite.
/// This fails whenever z is a constant multiple c < 1 of y; see holds_swapped.
BorweinReport borwein_check(const StepFunction& z, const StepFunction& y);

/// y_n = n on [0, 1/(n log n)], eps elsewhere. n >= 3.
StepFunction counterexample_sequence(long n, double eps);

/// (n log(n/eps) - n + eps) / (n log n).
double counterexample_closed_form(long n, double eps);

struct CounterexampleRow {
  long n = 0;
  double eps = 0.0;
  double dkl_exact = 0.0;
  double dkl_closed_form = 0.0;
  double l1 = 0.0;
};

struct CounterexampleReport {
  std::vector<CounterexampleRow> rows;
  double max_abs_error = 0.0;
  bool exact_matches_closed_form = false;  ///< max_abs_error <= 1e-12
  bool l1_decreasing = false;
  bool dkl_increasing = false;
  [[nodiscard]] bool all_pass() const { return exact_matches_closed_form && l1_decreasing && dkl_increasing; }
};

/// D_KL(y_n, y) and |y_n - y|_1 against the baseline y = eps, for each n.
CounterexampleReport counterexample_report(std::span<const long> n_list, double eps);

/// Verdict on the pairings integral of w (log f_n - log f_lim) -> 0.
struct PairingReport {
  std::vector<double> pairings;
  ConvergenceVerdict verdict;
};

/// All f must be strictly positive; zero cells are rejected.
PairingReport weakstar_pairing(const StepFunction& w, std::span<const StepFunction> f_seq,
                               const StepFunction& f_lim, double tol);

/// Eight bounded test functions: constants, half/quarter sign patterns and indicators.
std::vector<StepFunction> default_probe_bank();

/// For data y and sequence y_n: whether D_KL(y_n, y) -> 0, and for each z
/// whether integral (log y - log z)(y - y_n) -> 0. The implication
/// "first implies all of the second" is what is expected to hold.
struct Rho2EquivalenceReport {
  ConvergenceVerdict dkl;
  std::vector<ConvergenceVerdict> pairings;
  bool pairings_converge = false;
  bool implication_holds = false;
  bool vacuous = false;  ///< D_KL did not converge, nothing to check
};

Rho2EquivalenceReport rho2_kl_equivalence_probe(const StepFunction& y, std::span<const StepFunction> seq,
                                                std::span<const StepFunction> z_samples, double tol);

/// rho_1 side: D_KL(y, y_n) -> 0 together with log y_n -> log y weak* on the
/// probe bank, compared with the generic Bregman tau_IN test for the entropy
/// on the merged grid (Z = exp of the probe bank).
struct Rho1BundleReport {
  ConvergenceVerdict dkl;
  std::vector<ConvergenceVerdict> weakstar;
  bool bundle_converges = false;
  bool tauin_converges = false;
  ConvergenceVerdict l1;
  [[nodiscard]] bool agree() const { return bundle_converges == tauin_converges; }
};

Rho1BundleReport kl_rho1_bundle(const StepFunction& y, std::span<const StepFunction> seq,
                                std::span<const StepFunction> probes, double tol);

struct TruncationResult {
  StepFunction plus;
  StepFunction minus;
  double l1_error = 0.0;  ///< |plus + minus - y|_1
};

/// plus = clamp(y, eps, 1/eps), minus = clamp(y, -1/eps, -eps), eps in (0, 1).
TruncationResult truncate_decompose(const StepFunction& y, double eps);

/// y + c, c > 0.
StepFunction baseline_shift(const StepFunction& y, double c);

}  // namespace varreg
