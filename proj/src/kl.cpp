#include "varreg/kl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "varreg/convergence.hpp"
#include "varreg/functionals.hpp"

namespace varreg {

namespace {

void require_nonnegative(const StepFunction& f, const char* what) {
  if (!f.nonnegative()) throw Error(fmt::format("{}: step function must be nonnegative", what));
}

void require_positive(const StepFunction& f, const char* what) {
  if (!kl_grad_domain(f)) throw Error(fmt::format("{}: step function must be strictly positive", what));
}

double log_pairing(const StepFunction& w, const StepFunction& f, const StepFunction& g) {
  // integral of w (log f - log g)
  const StepFunction diff = combine(f, g, [](double a, double b) { return std::log(a) - std::log(b); });
  return integrate_pair(w, diff, [](double a, double b) { return a * b; });
}

std::vector<double> merged_grid(const std::vector<const StepFunction*>& fs) {
  std::vector<double> grid;
  for (const auto* f : fs) grid.insert(grid.end(), f->breakpoints().begin(), f->breakpoints().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

Point on_grid(const StepFunction& f, const std::vector<double>& grid) {
  const auto v = values_on_grid(f, grid);
  return Point(std::span<const double>(v));
}

}  // namespace

double kl_J(const StepFunction& y) {
  require_nonnegative(y, "kl_J");
  double total = 0.0;
  for (std::size_t i = 0; i < y.cells(); ++i) {
    const double v = y.values()[i];
    const double term = v > 0.0 ? v * std::log(v) - v : 0.0;
    total += term * y.cell_length(i);
  }
  return total;
}

bool kl_grad_domain(const StepFunction& y) { return y.min_value() > 0.0; }

ExtReal kl_divergence(const StepFunction& z, const StepFunction& y) {
  require_nonnegative(z, "kl_divergence");
  require_nonnegative(y, "kl_divergence");
  const auto grid = merged_breakpoints(z, y);
  const auto zv = values_on_grid(z, grid);
  const auto yv = values_on_grid(y, grid);
  double total = 0.0;
  for (std::size_t i = 0; i < zv.size(); ++i) {
    const double len = grid[i + 1] - grid[i];
    double term;
    if (zv[i] == 0.0) {
      term = yv[i];
    } else if (yv[i] == 0.0) {
      return ExtReal::infinity();
    } else {
      term = std::max(0.0, zv[i] * std::log(zv[i] / yv[i]) - zv[i] + yv[i]);
    }
    total += term * len;
  }
  return ExtReal(total);
}

double l1_distance(const StepFunction& z, const StepFunction& y) {
  return integrate_pair(z, y, [](double a, double b) { return std::abs(a - b); });
}

BorweinReport borwein_check(const StepFunction& z, const StepFunction& y) {
  const ExtReal d = kl_divergence(z, y);
  if (d.is_infinite()) throw Error("Borwein check needs a finite divergence");
  BorweinReport r;
  const double l1 = l1_distance(z, y);
  r.lhs = l1 * l1;
  r.rhs = (2.0 / 3.0 * l1_norm(y) + 4.0 / 3.0 * l1_norm(z)) * d.value();
  r.holds = r.lhs <= r.rhs + 1e-12;
  r.rhs_swapped = (2.0 / 3.0 * l1_norm(z) + 4.0 / 3.0 * l1_norm(y)) * d.value();
  r.holds_swapped = r.lhs <= r.rhs_swapped + 1e-12;
  return r;
}

StepFunction counterexample_sequence(long n, double eps) {
  if (n < 3) throw Error(fmt::format("counterexample needs n >= 3, got {}", n));
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error("counterexample baseline must be positive");
  const double nd = static_cast<double>(n);
  const double cut = 1.0 / (nd * std::log(nd));
  return StepFunction({0.0, cut, 1.0}, {nd, eps});
}

double counterexample_closed_form(long n, double eps) {
  const double nd = static_cast<double>(n);
  return (nd * std::log(nd / eps) - nd + eps) / (nd * std::log(nd));
}

CounterexampleReport counterexample_report(std::span<const long> n_list, double eps) {
  CounterexampleReport rep;
  const StepFunction base = StepFunction::constant(eps);
  for (long n : n_list) {
    const StepFunction yn = counterexample_sequence(n, eps);
    CounterexampleRow row{n, eps};
    row.dkl_exact = kl_divergence(yn, base).value();
    row.dkl_closed_form = counterexample_closed_form(n, eps);
    row.l1 = l1_distance(yn, base);
    rep.max_abs_error = std::max(rep.max_abs_error, std::abs(row.dkl_exact - row.dkl_closed_form));
    rep.rows.push_back(row);
  }
  rep.exact_matches_closed_form = rep.max_abs_error <= 1e-12;
  rep.l1_decreasing = true;
  rep.dkl_increasing = true;
  for (std::size_t k = 1; k < rep.rows.size(); ++k) {
    rep.l1_decreasing = rep.l1_decreasing && rep.rows[k].l1 < rep.rows[k - 1].l1;
    rep.dkl_increasing = rep.dkl_increasing && rep.rows[k].dkl_exact > rep.rows[k - 1].dkl_exact;
  }
  return rep;
}

PairingReport weakstar_pairing(const StepFunction& w, std::span<const StepFunction> f_seq,
                               const StepFunction& f_lim, double tol) {
  require_positive(f_lim, "weak* pairing limit");
  PairingReport rep;
  for (const auto& f : f_seq) {
    require_positive(f, "weak* pairing term");
    rep.pairings.push_back(log_pairing(w, f, f_lim));
  }
  std::vector<double> mags;
  for (double p : rep.pairings) mags.push_back(std::abs(p));
  rep.verdict = assess_to_zero(std::move(mags), tol, "integral w (log f_n - log f) -> 0");
  return rep;
}

std::vector<StepFunction> default_probe_bank() {
  return {
      StepFunction::constant(1.0),
      StepFunction::constant(-1.0),
      StepFunction({0.0, 0.5, 1.0}, {1.0, -1.0}),
      StepFunction({0.0, 0.5, 1.0}, {-1.0, 1.0}),
      StepFunction({0.0, 0.25, 0.5, 0.75, 1.0}, {1.0, -1.0, 1.0, -1.0}),
      StepFunction({0.0, 0.25, 0.5, 0.75, 1.0}, {-1.0, 1.0, -1.0, 1.0}),
      StepFunction({0.0, 0.25, 1.0}, {1.0, 0.0}),
      StepFunction({0.0, 0.5, 1.0}, {0.0, 1.0}),
  };
}

Rho2EquivalenceReport rho2_kl_equivalence_probe(const StepFunction& y, std::span<const StepFunction> seq,
                                                std::span<const StepFunction> z_samples, double tol) {
  require_positive(y, "rho2 probe limit");
  Rho2EquivalenceReport rep;
  std::vector<double> dkl;
  for (const auto& yn : seq) {
    require_positive(yn, "rho2 probe term");
    dkl.push_back(kl_divergence(yn, y).to_double());
  }
  rep.dkl = assess_to_zero(std::move(dkl), tol, "D_KL(y_n, y) -> 0");

  rep.pairings_converge = true;
  for (const auto& z : z_samples) {
    require_positive(z, "rho2 probe sample");
    const StepFunction w = combine(y, z, [](double a, double b) { return std::log(a) - std::log(b); });
    std::vector<double> mags;
    for (const auto& yn : seq) {
      mags.push_back(std::abs(integrate_pair(w, y - yn, [](double a, double b) { return a * b; })));
    }
    rep.pairings.push_back(assess_to_zero(std::move(mags), tol, "integral (log y - log z)(y - y_n) -> 0"));
    rep.pairings_converge = rep.pairings_converge && rep.pairings.back().converged;
  }
  rep.vacuous = !rep.dkl.converged;
  rep.implication_holds = rep.vacuous || rep.pairings_converge;
  return rep;
}

Rho1BundleReport kl_rho1_bundle(const StepFunction& y, std::span<const StepFunction> seq,
                                std::span<const StepFunction> probes, double tol) {
  require_positive(y, "rho1 bundle limit");
  Rho1BundleReport rep;
  std::vector<double> dkl, l1;
  for (const auto& yn : seq) {
    require_positive(yn, "rho1 bundle term");
    dkl.push_back(kl_divergence(y, yn).to_double());
    l1.push_back(l1_distance(yn, y));
  }
  rep.dkl = assess_to_zero(std::move(dkl), tol, "D_KL(y, y_n) -> 0");
  rep.l1 = assess_to_zero(std::move(l1), tol, "|y_n - y|_1 -> 0");

  bool weak = true;
  for (const auto& w : probes) {
    rep.weakstar.push_back(weakstar_pairing(w, seq, y, tol).verdict);
    weak = weak && rep.weakstar.back().converged;
  }
  rep.bundle_converges = rep.dkl.converged && weak;

  // The same question asked of the generic Bregman test: entropy with cell
  // lengths as weights is exactly kl_J on the merged grid.
  std::vector<const StepFunction*> all{&y};
  for (const auto& f : seq) all.push_back(&f);
  std::vector<StepFunction> zs;
  for (const auto& w : probes) zs.push_back(w.map([](double v) { return std::exp(v); }));
  for (const auto& z : zs) all.push_back(&z);
  const auto grid = merged_grid(all);

  Vector weights(static_cast<Eigen::Index>(grid.size() - 1));
  for (Eigen::Index i = 0; i < weights.size(); ++i) weights[i] = grid[i + 1] - grid[i];
  const EntropyFunctional j(weights);

  std::vector<Point> terms;
  for (const auto& f : seq) terms.push_back(on_grid(f, grid));
  std::vector<Point> z_points;
  for (const auto& z : zs) z_points.push_back(on_grid(z, grid));
  const DataSequence dseq(std::move(terms), on_grid(y, grid));
  const auto tau = check_tauin_rho1(j, z_points, dseq, tol);
  rep.tauin_converges = tau.a && tau.b;
  return rep;
}

TruncationResult truncate_decompose(const StepFunction& y, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(fmt::format("truncation needs eps in (0, 1), got {}", eps));
  const double big = 1.0 / eps;
  TruncationResult r{y.map([&](double v) { return std::clamp(v, eps, big); }),
                     y.map([&](double v) { return std::clamp(v, -big, -eps); })};
  r.l1_error = l1_norm(r.plus + r.minus - y);
  return r;
}

StepFunction baseline_shift(const StepFunction& y, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(fmt::format("baseline shift needs c > 0, got {}", c));
  return y.map([c](double v) { return v + c; });
}

}  // namespace varreg
