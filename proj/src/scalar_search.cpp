#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "solver_detail.hpp"

namespace varreg::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvPhi = 0.6180339887498949;

enum class Origin { boundary = 0, golden = 1, grid = 2 };

struct Candidate {
  double x;
  double value;
  Origin origin;
};

}  // namespace

std::pair<double, double> golden_section(const ScalarFn& g, double a, double b, double xtol, std::size_t& evals) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double gc = g(c);
  double gd = g(d);
  evals += 2;
  while (b - a > xtol) {
    // Ties move right, toward the later point of the bracket.
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = g(d);
    }
    ++evals;
    if (c >= d) break;
  }
  const double x = 0.5 * (a + b);
  const double gx = g(x);
  ++evals;
  if (gx <= std::min(gc, gd)) return {x, gx};
  return gc <= gd ? std::pair{c, gc} : std::pair{d, gd};
}

ScalarResult minimize_scalar(const ScalarFn& g, const std::optional<ScalarConstraint>& constraint,
                             const SolverConfig& cfg, const std::vector<double>& extra_feasible,
                             bool check_unbounded) {
  cfg.validate();
  const std::size_t n = cfg.grid_points;
  const double lo = cfg.bracket_lo;
  const double hi = cfg.bracket_hi;
  const double h = (hi - lo) / static_cast<double>(n - 1);

  ScalarResult result;
  auto feasible = [&](double x) {
    return !constraint || constraint->fn(x) <= constraint->level;
  };

  std::vector<double> xs(n), gs(n);
  std::vector<char> ok(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    gs[i] = g(xs[i]);
    ok[i] = feasible(xs[i]) && gs[i] < kInf;
  }
  result.evaluations += n;

  // Boundary refinement only moves onto points that are feasible by more than
  // rounding noise. A constraint that is flat at its boundary (e.g. a cubic
  // contact) would otherwise drift into points that are feasible only by
  // cancellation error.
  auto certified = [&](double x) {
    if (!constraint) return true;
    const double margin = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(constraint->level));
    return constraint->fn(x) <= constraint->level - margin;
  };

  std::vector<Candidate> cands;
  auto boundary = [&](double inside, double outside) {
    for (int k = 0; k < 200; ++k) {
      const double mid = 0.5 * (inside + outside);
      if (mid == inside || mid == outside) break;
      if (certified(mid) && g(mid) < kInf) {
        inside = mid;
      } else {
        outside = mid;
      }
      ++result.evaluations;
    }
    return inside;
  };

  std::size_t i = 0;
  while (i < n) {
    if (!ok[i]) {
      ++i;
      continue;
    }
    const std::size_t i0 = i;
    while (i + 1 < n && ok[i + 1]) ++i;
    const std::size_t i1 = i;
    ++i;

    const double left = i0 > 0 ? boundary(xs[i0], xs[i0 - 1]) : xs[i0];
    const double right = i1 + 1 < n ? boundary(xs[i1], xs[i1 + 1]) : xs[i1];
    const double gl = g(left);
    const double gr = g(right);
    result.evaluations += 2;
    cands.push_back({left, gl, Origin::boundary});
    cands.push_back({right, gr, Origin::boundary});

    for (std::size_t k = i0; k <= i1; ++k) {
      const double prev = k > i0 ? gs[k - 1] : gl;
      const double next = k < i1 ? gs[k + 1] : gr;
      if (gs[k] > prev || gs[k] > next) continue;
      cands.push_back({xs[k], gs[k], Origin::grid});
      const double a = k > i0 ? xs[k - 1] : left;
      const double b = k < i1 ? xs[k + 1] : right;
      if (b - a <= cfg.xtol) continue;
      const auto [x, gx] = golden_section(g, a, b, cfg.xtol, result.evaluations);
      if (feasible(x)) cands.push_back({x, gx, Origin::golden});
      result.used_golden = true;
    }
  }
  for (double x : extra_feasible) {
    if (x >= lo && x <= hi && feasible(x)) {
      cands.push_back({x, g(x), Origin::boundary});
      ++result.evaluations;
    }
  }

  std::erase_if(cands, [](const Candidate& c) { return !(c.value < kInf); });
  if (cands.empty()) {
    throw InfeasibleError(constraint ? "no feasible point with finite objective in the bracket"
                                     : "objective is infinite on the whole bracket");
  }

  // Group candidates closer than ~one grid step; each group is one minimizer.
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.x < b.x; });
  std::vector<Candidate> reps;
  for (std::size_t k = 0; k < cands.size();) {
    Candidate best = cands[k];
    std::size_t m = k + 1;
    while (m < cands.size() && cands[m].x - cands[m - 1].x <= 1.5 * h) {
      const auto& c = cands[m];
      if (c.value < best.value || (c.value == best.value && c.origin < best.origin)) best = c;
      ++m;
    }
    reps.push_back(best);
    k = m;
  }
  double best_value = kInf;
  for (const auto& r : reps) best_value = std::min(best_value, r.value);
  for (const auto& r : reps) {
    if (r.value <= best_value + kMinimizerGap) result.minimizers.push_back(r.x);
  }
  result.best = best_value;
  result.tolerance = result.used_golden ? cfg.xtol : h;

  if (check_unbounded) {
    for (double x : result.minimizers) {
      const bool at_lo = x - lo <= h;
      const bool at_hi = hi - x <= h;
      if ((at_lo && g(lo - h) < g(lo)) || (at_hi && g(hi + h) < g(hi))) {
        throw UnboundedError(fmt::format(
            "objective decreases beyond the bracket [{}, {}]; widen the bracket or the problem is unbounded below",
            lo, hi));
      }
    }
  }
  return result;
}

}  // namespace varreg::detail
