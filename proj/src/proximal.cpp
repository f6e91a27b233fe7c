#include <algorithm>
#include <cmath>
#include <limits>

#include "solver_detail.hpp"

namespace varreg::detail {

ProxResult proximal_gradient(const SmoothPart& f, const std::function<Vector(const Vector&, double)>& prox,
                             const std::function<double(const Vector&)>& h_value, Vector x0,
                             const SolverConfig& cfg) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto total = [&](const Vector& x) { return f.value(x) + h_value(x); };

  Vector x = std::move(x0);
  double fx_total = total(x);
  if (!(fx_total < kInf)) throw SolverError("proximal gradient: starting point outside the domain");

  Vector v = x;
  double momentum = 1.0;
  double lipschitz = 1.0;
  ProxResult out;

  for (std::size_t it = 0; it < cfg.max_iter; ++it) {
    auto grad = f.gradient(v);
    if (!grad) {
      // Extrapolated point left the differentiable region; restart from x.
      v = x;
      momentum = 1.0;
      grad = f.gradient(v);
      if (!grad) throw SolverError("proximal gradient: gradient undefined at the current iterate");
    }
    const double fv = f.value(v);

    Vector next;
    for (int bt = 0; bt < 200; ++bt) {
      const double step = 1.0 / lipschitz;
      next = prox(v - step * *grad, step);
      const Vector d = next - v;
      const double fn = f.value(next);
      if (fn < kInf && fn <= fv + grad->dot(d) + 0.5 * lipschitz * d.squaredNorm() + 1e-15 * std::abs(fv)) break;
      lipschitz *= 2.0;
    }

    const double next_total = total(next);
    const double change = std::abs(fx_total - next_total);
    const double step_norm = (next - x).norm();
    out.last_step = step_norm;
    out.iterations = it + 1;

    if (next_total > fx_total && momentum > 1.0) {
      // Adaptive restart: drop momentum and retry from the last accepted iterate.
      // A plain step (momentum 1) that "increases" the objective only does so
      // by rounding, so it is accepted below instead of being retried forever.
      v = x;
      momentum = 1.0;
      continue;
    }

    const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    v = next + ((momentum - 1.0) / next_momentum) * (next - x);
    momentum = next_momentum;
    x = std::move(next);
    fx_total = next_total;
    // Allow the step to grow again.
    lipschitz = std::max(lipschitz * 0.9, 1e-12);

    if (change <= cfg.ftol * std::max(1.0, std::abs(fx_total)) && step_norm <= cfg.xtol) break;
  }

  out.x = std::move(x);
  out.objective = fx_total;
  return out;
}

}  // namespace varreg::detail
