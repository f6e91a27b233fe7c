// One line per acceptance criterion. Exit status is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include <fmt/format.h>

#include "oracles.hpp"
#include "varreg/convergence.hpp"
#include "varreg/kl.hpp"
#include "varreg/registry.hpp"
#include "varreg/solvers.hpp"

using namespace varreg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> info;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

SolverConfig bracket3() {
  SolverConfig cfg;
  cfg.bracket_lo = -3.0;
  cfg.bracket_hi = 3.0;
  return cfg;
}

const std::vector<double> kExampleAlphas{0.25, 0.5, 1.0, 1.5, 2.0};

Outcome example24() {
  Outcome o;
  const auto s = example24_scheme();
  const Point y{1.0};
  const auto iv = ivanov_solve(s, y, 1.0, bracket3());
  o.require(iv.unique() && std::abs(iv.minimizer()[0]) <= 1e-8, "ivanov minimizer not at 0");
  o.require(std::abs(iv.discrepancy_at_min.to_double() - 1.0) <= 1e-8, "ivanov rho != 1");
  const auto mz = morozov_solve(s, y, 1.0, bracket3());
  o.require(mz.unique() && std::abs(mz.minimizer()[0]) <= 1e-8, "morozov minimizer not at 0");
  double worst_gap = INFINITY;
  for (double alpha : kExampleAlphas) {
    const auto t = tikhonov_solve(s, y, alpha, bracket3());
    const double gap = oracle::ex24_T(0.0, alpha) - t.objective.to_double();
    worst_gap = std::min(worst_gap, gap);
    o.require(gap >= 0.01, fmt::format("alpha={}: T(0) - T(x_min) = {:.3g}", alpha, gap));
  }
  if (o.pass) {
    o.detail = fmt::format("ivanov x={:.3g}, morozov x={:.3g}, min over alpha of T(0) - T(x_min) = {:.4f}",
                           iv.minimizer()[0], mz.minimizer()[0], worst_gap);
  }
  return o;
}

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) a(i, k) = u(rng);
  return a;
}

Outcome cross_battery() {
  Outcome o;
  std::mt19937_64 rng(2023);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const char* fits[] = {"sqnorm", "pnorm:4", "bregman1:quartic"};
  const char* regs[] = {"sqnorm", "l1"};
  int passed = 0, skipped = 0;
  for (int k = 0; k < 50; ++k) {
    const bool one_d = k < 25;
    const int dim = one_d ? 1 : 2;
    Matrix a = one_d ? Matrix::Constant(1, 1, (u(rng) < 0.5 ? -1 : 1) * (0.5 + 1.5 * u(rng)))
                     : Matrix(random_matrix(rng, 2, 2) + 1.5 * Matrix::Identity(2, 2));
    const VariationalScheme s(std::make_shared<ForwardOp>(ForwardOp::linear(a)),
                              discrepancy_by_id(one_d ? fits[k % 3] : "sqnorm"),
                              regularizer_by_id(one_d ? regs[(k / 3) % 2] : "sqnorm"));
    const Point y(oracle::uniform_vector(rng, dim, -2.0, 2.0));
    const Point exact(Vector(a.fullPivLu().solve(y.vec())));
    CrossCheckParams p;
    p.alpha = 0.2 + 2.8 * u(rng);
    p.tau = (0.1 + 0.8 * u(rng)) * s.regularizer().value(exact).to_double();
    p.delta = (0.1 + 0.8 * u(rng)) * s.discrepancy().eval(s.forward().apply(Point(Vector::Zero(dim))), y).to_double();
    const auto rep = cross_check_thm23(s, y, p);
    for (const auto& row : rep.rows) {
      if (row.status == CheckStatus::pass) ++passed;
      if (row.status == CheckStatus::skip) {
        ++skipped;
        o.info.push_back(fmt::format("scheme {} {}: SKIP ({})", k, row.name, row.reason));
      }
      o.require(row.status != CheckStatus::fail && row.status != CheckStatus::refuted,
                fmt::format("scheme {} {}: {} ({})", k, row.name, to_string(row.status), row.reason));
    }
  }
  if (o.pass) o.detail = fmt::format("50 schemes, {} relations pass, {} skipped", passed, skipped);
  return o;
}

Outcome closed_form() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> alpha(0.1, 2.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Matrix a = random_matrix(rng, 3, 3);
    const Vector y = oracle::uniform_vector(rng, 3, -2.0, 2.0);
    const double al = alpha(rng);
    const auto r = tikhonov_solve(hilbert_scheme(a), Point(y), al);
    worst = std::max(worst, (r.minimizer().vec() - oracle::ridge(a, y, al)).norm());
  }
  o.require(worst <= 1e-6, fmt::format("max |dx| = {:.3g}", worst));
  if (o.pass) o.detail = fmt::format("100 instances, max |dx| = {:.3g}", worst);
  return o;
}

Outcome kl_counterexample() {
  Outcome o;
  const std::vector<long> ns{10, 100, 1000, 10000, 1000000};
  const auto rep = counterexample_report(ns, 1.0);
  double worst = 0.0;
  for (const auto& row : rep.rows) {
    const double n = static_cast<double>(row.n);
    worst = std::max(worst, std::abs(row.dkl_exact - (n * std::log(n) - n + 1) / (n * std::log(n))));
  }
  o.require(worst <= 1e-12, fmt::format("closed form mismatch {:.3g}", worst));
  o.require(std::abs(rep.rows[0].dkl_exact - 0.609136) <= 2e-6, fmt::format("n=10 gives {:.7f}", rep.rows[0].dkl_exact));
  o.require(std::abs(rep.rows[1].dkl_exact - 0.785023) <= 2e-6, fmt::format("n=100 gives {:.7f}", rep.rows[1].dkl_exact));
  const auto& last = rep.rows.back();
  o.require(last.dkl_exact >= 0.95, fmt::format("D_KL at n=1e6 is {:.6f} < 0.95", last.dkl_exact));
  o.require(last.l1 <= 0.08, fmt::format("L1 at n=1e6 is {:.4f} > 0.08", last.l1));
  o.info.push_back(fmt::format("n=10: {:.7f}, n=100: {:.7f}, n=1e6: D_KL {:.6f}, L1 {:.4f}, max closed-form error {:.2g}",
                               rep.rows[0].dkl_exact, rep.rows[1].dkl_exact, last.dkl_exact, last.l1, worst));
  o.info.push_back("D_KL(y_n, 1) = 1 - (n - 1)/(n log n) stays below 1 and first reaches 0.95 near n = 4.9e8");
  if (o.pass) o.detail = o.info.front();
  return o;
}

Outcome bregman_identities() {
  Outcome o;
  std::mt19937_64 rng(2025);
  std::string summary;
  for (const char* id : {"quartic", "squared", "entropy", "hinge2"}) {
    const auto j = functional_by_id(id);
    double w1 = 0.0, w2 = 0.0, printed = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Point z = j->sample(rng, 2), y = j->sample(rng, 2), yn = j->sample(rng, 2);
      w1 = std::max(w1, std::abs(rho1_identity_residual(*j, z, y, yn)));
      w2 = std::max(w2, std::abs(rho2_identity_residual(*j, z, y, yn)));
      printed = std::max(printed, std::abs(rho2_identity_residual_printed_sign(*j, z, y, yn)));
    }
    o.require(w1 <= 1e-10 && w2 <= 1e-10, fmt::format("{}: residuals {:.3g}, {:.3g}", id, w1, w2));
    summary += fmt::format("{}{} {:.1g}/{:.1g}", summary.empty() ? "" : ", ", id, w1, w2);
    o.info.push_back(fmt::format("{}: rho_2 identity with pairing <., y - y_n> has max residual {:.3g}", id, printed));
  }
  if (o.pass) o.detail = "max residuals " + summary;
  return o;
}

Outcome definiteness() {
  Outcome o;
  for (const char* id : {"quartic", "squared", "entropy"}) {
    const auto rep = definiteness_probe(*functional_by_id(id), 10000, 2026);
    o.require(!rep.found && rep.trials == 10000, fmt::format("{}: zero-distance pair found", id));
  }
  const auto hinge = functional_by_id("hinge2");
  const auto w = definiteness_probe(*hinge, 10000, 2026);
  o.require(w.found && w.pair.has_value(), "no hinge2 witness");
  if (w.pair) {
    const auto& [a, b] = *w.pair;
    o.require(!(a == b) && bregman(*hinge, a, b) == ExtReal(0.0), "hinge2 witness is not a zero-distance distinct pair");
    if (o.pass) o.detail = fmt::format("no pair in 3 x 1e4 trials; hinge2 witness ({}) / ({}) with D_J = 0", a[0], b[0]);
  }
  return o;
}

StepFunction random_step(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> cells(1, 6);
  std::uniform_real_distribution<double> u(0.0, 1.0), v(0.01, 5.0);
  std::vector<double> inner;
  for (int i = cells(rng); i > 1; --i) inner.push_back(u(rng));
  std::sort(inner.begin(), inner.end());
  std::vector<double> cuts{0.0};
  for (double c : inner) {
    if (c > cuts.back()) cuts.push_back(c);
  }
  cuts.push_back(1.0);
  std::vector<double> vals;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) vals.push_back(v(rng));
  return StepFunction(cuts, vals);
}

Outcome borwein() {
  Outcome o;
  std::mt19937_64 rng(2027);
  int stated = 0, swapped = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto z = random_step(rng), y = random_step(rng);
    const auto r = borwein_check(z, y);
    stated += r.holds ? 1 : 0;
    swapped += r.holds_swapped ? 1 : 0;
  }
  o.require(stated == 1000, fmt::format("(2/3 |y| + 4/3 |z|) D_KL(z, y) bound held on {} of 1000 pairs", stated));
  o.info.push_back(fmt::format("with the weights exchanged, (2/3 |z| + 4/3 |y|), the bound held on {} of 1000 pairs", swapped));
  o.info.push_back("z = 0.5, y = 1 already breaks the stated form: 0.25 > 4/3 (0.5 log 0.5 + 0.5) = 0.2046");
  if (o.pass) o.detail = "1000 of 1000 pairs";
  return o;
}

Outcome r3_experiment() {
  Outcome o;
  Matrix a(2, 2);
  a << 1, 0, 0, 0.05;
  const auto s = hilbert_scheme(a);
  std::vector<double> deltas;
  for (int n = 1; n <= 20; ++n) deltas.push_back(std::ldexp(1.0, -n));
  const auto rep = run_r3_experiment(s, Point{1.0, 1.0}, deltas, ParameterRule{});
  const double final_rho = rep.rows.back().rho;
  o.require(rep.discrepancy.converged && final_rho < 1e-6, fmt::format("final rho {:.3g}", final_rho));
  o.require(rep.final_gap <= 1e-3, fmt::format("final R gap {:.3g}", rep.final_gap));
  ParameterRule constant;
  constant.kind = ParameterRule::Kind::constant;
  const auto ctrl = run_r3_experiment(s, Point{1.0, 1.0}, deltas, constant);
  o.require(!ctrl.pass && ctrl.final_gap >= 1e-2, fmt::format("control gap {:.3g} did not fail", ctrl.final_gap));
  if (o.pass) {
    o.detail = fmt::format("sqrt rule: final rho {:.2g}, R gap {:.2g}; {} control: R gap {:.4f}, rejected", final_rho,
                           rep.final_gap, constant.name(), ctrl.final_gap);
  }
  return o;
}

Outcome witnesses() {
  Outcome o;
  const auto w = ball_openness_witness();
  o.require(w.rho_center_inside == ExtReal(0.0) && w.rho_inside_sequence == ExtReal(0.0) &&
                w.rho_center_sequence == ExtReal(1.0),
            "ball witness triple is not (0, 0, 1)");
  const auto m = mismatch_cont_witness();
  const auto mm = make_coordinate_mismatch();
  const bool conv = check_conv(*mm, m.sequence).converged;
  const bool cont = check_cont(*mm, std::span<const Point>(&m.z, 1), m.sequence).all_pass();
  o.require(conv && !cont, fmt::format("mismatch sequence gives conv={}, cont={}", conv, cont));
  if (o.pass) o.detail = "ball triple (0, 0, 1); mismatch sequence conv=true, cont=false";
  return o;
}

Outcome prop25() {
  Outcome o;
  const auto s = example24_scheme();
  const Point y{1.0};
  const std::vector<Point> dirs{Point{1.0}, Point{-1.0}};
  int checked = 0;
  for (double alpha : kExampleAlphas) {
    for (const auto& x : tikhonov_solve(s, y, alpha, bracket3()).minimizers) {
      for (const auto& row : prop25_check(s, y, alpha, x, dirs).rows) {
        ++checked;
        o.require(row.holds, fmt::format("alpha={} x={:.6f} v={}: {:.3g} > {:.3g}", alpha, x[0], row.direction[0],
                                         row.lhs, row.rhs));
      }
    }
  }
  const auto at_zero = prop25_check(s, y, 1.0, Point{0.0}, dirs);
  o.require(!at_zero.rows[1].holds, "x=0 with alpha=1 not flagged for v=-1");
  if (o.pass) {
    o.detail = fmt::format("{} minimizer/direction pairs hold; at x=0, v=-1: {:.3g} > {:.3g}", checked,
                           at_zero.rows[1].lhs, at_zero.rows[1].rhs);
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"quartic Bregman example", example24},
      {"cross-relation battery", cross_battery},
      {"closed-form Tikhonov oracle", closed_form},
      {"KL counterexample", kl_counterexample},
      {"Bregman three-point identities", bregman_identities},
      {"definiteness", definiteness},
      {"Borwein inequality", borwein},
      {"square-root parameter choice", r3_experiment},
      {"ball and continuity witnesses", witnesses},
      {"necessary condition at Tikhonov minimizers", prop25},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << fmt::format("criterion {:2}: {} {}: {}\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail);
    for (const auto& line : o.info) std::cout << "    info: " << line << "\n";
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed;
}
