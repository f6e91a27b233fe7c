#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "oracles.hpp"
#include "varreg/registry.hpp"
#include "varreg/solvers.hpp"

using namespace varreg;

namespace {

SolverConfig bracket3() {
  SolverConfig cfg;
  cfg.bracket_lo = -3.0;
  cfg.bracket_hi = 3.0;
  return cfg;
}

VariationalScheme scheme_1d(ForwardOp f, const std::string& d, const std::string& r) {
  return VariationalScheme(std::make_shared<ForwardOp>(std::move(f)), discrepancy_by_id(d), regularizer_by_id(r));
}

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) a(i, k) = u(rng);
  return a;
}

}  // namespace

TEST_CASE("closed-form Tikhonov") {
  CHECK(tikhonov_closed_form(Matrix::Identity(2, 2), Point{1.0, 0.0}, 1.0) == Point{0.5, 0.0});
  Matrix a(2, 2);
  a << 2, 0, 0, 1;
  const Point x = tikhonov_closed_form(a, Point{1.0, 1.0}, 1.0);
  CHECK(x[0] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(0.5).epsilon(1e-14));
  std::mt19937_64 rng(51);
  const Matrix r = random_matrix(rng, 3, 3);
  CHECK(tikhonov_closed_form(r, Point::zeros(3), 0.3).vec().norm() == 0.0);
  for (int k = 0; k < 50; ++k) {
    const Matrix m = random_matrix(rng, 4, 3);
    const Vector y = oracle::uniform_vector(rng, 4, -1, 1);
    const double alpha = 0.1 + k * 0.03;
    const Vector xs = tikhonov_closed_form(m, Point(y), alpha).vec();
    const Matrix lhs = m.transpose() * m + alpha * Matrix::Identity(3, 3);
    CHECK((lhs * xs - m.transpose() * y).norm() <= 1e-10);
  }
  CHECK_THROWS_AS(static_cast<void>(tikhonov_closed_form(a, Point{1.0, 1.0}, 0.0)), Error);
}

TEST_CASE("Tikhonov on the quartic Bregman scheme") {
  const auto s = example24_scheme();
  const auto r = tikhonov_solve(s, Point{1.0}, 1.0, bracket3());
  REQUIRE(r.unique());
  const auto [ox, ov] = oracle::grid_argmin([](double x) { return oracle::ex24_T(x, 1.0); }, -3, 3, 1000001);
  CHECK(std::abs(r.minimizer()[0] - ox) <= 1e-4);
  CHECK(r.minimizer()[0] == doctest::Approx(-0.2567).epsilon(1e-3));
  CHECK(r.objective.value() == doctest::Approx(1.8240).epsilon(1e-4));
  CHECK(r.objective.value() <= ov + 1e-12);
  CHECK(oracle::ex24_T(0.0, 1.0) == 2.0);

  for (double alpha : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    const auto ra = tikhonov_solve(s, Point{1.0}, alpha, bracket3());
    CHECK(oracle::ex24_T(0.0, alpha) - ra.objective.value() >= 0.05);
    CHECK(std::abs(ra.minimizer()[0]) > 0.1);
  }
}

TEST_CASE("reported objective matches recomputation at every minimizer") {
  const auto s = example24_scheme();
  for (double alpha : {0.3, 0.8, 1.7}) {
    const auto r = tikhonov_solve(s, Point{1.0}, alpha, bracket3());
    for (const auto& x : r.minimizers) {
      CHECK(std::abs(scheme_objective(s, x, Point{1.0}, alpha).value() - r.objective.value()) <= 1e-8);
    }
  }
}

TEST_CASE("1-D solver agrees with a dense brute-force grid") {
  struct Fwd {
    ForwardOp op;
    std::function<double(double)> f;
  };
  const std::vector<Fwd> forwards{{ForwardOp::identity(1), [](double x) { return x; }},
                                  {scalar_map_by_name("cube"), [](double x) { return x * x * x; }},
                                  {scalar_map_by_name("scale:2"), [](double x) { return 2 * x; }}};
  struct Disc {
    std::string id;
    std::function<double(double, double)> rho;
  };
  const auto pq = oracle::plain_quartic();
  const auto ph = oracle::plain_hinge2();
  auto v1 = [](double t) { return Vector::Constant(1, t); };
  const std::vector<Disc> discs{
      {"sqnorm", [](double z, double y) { return (z - y) * (z - y); }},
      {"pnorm:1", [](double z, double y) { return std::abs(z - y); }},
      {"bregman1:quartic", [&](double z, double y) { return oracle::plain_bregman(pq, v1(z), v1(y)); }},
      {"bregman2:quartic", [&](double z, double y) { return oracle::plain_bregman(pq, v1(y), v1(z)); }},
      {"bregman1:hinge2", [&](double z, double y) { return oracle::plain_bregman(ph, v1(z), v1(y)); }}};
  struct Reg {
    std::string id;
    std::function<double(double)> r;
  };
  const std::vector<Reg> regs{{"sqnorm", [](double x) { return x * x; }},
                              {"l1", [](double x) { return std::abs(x); }},
                              {"abs_shift", [](double x) { return std::abs(x + 1); }}};

  for (const auto& [y, alpha] : std::vector<std::pair<double, double>>{{0.7, 0.5}, {-0.5, 1.5}}) {
    for (const auto& f : forwards) {
      for (const auto& d : discs) {
        for (const auto& r : regs) {
          const auto s = scheme_1d(f.op, d.id, r.id);
          auto t = [&](double x) { return d.rho(f.f(x), y) + alpha * r.r(x); };
          const auto [ox, ov] = oracle::grid_argmin(t, -3, 3, 1000001);
          const auto rep = tikhonov_solve(s, Point{y}, alpha, bracket3());
          const std::string label = f.op.name() + " " + d.id + " " + r.id;
          CHECK_MESSAGE(t(rep.minimizer()[0]) <= ov + 1e-9, label);
          if (rep.unique()) CHECK_MESSAGE(std::abs(rep.minimizer()[0] - ox) <= 1e-4, label);
        }
      }
    }
  }
}

TEST_CASE("minimizer escaping the bracket is reported as unbounded") {
  const auto s = scheme_1d(ForwardOp::identity(1), "sqnorm", "sqnorm");
  CHECK_THROWS_AS(static_cast<void>(tikhonov_solve(s, Point{5.0}, 0.01, bracket3())), UnboundedError);
  CHECK_NOTHROW(static_cast<void>(tikhonov_solve(s, Point{5.0}, 0.01)));
}

TEST_CASE("linear schemes match the closed form") {
  std::mt19937_64 rng(52);
  for (int k = 0; k < 40; ++k) {
    const Matrix a = random_matrix(rng, 3, 3);
    const Vector y = oracle::uniform_vector(rng, 3, -1, 1);
    const double alpha = std::uniform_real_distribution<double>(0.05, 2.0)(rng);
    const auto rep = tikhonov_solve(hilbert_scheme(a), Point(y), alpha);
    CHECK((rep.minimizer().vec() - oracle::ridge(a, y, alpha)).norm() <= 1e-6);
    CHECK(rep.method == SolveMethod::projected_gradient);
  }
}

TEST_CASE("non-convex multi-dimensional problems are refused") {
  const VariationalScheme s(std::make_shared<ForwardOp>(ForwardOp::identity(2)), discrepancy_by_id("bregman2:quartic"),
                            make_sqnorm());
  CHECK_THROWS_AS(static_cast<void>(tikhonov_solve(s, Point{1.0, 1.0}, 1.0)), UnsupportedProblem);
}

TEST_CASE("Ivanov") {
  SUBCASE("quartic Bregman scheme, tau = 1") {
    const auto r = ivanov_solve(example24_scheme(), Point{1.0}, 1.0, bracket3());
    REQUIRE(r.unique());
    CHECK(std::abs(r.minimizer()[0]) <= 1e-8);
    CHECK(r.objective.value() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("inactive constraint gives least squares") {
    Matrix a(2, 2);
    a << 2, 0, 0, 1;
    const auto r = ivanov_solve(hilbert_scheme(a), Point{1.0, 1.0}, 1e6);
    CHECK(r.minimizer()[0] == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(r.minimizer()[1] == doctest::Approx(1.0).epsilon(1e-7));
  }
  SUBCASE("tau = 0 with squared norm") {
    Matrix a(2, 2);
    a << 2, 0, 0, 1;
    const auto r = ivanov_solve(hilbert_scheme(a), Point{1.0, 1.0}, 0.0);
    CHECK(r.minimizer().vec().norm() <= 1e-12);
    CHECK(r.objective.value() == doctest::Approx(2.0));
  }
  SUBCASE("empty sublevel set") {
    const auto s = scheme_1d(ForwardOp::identity(1), "sqnorm", "abs_shift+box:0:1");
    CHECK_THROWS_AS(static_cast<void>(ivanov_solve(s, Point{0.0}, 0.5)), InfeasibleError);
  }
  SUBCASE("feasibility on random linear problems") {
    std::mt19937_64 rng(53);
    for (int k = 0; k < 30; ++k) {
      const Matrix a = random_matrix(rng, 2, 2);
      const Vector y = oracle::uniform_vector(rng, 2, -2, 2);
      const double tau = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
      for (const char* reg : {"sqnorm", "l1"}) {
        const VariationalScheme s(std::make_shared<ForwardOp>(ForwardOp::linear(a)), make_sqnorm_discrepancy(),
                                  regularizer_by_id(reg));
        const auto r = ivanov_solve(s, Point(y), tau);
        CHECK(s.regularizer().value(r.minimizer()) <= ExtReal(tau + 1e-10));
      }
    }
  }
}

TEST_CASE("Morozov") {
  Matrix a(2, 2);
  a << 2, 0, 0, 1;
  SUBCASE("quartic Bregman scheme, delta = 1") {
    const auto r = morozov_solve(example24_scheme(), Point{1.0}, 1.0, bracket3());
    CHECK(std::abs(r.minimizer()[0]) <= 1e-8);
    CHECK(r.method == SolveMethod::grid_refine);
    CHECK_FALSE(r.note.empty());
  }
  SUBCASE("large delta returns the R-minimal point") {
    const auto r = morozov_solve(hilbert_scheme(a), Point{1.0, 1.0}, 2.5);
    CHECK(r.minimizer().vec().norm() == 0.0);
  }
  SUBCASE("generic delta makes the constraint active") {
    for (double delta : {0.1, 0.5, 1.2}) {
      const auto s = hilbert_scheme(a);
      const auto r = morozov_solve(s, Point{1.0, 1.0}, delta);
      CHECK(r.method == SolveMethod::alpha_bisection);
      CHECK(std::abs(s.data_fit(r.minimizer(), Point{1.0, 1.0}).value() - delta) <= 1e-6);
    }
  }
  SUBCASE("infeasible delta") {
    Matrix rank1(2, 2);
    rank1 << 1, 0, 0, 0;
    CHECK_THROWS_AS(static_cast<void>(morozov_solve(hilbert_scheme(rank1), Point{0.0, 1.0}, 0.5)), InfeasibleError);
  }
}

TEST_CASE("cross-relations between the three problems") {
  SUBCASE("quartic Bregman scheme") {
    CrossCheckParams p;
    p.converse_alphas = {0.25, 0.5, 1.0, 1.5, 2.0};
    const auto rep = cross_check_thm23(example24_scheme(), Point{1.0}, p, bracket3());
    CHECK_FALSE(rep.any_failed());
    REQUIRE(rep.rows.size() == 5);
    CHECK(rep.rows[0].status == CheckStatus::pass);
    CHECK(rep.rows[1].status == CheckStatus::pass);
    CHECK(rep.rows[4].status == CheckStatus::refuted);
  }
  SUBCASE("linear Hilbert scheme") {
    Matrix a(2, 2);
    a << 2, 0, 0, 1;
    CrossCheckParams p;
    p.tau = 0.3;
    p.delta = 0.5;
    const auto rep = cross_check_thm23(hilbert_scheme(a), Point{1.0, 1.0}, p);
    for (const auto& row : rep.rows) CHECK_MESSAGE(row.status == CheckStatus::pass, row.name);
  }
  SUBCASE("quadratic 1-D scheme, several alphas") {
    const auto s = scheme_1d(ForwardOp::identity(1), "sqnorm", "sqnorm");
    for (double alpha : {0.2, 1.0, 3.0}) {
      CrossCheckParams p;
      p.alpha = alpha;
      p.tau = 0.1;
      p.delta = 0.2;
      const auto rep = cross_check_thm23(s, Point{1.0}, p);
      for (const auto& row : rep.rows) CHECK_MESSAGE(row.status == CheckStatus::pass, row.name);
    }
  }
}

TEST_CASE("necessary condition for a Tikhonov minimizer") {
  const auto s = example24_scheme();
  const std::vector<Point> dirs{Point{1.0}, Point{-1.0}};
  const auto r = tikhonov_solve(s, Point{1.0}, 1.0, bracket3());
  const auto at_min = prop25_check(s, Point{1.0}, 1.0, r.minimizer(), dirs);
  CHECK(at_min.all_hold());
  for (const auto& row : at_min.rows) CHECK(std::abs(row.lhs - row.rhs) <= 1e-3);

  const auto at_zero = prop25_check(s, Point{1.0}, 1.0, Point{0.0}, dirs);
  CHECK_FALSE(at_zero.all_hold());
  CHECK_FALSE(at_zero.rows[1].holds);
  CHECK(at_zero.rows[1].lhs == doctest::Approx(1.0));
  CHECK(std::abs(at_zero.rows[1].rhs) <= 1e-5);

  // Smooth quadratic scheme at its exact minimizer: -alpha R' = f' in every direction.
  Matrix a(2, 2);
  a << 2, 0, 0, 1;
  const auto h = hilbert_scheme(a);
  const Point xs = tikhonov_closed_form(a, Point{1.0, 1.0}, 1.0);
  const auto q = prop25_check(h, Point{1.0, 1.0}, 1.0, xs, {Point{1.0, 0.0}, Point{0.3, -0.7}, Point{-1.0, 2.0}});
  for (const auto& row : q.rows) CHECK(row.lhs == doctest::Approx(row.rhs).epsilon(1e-6).scale(1.0));
}

TEST_CASE("Pareto trace") {
  Matrix a(2, 2);
  a << 2, 0, 0, 1;
  const auto s = hilbert_scheme(a);
  const std::vector<double> alphas{0.1, 0.3, 1.0, 3.0, 10.0};
  const auto rows = pareto_trace(s, Point{1.0, 1.0}, alphas);
  CHECK(pareto_no_crossing(rows));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Vector xs = oracle::ridge(a, Vector::Ones(2), alphas[k]);
    CHECK(rows[k].reg == doctest::Approx(xs.squaredNorm()).epsilon(1e-6));
  }

  const auto twice = pareto_trace(s, Point{1.0, 1.0}, {1.0, 1.0});
  CHECK(twice[0].rho == twice[1].rho);
  CHECK(twice[0].reg == twice[1].reg);
  CHECK_THROWS_AS(static_cast<void>(pareto_trace(s, Point{1.0, 1.0}, {1.0, 0.5})), Error);

  const auto fig = pareto_trace(example24_scheme(), Point{1.0}, {0.5, 1.0, 1.5}, bracket3());
  for (const auto& row : fig) {
    const auto [ox, ov] =
        oracle::grid_argmin([&](double x) { return oracle::ex24_T(x, row.alpha); }, -3, 3, 1000001);
    CHECK(std::abs(row.x->vec()[0] - ox) <= 1e-4);
    CHECK(row.rho + row.alpha * row.reg == doctest::Approx(ov).epsilon(1e-9));
  }
}

TEST_CASE("linear forward operators") {
  std::mt19937_64 rng(54);
  const Matrix m = random_matrix(rng, 3, 2);
  const auto f = ForwardOp::linear(m);
  for (int k = 0; k < 50; ++k) {
    const Vector x1 = oracle::uniform_vector(rng, 2, -3, 3), x2 = oracle::uniform_vector(rng, 2, -3, 3);
    const Vector y = oracle::uniform_vector(rng, 3, -3, 3);
    const double c = std::uniform_real_distribution<double>(-2, 2)(rng);
    CHECK((f.apply(Point(Vector(x1 + c * x2))).vec() - f.apply(Point(x1)).vec() - c * f.apply(Point(x2)).vec())
              .norm() <= 1e-10);
    CHECK(std::abs(f.apply(Point(x1)).vec().dot(y) - x1.dot(f.adjoint_apply(Point(y)).vec())) <= 1e-10);
  }
  CHECK_THROWS_AS(static_cast<void>(scalar_map_by_name("cube").adjoint_apply(Point{1.0})), Error);
}

TEST_CASE("solver configuration is validated") {
  SolverConfig cfg;
  cfg.grid_points = 1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.bracket_lo = 1.0;
  cfg.bracket_hi = -1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.xtol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}
