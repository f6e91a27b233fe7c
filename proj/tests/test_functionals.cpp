#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "varreg/functionals.hpp"
#include "varreg/registry.hpp"
#include "varreg/regularizers.hpp"

using namespace varreg;

namespace {

const char* const kFunctionals[] = {"quartic", "squared", "entropy", "hinge2"};

oracle::PlainJ plain(const std::string& id) {
  if (id == "quartic") return oracle::plain_quartic();
  if (id == "squared") return oracle::plain_squared();
  if (id == "entropy") return oracle::plain_entropy();
  return oracle::plain_hinge2();
}

}  // namespace

TEST_CASE("Bregman distance examples") {
  const auto sq = functional_by_id("squared");
  const auto q = functional_by_id("quartic");
  CHECK(bregman(*sq, Point{3.0}, Point{1.0}) == ExtReal(2.0));
  CHECK(bregman(*q, Point{1.0}, Point{0.0}) == ExtReal(1.0));
  CHECK(bregman(*q, Point{0.0}, Point{1.0}) == ExtReal(3.0));
}

TEST_CASE("Bregman distance needs a gradient at the base point") {
  const auto e = functional_by_id("entropy");
  CHECK_THROWS_AS(static_cast<void>(bregman(*e, Point{1.0, 1.0}, Point{0.0, 1.0})), UndefinedGradient);
  CHECK(bregman(*e, Point{-1.0, 1.0}, Point{1.0, 1.0}).is_infinite());
  CHECK(bregman(*e, Point{0.0, 1.0}, Point{1.0, 1.0}).is_finite());
}

TEST_CASE("entropy value with quadrature weights") {
  const EntropyFunctional e;
  CHECK(e.value(Point{1.0, 1.0}).value() == doctest::Approx(-1.0));
  CHECK(e.value(Point{std::exp(1.0)}).value() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(e.value(Point{0.0, 0.0}).value() == 0.0);
  CHECK_FALSE(e.value(Point{-0.1}).has_value());
  CHECK_FALSE(e.gradient(Point{0.0, 1.0}).has_value());
}

TEST_CASE("values, gradients and distances agree with plain formulas") {
  std::mt19937_64 rng(21);
  for (const char* id : kFunctionals) {
    const auto j = functional_by_id(id);
    const auto p = plain(id);
    for (int k = 0; k < 200; ++k) {
      const Point z = j->sample(rng, 3);
      const Point y = j->sample(rng, 3);
      CHECK(j->value(z).value() == doctest::Approx(p.value(z.vec())).epsilon(1e-12));
      CHECK(bregman_signed(*j, z, y) ==
            doctest::Approx(oracle::plain_bregman(p, z.vec(), y.vec())).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("gradients match central differences") {
  std::mt19937_64 rng(22);
  for (const char* id : kFunctionals) {
    const auto j = functional_by_id(id);
    for (int k = 0; k < 100; ++k) {
      const Point y = j->sample(rng, 2);
      const Vector g = *j->gradient(y);
      for (Eigen::Index i = 0; i < 2; ++i) {
        auto f = [&](double t) {
          Vector v = y.vec();
          v[i] = t;
          return *j->value(Point(v));
        };
        const double fd = oracle::central_difference(f, y[i], 1e-6);
        CHECK_MESSAGE(std::abs(g[i] - fd) <= 1e-6 * std::max(1.0, std::abs(g[i])), id);
      }
    }
  }
}

TEST_CASE("convexity on sampled chords") {
  std::mt19937_64 rng(23);
  for (const char* id : kFunctionals) {
    const auto j = functional_by_id(id);
    for (int k = 0; k < 300; ++k) {
      const Point x = j->sample(rng, 2);
      const Point z = j->sample(rng, 2);
      for (double t : {0.25, 0.5, 0.75}) {
        const Point m(Vector(t * x.vec() + (1 - t) * z.vec()));
        CHECK(*j->value(m) <= t * *j->value(x) + (1 - t) * *j->value(z) + 1e-12);
      }
    }
  }
}

TEST_CASE("Bregman distances are nonnegative and vanish on the diagonal") {
  std::mt19937_64 rng(24);
  for (const char* id : kFunctionals) {
    const auto j = functional_by_id(id);
    for (int k = 0; k < 500; ++k) {
      const Point z = j->sample(rng, 2);
      const Point y = j->sample(rng, 2);
      CHECK(bregman_signed(*j, z, y) >= -1e-12);
      CHECK(bregman(*j, y, y) == ExtReal(0.0));
    }
  }
}

TEST_CASE("hinge: distance vanishes exactly when gradients agree") {
  const auto j = functional_by_id("hinge2");
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  int both_zero = 0, both_nonzero = 0;
  for (int k = 0; k < 2000; ++k) {
    const Point a{u(rng)}, b{u(rng)};
    const bool d_zero = std::abs(bregman_signed(*j, a, b)) <= 1e-10;
    const bool g_equal = (*j->gradient(a) - *j->gradient(b)).norm() <= 1e-6;
    CHECK(d_zero == g_equal);
    (d_zero ? both_zero : both_nonzero)++;
  }
  CHECK(both_zero > 0);
  CHECK(both_nonzero > 0);
}

TEST_CASE("definiteness probe") {
  SUBCASE("strictly convex functionals admit no witness") {
    for (const char* id : {"quartic", "squared", "entropy"}) {
      const auto rep = definiteness_probe(*functional_by_id(id), 1000, 31);
      CHECK_FALSE_MESSAGE(rep.found, id);
      CHECK(rep.trials == 1000);
    }
  }
  SUBCASE("hinge2 yields the symmetric flat pair") {
    const auto rep = definiteness_probe(*functional_by_id("hinge2"), 1000, 31);
    REQUIRE(rep.found);
    CHECK(rep.pair->first == Point{0.5});
    CHECK(rep.pair->second == Point{-0.5});
    CHECK(rep.divergence == 0.0);
    CHECK(bregman(*functional_by_id("hinge2"), rep.pair->first, rep.pair->second) == ExtReal(0.0));
  }
}

TEST_CASE("regularizer directional derivatives") {
  const auto shift = make_abs_shift();
  CHECK(*shift->directional_derivative(Point{0.0}, Point{1.0}) == 1.0);
  CHECK(*shift->directional_derivative(Point{-1.0}, Point{1.0}) == 1.0);
  CHECK(*shift->directional_derivative(Point{-1.0}, Point{-1.0}) == 1.0);
  CHECK(*shift->directional_derivative(Point{0.0}, Point{-1.0}) == -1.0);
  CHECK(*make_sqnorm()->directional_derivative(Point{0.0}, Point{0.7}) == 0.0);

  const auto boxed = regularizer_by_id("sqnorm+box:-1:1");
  CHECK_FALSE(boxed->directional_derivative(Point{1.0}, Point{1.0}).has_value());
  CHECK(*boxed->directional_derivative(Point{1.0}, Point{-1.0}) == doctest::Approx(-2.0));
}

TEST_CASE("closed-form directional derivatives match one-sided differences") {
  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const char* id : {"sqnorm", "l1", "abs_shift", "l1+box:-3:3"}) {
    const auto r = regularizer_by_id(id);
    for (int k = 0; k < 300; ++k) {
      const Point x{u(rng), u(rng)};
      const Point v{u(rng), u(rng)};
      const auto closed = r->directional_derivative(x, v);
      const auto fd = one_sided_difference(*r, x, v, 1e-7);
      REQUIRE(closed.has_value());
      REQUIRE(fd.has_value());
      CHECK_MESSAGE(std::abs(*closed - *fd) <= 1e-4, id);
    }
  }
}

TEST_CASE("regularizers are nonnegative and sublevel projections are feasible") {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> u(-3.0, 3.0), t(0.0, 4.0);
  for (const char* id : {"sqnorm", "l1", "abs_shift", "sqnorm+box:-1:2", "abs_shift+box:-2:2"}) {
    const auto r = regularizer_by_id(id);
    for (int k = 0; k < 200; ++k) {
      const Point x{u(rng), u(rng)};
      const double tau = t(rng);
      CHECK(r->value(x) >= ExtReal(0.0));
      const auto p = r->sublevel_projection(x, tau);
      if (r->value(r->minimizer(2)) <= ExtReal(tau)) {
        REQUIRE_MESSAGE(p.has_value(), id);
        CHECK_MESSAGE(r->value(*p) <= ExtReal(tau + 1e-10), id);
      } else {
        CHECK_FALSE(p.has_value());
      }
    }
  }
}

TEST_CASE("sublevel projection is the nearest feasible point") {
  // For the l1 ball, brute-force the nearest point over a fine grid of the ball.
  const auto r = make_l1();
  std::mt19937_64 rng(28);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 20; ++k) {
    const Point x{u(rng), u(rng)};
    const auto p = r->sublevel_projection(x, 1.0);
    REQUIRE(p.has_value());
    double best = HUGE_VAL;
    const int n = 801;
    for (int i = 0; i < n; ++i) {
      const double a = -1.0 + 2.0 * i / (n - 1);
      for (double b : {1.0 - std::abs(a), -(1.0 - std::abs(a))}) best = std::min(best, distance(x, Point{a, b}));
    }
    if (r->value(x) <= ExtReal(1.0)) best = 0.0;
    CHECK(distance(x, *p) <= best + 1e-6);
  }
}

TEST_CASE("regularizer prox minimizes t R(p) + |p - x|^2 / 2") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-3.0, 3.0), tt(0.01, 2.0);
  for (const char* id : {"sqnorm", "l1", "abs_shift", "sqnorm+box:-1:1"}) {
    const auto r = regularizer_by_id(id);
    for (int k = 0; k < 50; ++k) {
      const double x = u(rng), t = tt(rng);
      const double p = r->prox(Point{x}, t)[0];
      auto phi = [&](double q) {
        const ExtReal v = r->value(Point{q});
        return v.is_infinite() ? HUGE_VAL : t * v.value() + 0.5 * (q - x) * (q - x);
      };
      const auto [qx, qv] = oracle::grid_argmin(phi, -4.0, 4.0, 160001);
      CHECK_MESSAGE(phi(p) <= qv + 1e-9, id);
      CHECK_MESSAGE(std::abs(p - qx) <= 1e-4, id);
    }
  }
}

TEST_CASE("unknown ids are rejected") {
  CHECK_THROWS_AS(static_cast<void>(functional_by_id("cubic")), UnknownId);
  CHECK_THROWS_AS(static_cast<void>(regularizer_by_id("l2")), UnknownId);
  CHECK_THROWS_AS(static_cast<void>(regularizer_by_id("sqnorm+box:1")), UnknownId);
  CHECK_THROWS_AS(static_cast<void>(regularizer_by_id("sqnorm+box:a:b")), UnknownId);
}
