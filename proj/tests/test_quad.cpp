#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "vlcsim/constants.hpp"
#include "vlcsim/quad.hpp"

using namespace vlcsim;

TEST_CASE("elementary integrals") {
  QuadSpec spec;
  spec.min_panels = 1;
  CHECK(std::fabs(integrate([](double) { return 1.0; }, 0.0, kPi, spec).value - kPi) < 1e-14);
  CHECK(std::fabs(integrate([](double x) { return x * x; }, 0.0, 1.0, spec).value - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("highly oscillatory integrand with mandated panelization") {
  // Closed form: Int_0^pi sin^2(1000 x) dx = pi/2.
  QuadSpec spec;
  spec.min_panels = 4000;
  spec.rel_tol = 1e-10;
  const double v = integrate([](double x) { return std::pow(std::sin(1000.0 * x), 2); },
                             0.0, kPi, spec).value;
  CHECK(std::fabs(v - kPi / 2.0) < 1e-8);
}

TEST_CASE("oscillatory_panels") {
  CHECK(oscillatory_panels(0.1, 0.0, 1.0, 8) == 80);
  CHECK(oscillatory_panels(2.0, 0.0, 1.0, 1) == 1);
  CHECK(oscillatory_panels(1e-4, 0.0, 2.5e-3, 8) == 200);
  CHECK_THROWS_AS(oscillatory_panels(0.0, 0.0, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(oscillatory_panels(0.1, 0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("linearity on random polynomial pairs") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  QuadSpec spec;
  spec.min_panels = 4;
  for (int trial = 0; trial < 20; ++trial) {
    double cf[5], cg[5];
    for (auto& c : cf) c = coef(rng);
    for (auto& c : cg) c = coef(rng);
    const auto poly = [](const double* c, double x) {
      return c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4])));
    };
    const double alpha = coef(rng), beta = coef(rng);
    const auto f = [&](double x) { return poly(cf, x); };
    const auto g = [&](double x) { return poly(cg, x); };
    const auto fg = [&](double x) { return alpha * f(x) + beta * g(x); };
    const double lhs = integrate(fg, -1.0, 2.0, spec).value;
    const double rhs = alpha * integrate(f, -1.0, 2.0, spec).value +
                       beta * integrate(g, -1.0, 2.0, spec).value;
    CHECK(std::fabs(lhs - rhs) <= 10.0 * spec.rel_tol * (std::fabs(lhs) + 1.0));
  }
}

TEST_CASE("interval additivity") {
  const auto f = [](double x) { return std::exp(-x) * std::sin(7.0 * x); };
  QuadSpec spec;
  spec.min_panels = 8;
  spec.rel_tol = 1e-10;
  const double whole = integrate(f, 0.0, 3.0, spec).value;
  const double parts = integrate(f, 0.0, 1.1, spec).value + integrate(f, 1.1, 3.0, spec).value;
  CHECK(std::fabs(whole - parts) < 1e-9);
}

TEST_CASE("error bound shrinks when min_panels doubles") {
  // In the regime oscillatory_panels targets -- the initial panelization
  // resolves every lobe -- refinement strictly tightens the reported bound.
  const auto f = [](double x) { return std::sin(13.0 * x) + x * x * x * x; };
  const auto g = [](double x) { return std::exp(x); };
  QuadSpec loose;
  loose.rel_tol = 1e-3;
  for (int n : {64, 128, 256}) {
    QuadSpec coarse = loose, fine = loose;
    coarse.min_panels = n;
    fine.min_panels = 2 * n;
    CHECK(integrate(f, 0.0, 2.0, fine).error_bound <=
          integrate(f, 0.0, 2.0, coarse).error_bound);
    CHECK(integrate(g, 0.0, 2.0, fine).error_bound <=
          integrate(g, 0.0, 2.0, coarse).error_bound);
  }
}

TEST_CASE("determinism") {
  const auto f = [](double x) { return std::sin(200.0 * x) / (1.0 + x * x); };
  QuadSpec spec;
  spec.min_panels = 100;
  const double a = integrate(f, 0.0, 5.0, spec).value;
  const double b = integrate(f, 0.0, 5.0, spec).value;
  CHECK(a == b);
}

TEST_CASE("convergence error carries the best estimate") {
  QuadSpec spec;
  spec.min_panels = 1;
  spec.max_depth = 2;
  spec.rel_tol = 1e-14;
  const auto f = [](double x) { return std::sin(40.0 * x); };
  try {
    integrate(f, 0.0, 1.0, spec);
    FAIL("expected QuadConvergenceError");
  } catch (const QuadConvergenceError& e) {
    // Exact value: (1 - cos 40)/40.
    const double exact = (1.0 - std::cos(40.0)) / 40.0;
    CHECK(std::isfinite(e.best_estimate));
    CHECK(e.error_bound > 0.0);
    CHECK(std::fabs(e.best_estimate - exact) < 0.5);
  }
}

TEST_CASE("input validation") {
  QuadSpec bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, bad), std::invalid_argument);
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 1.0, QuadSpec{}), std::invalid_argument);
}
