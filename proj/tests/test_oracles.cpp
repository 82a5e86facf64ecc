#include <doctest.h>

#include <cmath>

#include "wgf/oracles.hpp"

using namespace wgf;

TEST_CASE("barenblatt pointwise values") {
  BarenblattParams p{2.0, 0.8, 1e-3};
  // Outside the support the positive part clips to zero.
  CHECK(barenblatt(5.0, 0.0, p) == 0.0);
  // At x = 0 with t + t0 = 1: rho = C.
  CHECK(barenblatt(0.0, 1.0 - 1e-3, p) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(barenblatt(0.1, 0.01, p) >= 0.0);
}

TEST_CASE("barenblatt solves the porous medium equation") {
  // Residual of d_t rho - d_xx rho^m at interior points shrinks under
  // refinement of the finite differences.
  BarenblattParams p{2.0, 0.8, 1e-3};
  const double t = 0.01;
  auto residual = [&](double hx, double ht) {
    double worst = 0.0;
    for (double x = -0.2; x <= 0.2; x += 0.05) {
      double dt = (barenblatt(x, t + ht, p) - barenblatt(x, t - ht, p)) /
                  (2.0 * ht);
      auto r2 = [&](double xx) {
        double r = barenblatt(xx, t, p);
        return r * r;
      };
      double dxx = (r2(x + hx) - 2.0 * r2(x) + r2(x - hx)) / (hx * hx);
      worst = std::max(worst, std::abs(dt - dxx));
    }
    return worst;
  };
  double coarse = residual(4e-3, 4e-4);
  double fine = residual(1e-3, 1e-4);
  CHECK(fine < coarse);
  CHECK(fine < 2e-2);
}

TEST_CASE("barenblatt conserves mass in time") {
  BarenblattParams p{2.0, 0.8, 1e-3};
  // Quadrature over the (known) support keeps the integrand smooth; the
  // profile inside is a polynomial for m = 2.
  auto mass_at = [&](double t) {
    const double tt = t + p.t0;
    double r = std::sqrt(p.C * 2.0 * p.m_exp * (p.m_exp + 1.0) /
                         (p.m_exp - 1.0)) *
               std::pow(tt, 1.0 / (p.m_exp + 1.0));
    const int n = 2000;
    const double h = 2.0 * r / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += barenblatt(-r + (i + 0.5) * h, t, p) * h;
    return s;
  };
  double m0 = mass_at(0.0);
  for (double t : {0.002, 0.005, 0.01})
    CHECK(std::abs(mass_at(t) - m0) < 1e-6);
}

TEST_CASE("steady state values") {
  CHECK(nfp_steady(0.0, 2.0, 0.125) == doctest::Approx(0.13003).epsilon(1e-4));
  CHECK(nfp_steady(5.0, 2.0, 0.125) == 0.0);
  CHECK_THROWS_AS(nfp_steady(0.0, 3.0, 1.0), std::invalid_argument);

  CHECK(agg1d_steady(0.0) ==
        doctest::Approx(std::sqrt(2.0) / M_PI).epsilon(1e-12));
  CHECK(agg1d_steady(0.0) == doctest::Approx(0.45016).epsilon(1e-4));
  CHECK(agg1d_steady(std::sqrt(2.0)) == 0.0);
  CHECK(agg1d_steady(-2.0) == 0.0);

  CHECK(dlss_steady(0.0) == doctest::Approx(0.39894).epsilon(1e-4));
}

TEST_CASE("steady states are nonnegative and integrate to their mass") {
  auto integrate = [](auto&& f, double a, double b, int n) {
    double h = (b - a) / n, s = 0.0;
    for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h) * h;
    return s;
  };
  CHECK(integrate([](double x) { return agg1d_steady(x); }, -2.0, 2.0, 20000) ==
        doctest::Approx(1.0).epsilon(1e-5));
  CHECK(integrate([](double x) { return dlss_steady(x); }, -8.0, 8.0, 20000) ==
        doctest::Approx(1.0).epsilon(1e-8));
  double m = 0.125;
  CHECK(integrate([&](double x) { return nfp_steady(x, 2.0, m); }, -1.0, 1.0,
                  20000) == doctest::Approx(m).epsilon(1e-6));
}

TEST_CASE("reference heat solver: constants and mass") {
  Grid g = Grid::make_1d(40, 0.0, 2.0);
  DensityField rho(g, 0.7);
  DensityField out = reference_heat_solver(rho, 1e-3, 0.05);
  for (double v : out.values) CHECK(v == doctest::Approx(0.7).epsilon(1e-13));

  DensityField bump(g);
  for (int i = 0; i < g.nx; ++i)
    bump.values[i] = std::exp(-10.0 * std::pow(g.x_center(i) - 1.0, 2));
  DensityField evolved = reference_heat_solver(bump, 1e-3, 0.1);
  CHECK(evolved.mass() == doctest::Approx(bump.mass()).epsilon(1e-12));
}

TEST_CASE("reference heat solver: cosine mode decay rate") {
  // rho = 1 + cos(pi x / L) decays like exp(-pi^2 t / L^2).
  const double L = 2.0;
  Grid g = Grid::make_1d(800, 0.0, L);
  DensityField rho(g);
  for (int i = 0; i < g.nx; ++i)
    rho.values[i] = 1.0 + std::cos(M_PI * g.x_center(i) / L);
  const double t = 0.25;
  DensityField out = reference_heat_solver(rho, t / 4000.0, t);
  double amp = 0.0;
  for (int i = 0; i < g.nx; ++i)
    amp = std::max(amp, std::abs(out.values[i] - 1.0));
  double expected = std::exp(-M_PI * M_PI * t / (L * L));
  CHECK(amp == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("error metrics") {
  Grid g = Grid::make_1d(10, 0.0, 1.0);
  DensityField a(g, 0.3), b(g, 0.3);
  CHECK(l1_err(a, b) == 0.0);
  CHECK(linf_err(a, b) == 0.0);
  b.values[4] += 0.05;
  CHECK(l1_err(a, b) == doctest::Approx(0.05 * g.dx).epsilon(1e-15));
  CHECK(linf_err(a, b) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(richardson_err(a, b) == l1_err(a, b));
}

TEST_CASE("l1 error agrees with quadrature of |f - g| under refinement") {
  auto f = [](double x) { return std::sin(3.0 * x) + 1.5; };
  auto gfun = [](double x) { return 0.5 * x * x + 1.0; };
  // High-resolution quadrature of the continuum distance.
  const int fine = 200000;
  double exact = 0.0;
  for (int i = 0; i < fine; ++i) {
    double x = (i + 0.5) / fine;
    exact += std::abs(f(x) - gfun(x)) / fine;
  }
  Grid g = Grid::make_1d(4000, 0.0, 1.0);
  DensityField fa(g), fb(g);
  for (int i = 0; i < g.nx; ++i) {
    fa.values[i] = f(g.x_center(i));
    fb.values[i] = gfun(g.x_center(i));
  }
  CHECK(l1_err(fa, fb) == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("linear and log-log fits") {
  std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
  std::vector<double> y = {3.0, 5.0, 7.0, 9.0};
  LinearFit f = fit_linear(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));

  std::vector<double> taus = {0.1, 0.05, 0.025};
  std::vector<double> errs;
  for (double t : taus) errs.push_back(0.7 * t * t);
  CHECK(fit_loglog_slope(taus, errs) == doctest::Approx(2.0).epsilon(1e-10));
}
