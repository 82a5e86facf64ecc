#pragma once

#include <vector>

#include "wgf/grid.hpp"

namespace wgf {

/// Self-similar porous-medium profile parameters. The default values match
/// the verification runs: m = 2, t0 = 1e-3, C = 0.8.
struct BarenblattParams {
  double m_exp = 2.0;
  double C = 0.8;
  double t0 = 1e-3;
};

/// rho(x,t) = (t+t0)^{-1/(m+1)} ( C - (m-1)/(2m(m+1)) x^2 (t+t0)^{-2/(m+1)} )_+^{1/(m-1)}
double barenblatt(double x, double t, const BarenblattParams& p);

/// Equilibrium of the m=2 nonlinear Fokker-Planck flow with V = x^2/2:
/// (C - x^2/4)_+ with C = (3 M / 8)^{2/3}.
double nfp_steady(double x, double m_exp, double mass);

/// Equilibrium of the 1D aggregation flow with quadratic attraction and
/// logarithmic repulsion: (1/pi) sqrt((2 - x^2)_+).
double agg1d_steady(double x);

/// Stationary state of the quadratic-potential DLSS flow: the standard
/// Gaussian density.
double dlss_steady(double x);

/// Backward-Euler centered-difference heat solve with no-flux boundaries;
/// advances ceil(t_max/tau) uniform steps via tridiagonal solves. 1D only.
DensityField reference_heat_solver(const DensityField& rho0, double tau,
                                   double t_max);

/// l1 error weighted by cell volume: sum |a - b| * vol.
double l1_err(const DensityField& a, const DensityField& b);
double linf_err(const DensityField& a, const DensityField& b);
/// Richardson error between a run at tau and one at tau/2 on the same grid.
double richardson_err(const DensityField& rho_tau,
                      const DensityField& rho_tau_half);

/// Least-squares slope of log(y) against log(x); used for order fits.
double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y);
/// Least-squares fit of y = a + b x returning (a, b, r_squared).
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wgf
