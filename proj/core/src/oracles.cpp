#include "wgf/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace wgf {

double barenblatt(double x, double t, const BarenblattParams& p) {
  const double m = p.m_exp;
  const double tt = t + p.t0;
  const double scale = std::pow(tt, -1.0 / (m + 1.0));
  const double arg =
      p.C - (m - 1.0) / (2.0 * m * (m + 1.0)) * x * x *
                std::pow(tt, -2.0 / (m + 1.0));
  if (arg <= 0.0) return 0.0;
  return scale * std::pow(arg, 1.0 / (m - 1.0));
}

double nfp_steady(double x, double m_exp, double mass) {
  if (m_exp != 2.0)
    throw std::invalid_argument("nfp_steady: closed form requires m = 2");
  const double C = std::pow(3.0 * mass / 8.0, 2.0 / 3.0);
  const double v = C - 0.25 * x * x;
  return v > 0.0 ? v : 0.0;
}

double agg1d_steady(double x) {
  const double v = 2.0 - x * x;
  return v > 0.0 ? std::sqrt(v) / M_PI : 0.0;
}

double dlss_steady(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

DensityField reference_heat_solver(const DensityField& rho0, double tau,
                                   double t_max) {
  const Grid& g = rho0.grid;
  if (g.dim != 1)
    throw std::invalid_argument("reference_heat_solver: 1D grids only");
  const int n = g.nx;
  const double r = tau / (g.dx * g.dx);
  const int steps = static_cast<int>(std::ceil(t_max / tau - 1e-12));

  // (I - tau L) rho_new = rho_old with the no-flux Laplacian; rows sum to 1,
  // so each solve conserves the discrete mass.
  std::vector<double> lower(n, -r), diag(n, 1.0 + 2.0 * r), upper(n, -r);
  diag[0] = 1.0 + r;
  diag[n - 1] = 1.0 + r;

  std::vector<double> rho = rho0.values, cp(n), dp(n);
  for (int s = 0; s < steps; ++s) {
    cp[0] = upper[0] / diag[0];
    dp[0] = rho[0] / diag[0];
    for (int i = 1; i < n; ++i) {
      double denom = diag[i] - lower[i] * cp[i - 1];
      cp[i] = upper[i] / denom;
      dp[i] = (rho[i] - lower[i] * dp[i - 1]) / denom;
    }
    rho[n - 1] = dp[n - 1];
    for (int i = n - 2; i >= 0; --i) rho[i] = dp[i] - cp[i] * rho[i + 1];
  }
  DensityField out(g);
  out.values = std::move(rho);
  return out;
}

namespace {
void check_same_grid(const DensityField& a, const DensityField& b) {
  if (a.grid.n_cells() != b.grid.n_cells() || a.grid.dim != b.grid.dim)
    throw std::invalid_argument("error metric: fields on different grids");
}
}  // namespace

double l1_err(const DensityField& a, const DensityField& b) {
  check_same_grid(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    s += std::abs(a.values[i] - b.values[i]);
  return s * a.grid.cell_volume();
}

double linf_err(const DensityField& a, const DensityField& b) {
  check_same_grid(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    s = std::max(s, std::abs(a.values[i] - b.values[i]));
  return s;
}

double richardson_err(const DensityField& rho_tau,
                      const DensityField& rho_tau_half) {
  return l1_err(rho_tau, rho_tau_half);
}

double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  return fit_linear(lx, ly).slope;
}

LinearFit fit_linear(const std::vector<double>& x,
                     const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_linear: need two or more points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  LinearFit f;
  const double denom = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0, ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double fit = f.intercept + f.slope * x[i];
    ss_res += (y[i] - fit) * (y[i] - fit);
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

}  // namespace wgf
