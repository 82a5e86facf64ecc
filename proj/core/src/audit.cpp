#include "wgf/audit.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "wgf/objective.hpp"

namespace wgf {

namespace {

double central_diff(const std::function<double(const std::vector<double>&)>& f,
                    std::vector<double> u, std::size_t i, double h) {
  u[i] += h;
  double fp = f(u);
  u[i] -= 2.0 * h;
  double fm = f(u);
  return (fp - fm) / (2.0 * h);
}

double mixed_diff(const std::function<double(const std::vector<double>&)>& f,
                  std::vector<double> u, std::size_t i, std::size_t j,
                  double hi, double hj) {
  auto eval = [&](double si, double sj) {
    std::vector<double> v = u;
    v[i] += si * hi;
    v[j] += sj * hj;
    return f(v);
  };
  return (eval(1, 1) - eval(1, -1) - eval(-1, 1) + eval(-1, -1)) /
         (4.0 * hi * hj);
}

}  // namespace

AuditReport derivative_audit(const Preset& preset, int nx, unsigned seed,
                             bool corrupt_gradient) {
  Preset p = preset;
  p.nx = nx;
  if (p.dim == 2) p.ny = nx;
  Grid grid = p.make_grid();

  JKOStepProblem prob;
  prob.grid = grid;
  prob.spec = build_energy_spec(p, grid);
  prob.tau = p.tau;
  prob.fisher = FisherCoeff{p.fisher_coeff(p.tau)};
  prob.hessian_mode = p.hessian_mode;
  prob.beta_tilde_multiplier = p.beta_tilde_multiplier;
  prob.rho_prev = initial_density(p, grid);

  StateLayout lay(grid);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.25, 1.75);
  std::uniform_real_distribution<double> sym(-0.2, 0.2);
  std::vector<double> u(static_cast<std::size_t>(lay.size()));
  for (int i = 0; i < lay.n_rho(); ++i)
    u[i] = prob.rho_prev.values[i] * unit(rng) + 0.05;
  for (int i = lay.n_rho(); i < lay.size(); ++i) u[i] = sym(rng);

  auto f_exact = [&](const std::vector<double>& v) {
    return objective_value(v, prob);
  };
  auto f_surr = [&](const std::vector<double>& v) {
    return surrogate_objective_value(v, prob);
  };

  AuditReport rep;

  std::vector<double> grad = objective_gradient(u, prob);
  if (corrupt_gradient) grad[0] += 1e-3 * (1.0 + std::abs(grad[0]));
  double gmax = 1.0;
  for (double g : grad) gmax = std::max(gmax, std::abs(g));
  for (std::size_t i = 0; i < u.size(); ++i) {
    double h = 1e-5 * std::max(1.0, std::abs(u[i]));
    double fd = central_diff(f_exact, u, i, h);
    rep.gradient_rel_err =
        std::max(rep.gradient_rel_err, std::abs(fd - grad[i]) / gmax);
  }

  auto hess_err = [&](const SparseMatrix& h_analytic, auto&& f) {
    auto dense = h_analytic.to_dense();
    double hmax = 1.0;
    for (const auto& row : dense)
      for (double v : row) hmax = std::max(hmax, std::abs(v));
    double err = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i; j < u.size(); ++j) {
        // Small steps: near-floor densities give the kinetic term fourth
        // derivatives of order 1/s^5.
        double hi = 2e-5 * std::max(1.0, std::abs(u[i]));
        double hj = 2e-5 * std::max(1.0, std::abs(u[j]));
        double fd = mixed_diff(f, u, i, j, hi, hj);
        err = std::max(err, std::abs(fd - dense[i][j]) / hmax);
      }
    return err;
  };

  rep.hessian_rel_err =
      hess_err(objective_hessian(u, prob, HessianMode::exact), f_exact);
  rep.surrogate_hessian_rel_err =
      hess_err(objective_hessian(u, prob, HessianMode::surrogate), f_surr);

  rep.pass = rep.gradient_rel_err <= rep.threshold &&
             rep.hessian_rel_err <= rep.threshold &&
             rep.surrogate_hessian_rel_err <= rep.threshold;
  return rep;
}

}  // namespace wgf
