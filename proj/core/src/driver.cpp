#include "wgf/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace wgf {

Grid Preset::make_grid() const {
  return dim == 1 ? Grid::make_1d(nx, xmin, xmax)
                  : Grid::make_2d(nx, ny, xmin, xmax, ymin, ymax);
}

Preset apply_overrides(const Preset& preset, const RunOverrides& o) {
  Preset p = preset;
  if (o.nx) {
    p.nx = *o.nx;
    if (p.dim == 2 && !o.ny) p.ny = *o.nx;
  }
  if (o.ny) {
    if (p.dim == 1)
      throw std::invalid_argument("override ny: preset '" + p.name +
                                  "' is one-dimensional");
    p.ny = *o.ny;
  }
  if (o.tau) p.tau = *o.tau;
  if (o.beta) {
    if (p.fisher_mode == FisherMode::dlss)
      throw std::invalid_argument(
          "override beta: preset '" + p.name +
          "' uses the DLSS coefficient, beta does not apply");
    if (!(*o.beta > 0.0)) throw std::invalid_argument("override beta: <= 0");
    p.beta_inv_sq = 1.0 / (*o.beta * *o.beta);
  }
  if (o.t_max) p.t_max = *o.t_max;
  if (o.tol) p.tol = *o.tol;
  if (o.qp_tol) p.qp_tol = *o.qp_tol;
  if (o.beta_tilde_mult) {
    if (*o.beta_tilde_mult < 1)
      throw std::invalid_argument("override beta_tilde_mult: must be >= 1");
    p.beta_tilde_multiplier = *o.beta_tilde_mult;
  }
  if (o.max_inner) p.max_inner = *o.max_inner;
  if (o.snapshot_stride) p.snapshot_stride = *o.snapshot_stride;
  return p;
}

namespace {

std::vector<double> sample_potential(const Preset& preset, const Grid& g) {
  if (preset.potential == PotentialKind::none) return {};
  std::vector<Point> pts = cell_centers(g);
  std::vector<double> v(pts.size(), 0.0);
  switch (preset.potential) {
    case PotentialKind::quadratic:
      for (std::size_t i = 0; i < pts.size(); ++i)
        v[i] = 0.5 * (pts[i].x * pts[i].x + pts[i].y * pts[i].y);
      break;
    case PotentialKind::double_well:
      for (std::size_t i = 0; i < pts.size(); ++i) {
        double s = 1.0 - pts[i].x * pts[i].x;
        v[i] = 10.0 * s * s;
      }
      break;
    case PotentialKind::log_drift: {
      // -1/4 ln|x|; a cell containing the origin gets the cell average.
      Kernel logk;
      logk.log_coeff = 0.25;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        double r = std::hypot(pts[i].x, pts[i].y);
        v[i] = r < 1e-12 ? (g.dim == 1
                                ? logk.cell_average_1d(0.5 * g.dx)
                                : logk.cell_average_2d(0.5 * g.dx, 0.5 * g.dy))
                         : -0.25 * std::log(r);
      }
      break;
    }
    case PotentialKind::none:
      break;
  }
  return v;
}

// Exact integral of amplitude * exp(-w (x-c)^2) over [a, b].
double gaussian_mass_1d(double amplitude, double w, double c, double a,
                        double b) {
  double sw = std::sqrt(w);
  return amplitude * 0.5 * std::sqrt(M_PI / w) *
         (std::erf(sw * (b - c)) - std::erf(sw * (a - c)));
}

double continuum_mass(const InitialData& init, const Grid& g) {
  double m = 0.0;
  for (const InitialData::Bump& bp : init.bumps) {
    double mx = gaussian_mass_1d(1.0, bp.inv_width_sq, bp.cx, g.xmin, g.xmax);
    double my = g.dim == 2
                    ? gaussian_mass_1d(1.0, bp.inv_width_sq, bp.cy, g.ymin,
                                       g.ymax)
                    : 1.0;
    m += bp.amplitude * mx * my;
  }
  double domain = (g.xmax - g.xmin) * (g.dim == 2 ? (g.ymax - g.ymin) : 1.0);
  m += init.floor * domain;
  return m;
}

}  // namespace

EnergySpec build_energy_spec(const Preset& preset, const Grid& grid) {
  EnergySpec spec;
  spec.internal = preset.internal;
  if (preset.internal == InternalEnergy::power) {
    spec.power_exponent = preset.power_m;
    spec.power_coeff = preset.power_coeff;
  }
  spec.potential = sample_potential(preset, grid);
  if (preset.kernel) spec.interaction = kernel_table(*preset.kernel, grid);
  return spec;
}

DensityField initial_density(const Preset& preset, const Grid& grid) {
  const InitialData& init = preset.initial;
  DensityField rho(grid);
  std::vector<Point> pts = cell_centers(grid);
  switch (init.kind) {
    case InitialData::Kind::gaussians: {
      for (int i = 0; i < grid.n_cells(); ++i) {
        double v = init.floor;
        for (const InitialData::Bump& bp : init.bumps) {
          double dx = pts[i].x - bp.cx;
          double dy = grid.dim == 2 ? pts[i].y - bp.cy : 0.0;
          v += bp.amplitude *
               std::exp(-bp.inv_width_sq * (dx * dx + dy * dy));
        }
        rho.values[i] = v;
      }
      if (init.normalize) {
        double target = init.mass_target ? *init.mass_target
                                         : continuum_mass(init, grid);
        double have = rho.mass();
        for (double& v : rho.values) v *= target / have;
      }
      break;
    }
    case InitialData::Kind::barenblatt:
      for (int i = 0; i < grid.n_cells(); ++i)
        rho.values[i] = barenblatt(pts[i].x, 0.0, init.bb) + init.floor;
      break;
    case InitialData::Kind::box:
      for (int i = 0; i < grid.n_cells(); ++i) {
        bool inside = std::abs(pts[i].x) <= init.box_half &&
                      (grid.dim == 1 || std::abs(pts[i].y) <= init.box_half);
        rho.values[i] = (inside ? 1.0 : 0.0) + init.floor;
      }
      break;
  }
  return rho;
}

RunResult run(const Preset& preset, const RunOverrides& overrides) {
  Preset p = apply_overrides(preset, overrides);
  Grid grid = p.make_grid();
  EnergySpec spec = build_energy_spec(p, grid);

  RunResult res;
  res.resolved = p;

  DensityField rho = initial_density(p, grid);
  if (!(rho.min_value() > 0.0))
    throw std::runtime_error("run: initial density must be strictly positive");

  res.snapshots.push_back({0.0, rho});

  const int steps = static_cast<int>(std::ceil(p.t_max / p.tau - 1e-12));
  const double fisher = p.fisher_coeff(p.tau);

  SqpParams params;
  params.tol_rel = p.tol;
  params.qp_tol = p.qp_tol;
  params.max_inner = p.max_inner;

  SqpWorkspace ws;
  DensityField rho_prev_step;  // rho^{k-1}
  FluxField m_prev;
  bool have_prev = false;

  for (int k = 0; k < steps; ++k) {
    JKOStepProblem prob;
    prob.grid = grid;
    prob.spec = spec;
    prob.tau = p.tau;
    prob.fisher = FisherCoeff{fisher};
    prob.hessian_mode = p.hessian_mode;
    prob.beta_tilde_multiplier = p.beta_tilde_multiplier;
    prob.rho_prev = rho;

    std::vector<double> warm =
        warm_start(rho, have_prev ? &rho_prev_step : nullptr,
                   have_prev ? &m_prev : nullptr, params.warm_start_floor);

    auto t0 = std::chrono::steady_clock::now();
    StepResult sr;
    try {
      sr = sqp_step(prob, params, warm, &ws);
    } catch (const std::exception& e) {
      throw std::runtime_error("run: step " + std::to_string(k + 1) +
                               " aborted: " + e.what());
    }
    auto t1 = std::chrono::steady_clock::now();

    rho_prev_step = rho;
    rho = sr.rho_next;
    m_prev = sr.m_next;
    have_prev = true;

    StepDiagnostics d;
    d.t = (k + 1) * p.tau;
    d.mass = rho.mass();
    d.min_rho = rho.min_value();
    d.energy = energy_value(rho, spec);
    d.fisher = fisher_value(rho);
    d.modified_energy = d.energy + fisher / (2.0 * p.tau) * d.fisher;
    d.inner_iterations = sr.inner_iterations;
    d.qp_iterations = sr.qp_iterations_total;
    d.wall_time = std::chrono::duration<double>(t1 - t0).count();
    res.diagnostics.push_back(d);

    if ((k + 1) % p.snapshot_stride == 0 || k + 1 == steps)
      res.snapshots.push_back({d.t, rho});
  }
  res.final_rho = rho;
  return res;
}

ConvergenceTable convergence_study(const Preset& preset,
                                   const std::vector<double>& tau_list,
                                   const RunOverrides& overrides) {
  if (tau_list.empty())
    throw std::invalid_argument("convergence_study: empty tau list");
  ConvergenceTable table;
  // An independent reference solve exists for pure-entropy (heat) presets.
  table.has_reference = preset.internal == InternalEnergy::entropy &&
                        preset.potential == PotentialKind::none &&
                        !preset.kernel && preset.dim == 1;

  Preset base = apply_overrides(preset, overrides);
  DensityField reference;
  if (table.has_reference) {
    Grid grid = base.make_grid();
    DensityField rho0 = initial_density(base, grid);
    double tau_ref = *std::min_element(tau_list.begin(), tau_list.end()) / 16.0;
    reference = reference_heat_solver(rho0, tau_ref, base.t_max);
  }

  for (double tau : tau_list) {
    RunOverrides o = overrides;
    o.tau = tau;
    RunResult full = run(preset, o);
    o.tau = tau / 2.0;
    RunResult half = run(preset, o);
    ConvergenceRow row;
    row.tau = tau;
    row.err_richardson = richardson_err(full.final_rho, half.final_rho);
    if (table.has_reference)
      row.err_reference = l1_err(full.final_rho, reference);
    table.rows.push_back(row);
  }

  std::vector<double> taus, e1, e2;
  for (const ConvergenceRow& r : table.rows) {
    taus.push_back(r.tau);
    e1.push_back(r.err_richardson);
    if (table.has_reference) e2.push_back(r.err_reference);
  }
  if (taus.size() >= 2) {
    table.slope_richardson = fit_loglog_slope(taus, e1);
    if (table.has_reference) table.slope_reference = fit_loglog_slope(taus, e2);
  }
  return table;
}

std::vector<double> radial_shell_masses(const DensityField& rho, Point center,
                                        double width) {
  const Grid& g = rho.grid;
  std::vector<Point> pts = cell_centers(g);
  std::vector<double> shells;
  for (int i = 0; i < g.n_cells(); ++i) {
    double r = std::hypot(pts[i].x - center.x, pts[i].y - center.y);
    std::size_t bin = static_cast<std::size_t>(r / width);
    if (shells.size() <= bin) shells.resize(bin + 1, 0.0);
    shells[bin] += rho.values[i] * g.cell_volume();
  }
  return shells;
}

double shell_mass_fraction(const DensityField& rho, Point center, double r_lo,
                           double r_hi) {
  const Grid& g = rho.grid;
  std::vector<Point> pts = cell_centers(g);
  double total = 0.0, inside = 0.0;
  for (int i = 0; i < g.n_cells(); ++i) {
    double m = rho.values[i] * g.cell_volume();
    total += m;
    double r = std::hypot(pts[i].x - center.x, pts[i].y - center.y);
    if (r >= r_lo && r <= r_hi) inside += m;
  }
  return total > 0.0 ? inside / total : 0.0;
}

}  // namespace wgf
