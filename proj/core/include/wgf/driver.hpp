#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wgf/energy.hpp"
#include "wgf/grid.hpp"
#include "wgf/objective.hpp"
#include "wgf/oracles.hpp"
#include "wgf/sqp.hpp"

namespace wgf {

enum class FisherMode {
  standard,  // coefficient beta^-2 tau^2
  dlss       // coefficient tau, energy reduced to the potential term
};

enum class PotentialKind { none, quadratic, double_well, log_drift };

/// Initial density as a sum of Gaussian bumps plus an additive floor, a
/// self-similar porous-medium profile, or a box indicator. Gaussian-type
/// data is rescaled after sampling so the discrete mass matches the closed
/// form continuum integral of the same formula.
struct InitialData {
  enum class Kind { gaussians, barenblatt, box };
  struct Bump {
    double cx = 0.0, cy = 0.0;
    double inv_width_sq = 1.0;  // amplitude * exp(-inv_width_sq * r^2)
    double amplitude = 1.0;
  };
  Kind kind = Kind::gaussians;
  std::vector<Bump> bumps;
  double floor = 0.0;
  bool normalize = true;
  // Normalization target; defaults to the continuum integral of the
  // formula itself. Set to 1 where the flow is posed on probability
  // densities whose dynamics scale with the total mass.
  std::optional<double> mass_target;
  BarenblattParams bb;
  double box_half = 0.0;
};

struct Preset {
  std::string name;
  std::string description;
  int dim = 1;
  int nx = 0, ny = 0;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  double tau = 1e-3;
  double t_max = 1.0;
  FisherMode fisher_mode = FisherMode::standard;
  double beta_inv_sq = 1.0;  // beta^-2 for the standard mode
  HessianMode hessian_mode = HessianMode::exact;
  int beta_tilde_multiplier = 1;
  double tol = 1e-6;    // SQP relative-objective stopping tolerance
  double qp_tol = 1e-9;
  int max_inner = 200;
  int snapshot_stride = 10;

  InternalEnergy internal = InternalEnergy::none;
  double power_m = 2.0;
  double power_coeff = 1.0;
  PotentialKind potential = PotentialKind::none;
  std::optional<Kernel> kernel;

  InitialData initial;

  double fisher_coeff(double tau_used) const {
    return fisher_mode == FisherMode::dlss ? tau_used
                                           : beta_inv_sq * tau_used * tau_used;
  }
  Grid make_grid() const;
};

struct StepDiagnostics {
  double t = 0.0;
  double mass = 0.0;
  double min_rho = 0.0;
  double energy = 0.0;
  double fisher = 0.0;
  double modified_energy = 0.0;  // energy + fisher_coeff/(2 tau) * fisher
  int inner_iterations = 0;
  int qp_iterations = 0;
  double wall_time = 0.0;  // seconds
};

struct RunOverrides {
  std::optional<int> nx, ny;
  std::optional<double> tau, beta, t_max, tol, qp_tol;
  std::optional<int> beta_tilde_mult, max_inner, snapshot_stride;
  std::optional<long> seed;  // recorded in outputs; the solver is deterministic
};

struct Snapshot {
  double t = 0.0;
  DensityField rho;
};

struct RunResult {
  Preset resolved;
  std::vector<Snapshot> snapshots;
  std::vector<StepDiagnostics> diagnostics;
  DensityField final_rho;
};

Preset apply_overrides(const Preset& preset, const RunOverrides& o);
EnergySpec build_energy_spec(const Preset& preset, const Grid& grid);
DensityField initial_density(const Preset& preset, const Grid& grid);

RunResult run(const Preset& preset, const RunOverrides& overrides = {});

struct ConvergenceRow {
  double tau = 0.0;
  double err_richardson = 0.0;
  double err_reference = 0.0;
};
struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double slope_richardson = 0.0;
  double slope_reference = 0.0;
  bool has_reference = false;
};

/// Richardson and (when an independent reference solver exists for the
/// preset) reference errors at t_max for each tau, with fitted log-log
/// slopes.
ConvergenceTable convergence_study(const Preset& preset,
                                   const std::vector<double>& tau_list,
                                   const RunOverrides& overrides = {});

const std::vector<Preset>& preset_library();
const Preset& find_preset(const std::string& name);

/// Mass binned by distance from center in width-wide shells.
std::vector<double> radial_shell_masses(const DensityField& rho, Point center,
                                        double width);
/// Fraction of total mass at radius r in [r_lo, r_hi] from center.
double shell_mass_fraction(const DensityField& rho, Point center, double r_lo,
                           double r_hi);

}  // namespace wgf
