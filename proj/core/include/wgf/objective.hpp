#pragma once

#include <vector>

#include "wgf/energy.hpp"
#include "wgf/grid.hpp"
#include "wgf/sparse.hpp"
#include "wgf/state.hpp"

namespace wgf {

enum class HessianMode { exact, surrogate };

/// One implicit time step posed as a finite-dimensional program over
/// u = (rho, m):
///
///   F(u) = sum over interior faces of
///            [ 2 m^2/(rho_a+rho_b)
///              + fisher/dx_axis^2 (log rho_b - log rho_a)^2 (rho_a+rho_b)/2 ]
///            * vol
///          + 2 tau E(rho)
///   s.t.  rho_i - rho_prev_i + div(m)_i = 0,  rho >= 0.
struct JKOStepProblem {
  Grid grid;
  EnergySpec spec;
  double tau = 0.0;
  FisherCoeff fisher;
  HessianMode hessian_mode = HessianMode::exact;
  int beta_tilde_multiplier = 1;  // fisher scale in the surrogate Hessian
  DensityField rho_prev;

  StateLayout layout() const { return StateLayout(grid); }
  void validate() const;
};

struct ContinuityConstraint {
  SparseMatrix A;         // n_cells x state-size
  std::vector<double> b;  // rho_prev values
  std::vector<int> nonneg_index_set;
};

ContinuityConstraint build_constraints(const JKOStepProblem& p);

/// +inf when any density component is nonpositive (line-search sentinel).
double objective_value(const std::vector<double>& u, const JKOStepProblem& p);
/// Value of the surrogate model F~: interaction replaced by entropy and the
/// Fisher coefficient scaled by beta_tilde_multiplier. Used to audit the
/// surrogate Hessian by finite differences.
double surrogate_objective_value(const std::vector<double>& u,
                                 const JKOStepProblem& p);

/// Exact analytic gradient; throws std::domain_error off the interior.
std::vector<double> objective_gradient(const std::vector<double>& u,
                                       const JKOStepProblem& p);

/// Analytic Hessian of F (exact mode) or of the surrogate model. Both carry
/// the kinetic m-rho coupling; the surrogate never materializes the dense
/// interaction block.
SparseMatrix objective_hessian(const std::vector<double>& u,
                               const JKOStepProblem& p, HessianMode mode);

}  // namespace wgf
