#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "wgf/objective.hpp"
#include "wgf/qp.hpp"

namespace wgf {

struct SqpParams {
  double tol_rel = 1e-6;  // relative objective-change stopping criterion
  int max_inner = 200;
  double qp_tol = 1e-9;
  int qp_max_iter = 100;
  double armijo_c = 1e-4;
  double backtrack_shrink = 0.5;
  int max_backtracks = 30;
  double warm_start_floor = 1e-6;
  // Rebuild the quadratic model every hessian_lag-th inner iteration; 1 is
  // a fresh Hessian per iteration, larger values are for the
  // convergence-rate experiments.
  int hessian_lag = 1;
  bool record_iterates = false;
};

struct SqpIterationRecord {
  double objective = 0.0;
  double step_size = 0.0;
  int qp_iterations = 0;
  std::vector<double> iterate;  // only when record_iterates is set
};

struct StepResult {
  DensityField rho_next;
  FluxField m_next;
  int inner_iterations = 0;
  int qp_iterations_total = 0;
  double final_objective = 0.0;
  bool converged = false;
  std::vector<SqpIterationRecord> trace;
};

/// Reusable per-run state: constraint matrix, QP problem storage and KKT
/// factorization symbolics, all of which depend only on the grid and the
/// Hessian sparsity pattern.
struct SqpWorkspace {
  ContinuityConstraint constraint;
  QPProblem qp;
  std::unique_ptr<QpSolverCache> cache;
  bool initialized = false;
};

/// Second-order extrapolation 2 rho_k - rho_km1 clipped cell-wise back to
/// rho_k wherever it falls below the floor; m from the previous converged
/// step, zero on the first step.
std::vector<double> warm_start(const DensityField& rho_k,
                               const DensityField* rho_km1,
                               const FluxField* m_prev, double floor);

/// One JKO step by sequential quadratic programming. The first inner
/// iteration takes the full step onto the affine-feasible manifold;
/// subsequent iterations are Armijo line searches. Aborts (throws
/// std::runtime_error) on unrecoverable QP failure or when backtracking
/// cannot produce descent.
StepResult sqp_step(const JKOStepProblem& p, const SqpParams& params,
                    const std::vector<double>& warm,
                    SqpWorkspace* ws = nullptr);

}  // namespace wgf
