#pragma once

#include <memory>
#include <vector>

#include "wgf/kkt.hpp"
#include "wgf/sparse.hpp"

namespace wgf {

/// Strictly convex quadratic subproblem
///   min_z 1/2 (z-u)^T H (z-u) + g^T (z-u)
///   s.t.  A z = b,  z_i >= 0 for i in nonneg_indices.
struct QPProblem {
  SparseMatrix H;
  std::vector<double> g;
  SparseMatrix A;
  std::vector<double> b;
  std::vector<int> nonneg_indices;
  std::vector<double> center;  // u

  void validate() const;
};

struct QPResult {
  std::vector<double> z;
  std::vector<double> dual_eq;     // equality multipliers
  std::vector<double> dual_bound;  // bound multipliers, one per nonneg index
  int iterations = 0;
  double stationarity = 0.0;
  double primal = 0.0;
  double complementarity = 0.0;
  bool converged = false;
  std::vector<double> mu_trace;  // barrier parameter per iteration
};

/// Reusable factorization state bound to one QPProblem instance. The
/// problem's H values, g, b and center may be rewritten between solves as
/// long as the sparsity patterns of H and A stay fixed.
class QpSolverCache {
 public:
  explicit QpSolverCache(const QPProblem& q);

  KktSolver& main() { return main_; }
  /// Least-squares projection onto {A z = b}; returns u unchanged when
  /// there are no equality constraints.
  std::vector<double> project(const std::vector<double>& u,
                              const std::vector<double>& b);

 private:
  SparseMatrix identity_;
  KktSolver proj_;
  KktSolver main_;
  bool proj_factorized_ = false;
};

/// Primal-dual interior-point solve (Mehrotra predictor-corrector,
/// fraction-to-boundary 0.995). Deterministic. Throws std::runtime_error
/// when the equality system is not reducible to feasibility; an exhausted
/// iteration budget returns the best iterate flagged converged=false.
/// With `polish` set, converged solutions with binding bounds are refined
/// by one exact active-set solve (bound components land exactly on zero);
/// callers that require strictly interior output turn it off.
QPResult solve_qp(const QPProblem& q, double tol = 1e-9, int max_iter = 100,
                  QpSolverCache* cache = nullptr,
                  double initial_shift = 1e-12, bool polish = true);

}  // namespace wgf
