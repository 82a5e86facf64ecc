#pragma once

#include <vector>

#include "wgf/sparse.hpp"

namespace wgf {

/// Factorization and solve of quasi-definite saddle systems
///
///   K = [ H + diag(extra) + shift*I   A^T      ]
///       [ A                           -shift*I ]
///
/// by sparse LDL^T with a fill-reducing minimum-degree ordering computed
/// once per sparsity pattern. H is n-by-n symmetric with full storage, A is
/// m-by-n (m may be zero). The solver keeps references to H and A: their
/// values may be rewritten in place between factorizations but the patterns
/// must not change.
class KktSolver {
 public:
  KktSolver(const SparseMatrix& H, const SparseMatrix& A);

  /// Numeric refactorization. Returns false when a pivot magnitude falls
  /// below the pivot tolerance (caller escalates the shift).
  bool factorize(const std::vector<double>& extra_diag, double shift);

  /// Solves K [dx; dy] = [r1; r2] with iterative refinement against the
  /// factorized (shifted) system. factorize() must have succeeded.
  void solve(const std::vector<double>& r1, const std::vector<double>& r2,
             std::vector<double>& dx, std::vector<double>& dy) const;

  double last_relative_residual() const { return last_rel_residual_; }
  int dim_primal() const { return n_; }
  int dim_dual() const { return m_; }

  static constexpr double kPivotTol = 1e-13;
  static constexpr double kResidualTol = 1e-10;

 private:
  void build_pattern_and_ordering();
  void symbolic();
  void assemble_values();
  void apply_K(const std::vector<double>& x, std::vector<double>& y) const;
  void solve_factored(std::vector<double>& b) const;

  const SparseMatrix& H_;
  const SparseMatrix& A_;
  int n_ = 0, m_ = 0, N_ = 0;

  // Upper-triangle pattern of the permuted K, column-wise, strictly upper.
  std::vector<int> kp_, ki_;
  std::vector<double> kx_, kdiag_;
  // Entry sources: >=0 index into H values, or ~idx for A values.
  std::vector<int> ksrc_, kdiag_src_;

  std::vector<int> perm_, iperm_;  // perm_[new] = old
  std::vector<int> parent_, lp_, lnz_final_;
  std::vector<int> li_;
  std::vector<double> lx_, d_;

  std::vector<double> extra_diag_;
  double shift_ = 0.0;
  bool factorized_ = false;
  mutable double last_rel_residual_ = 0.0;
};

struct KktSolveResult {
  std::vector<double> dx;
  std::vector<double> dy;
  double relative_residual = 0.0;
  double shift_used = 0.0;
};

/// One-shot quasi-definite solve. Starts from diag_shift (1e-12 when zero is
/// passed) and escalates by x100 up to two times when factorization pivots
/// fail or the refined residual stays above tolerance; throws
/// std::runtime_error when the system remains unsolvable.
KktSolveResult kkt_solve(const SparseMatrix& H, const SparseMatrix& A,
                         const std::vector<double>& r1,
                         const std::vector<double>& r2,
                         double diag_shift = 1e-12);

}  // namespace wgf
