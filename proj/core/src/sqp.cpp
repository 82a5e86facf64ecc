#include "wgf/sqp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wgf {

namespace {

bool same_pattern(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         a.row_ptr() == b.row_ptr() && a.col_idx() == b.col_idx();
}

struct InnerResult {
  std::vector<double> u;
  double objective = 0.0;
  int iterations = 0;
  int qp_iterations = 0;
  bool converged = false;
  std::vector<SqpIterationRecord> trace;
};

InnerResult run_inner(const JKOStepProblem& p, const SqpParams& params,
                      std::vector<double> u, bool force_full_first_step,
                      SqpWorkspace& ws) {
  InnerResult out;
  double f_cur = objective_value(u, p);
  if (!std::isfinite(f_cur))
    throw std::invalid_argument("sqp_step: start point not strictly positive");

  SparseMatrix hessian;
  for (int l = 0; l < params.max_inner; ++l) {
    if (l % params.hessian_lag == 0)
      hessian = objective_hessian(u, p, p.hessian_mode);
    if (!ws.initialized || !same_pattern(ws.qp.H, hessian)) {
      ws.qp.H = hessian;
      ws.qp.A = ws.constraint.A;
      ws.qp.nonneg_indices = ws.constraint.nonneg_index_set;
      ws.cache = std::make_unique<QpSolverCache>(ws.qp);
      ws.initialized = true;
    } else {
      ws.qp.H.values() = hessian.values();
    }
    ws.qp.b = ws.constraint.b;
    ws.qp.g = objective_gradient(u, p);
    ws.qp.center = u;

    // Polishing is off: the line search needs strictly interior density
    // blocks, which the interior-point iterates provide.
    QPResult qr = solve_qp(ws.qp, params.qp_tol, params.qp_max_iter,
                           ws.cache.get(), 1e-12, /*polish=*/false);
    if (!qr.converged) {
      // One retry with a stronger quasi-definite regularization before
      // giving up on the step.
      qr = solve_qp(ws.qp, params.qp_tol, 2 * params.qp_max_iter,
                    ws.cache.get(), 1e-8, /*polish=*/false);
      if (!qr.converged)
        throw std::runtime_error(
            "sqp_step: QP subproblem did not converge after shift retry");
    }
    out.qp_iterations += qr.iterations;

    std::vector<double> dir(u.size());
    double dir_norm = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      dir[i] = qr.z[i] - u[i];
      dir_norm = std::max(dir_norm, std::abs(dir[i]));
    }

    double t = 1.0;
    double f_new;
    if (l == 0 && force_full_first_step) {
      // Full step: lands the iterate on the affine-feasible manifold with a
      // strictly positive density block.
      for (std::size_t i = 0; i < u.size(); ++i) u[i] += dir[i];
      f_new = objective_value(u, p);
    } else {
      double slope = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) slope += ws.qp.g[i] * dir[i];
      double stall = 1e-14 * (1.0 + std::abs(f_cur));
      if (dir_norm == 0.0 || slope > -stall) {
        // No usable descent left at this accuracy.
        out.converged = true;
        out.objective = f_cur;
        break;
      }
      int bt = 0;
      for (;; ++bt) {
        f_new = objective_value(
            [&] {
              std::vector<double> trial(u.size());
              for (std::size_t i = 0; i < u.size(); ++i)
                trial[i] = u[i] + t * dir[i];
              return trial;
            }(),
            p);
        if (f_new <= f_cur + params.armijo_c * t * slope) break;
        if (bt >= params.max_backtracks)
          throw std::runtime_error(
              "sqp_step: no descent after full backtracking (check the "
              "Hessian mode)");
        t *= params.backtrack_shrink;
      }
      for (std::size_t i = 0; i < u.size(); ++i) u[i] += t * dir[i];
    }

    ++out.iterations;
    SqpIterationRecord rec;
    rec.objective = f_new;
    rec.step_size = t;
    rec.qp_iterations = qr.iterations;
    if (params.record_iterates) rec.iterate = u;
    out.trace.push_back(std::move(rec));

    double denom = std::max(std::abs(f_cur), 1e-30);
    bool stop = std::abs(f_new - f_cur) / denom < params.tol_rel;
    f_cur = f_new;
    if (stop) {
      out.converged = true;
      break;
    }
  }
  out.u = std::move(u);
  out.objective = f_cur;
  return out;
}

}  // namespace

std::vector<double> warm_start(const DensityField& rho_k,
                               const DensityField* rho_km1,
                               const FluxField* m_prev, double floor) {
  const Grid& g = rho_k.grid;
  DensityField rho0(g);
  for (int i = 0; i < g.n_cells(); ++i) {
    double v = rho_k.values[i];
    if (rho_km1) {
      double ex = 2.0 * rho_k.values[i] - rho_km1->values[i];
      v = ex >= floor ? ex : rho_k.values[i];
    }
    rho0.values[i] = v;
  }
  FluxField m0 = m_prev ? *m_prev : FluxField(g);
  return StateLayout(g).pack(rho0, m0);
}

StepResult sqp_step(const JKOStepProblem& p, const SqpParams& params,
                    const std::vector<double>& warm, SqpWorkspace* ws) {
  p.validate();
  if (!(p.fisher.value > 0.0))
    throw std::invalid_argument(
        "sqp_step: the Fisher coefficient must be positive");

  SqpWorkspace local;
  if (!ws) ws = &local;
  if (ws->constraint.A.cols() != p.layout().size())
    *ws = SqpWorkspace{};  // workspace was built for a different problem
  if (ws->constraint.b.empty()) {
    ws->constraint = build_constraints(p);
  } else {
    ws->constraint.b = p.rho_prev.values;
  }

  // F at the feasible anchor (rho_prev, 0); the converged step may never
  // end above it, which is what makes the modified energy nonincreasing.
  StateLayout lay = p.layout();
  std::vector<double> anchor = lay.pack(p.rho_prev, FluxField(p.grid));
  double f_anchor = objective_value(anchor, p);

  InnerResult inner = run_inner(p, params, warm, /*force_full=*/true, *ws);
  if (std::isfinite(f_anchor) && inner.objective > f_anchor) {
    InnerResult retry = run_inner(p, params, anchor, /*force_full=*/false, *ws);
    if (retry.objective <= inner.objective) inner = std::move(retry);
  }

  StepResult res;
  auto [rho, m] = lay.unpack(inner.u);
  res.rho_next = std::move(rho);
  res.m_next = std::move(m);
  res.inner_iterations = inner.iterations;
  res.qp_iterations_total = inner.qp_iterations;
  res.final_objective = inner.objective;
  res.converged = inner.converged;
  res.trace = std::move(inner.trace);
  return res;
}

}  // namespace wgf
