#include "wgf/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wgf {

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Crossover polish: starting from the converged interior iterate, guess the
// binding bounds, solve the corresponding equality-constrained system
// exactly, and repair the guess while primal or dual signs disagree. Falls
// back to the interior iterate when the repair does not settle.
bool polish_active_set(const QPProblem& q, std::vector<double>& z,
                       std::vector<double>& y, std::vector<double>& lambda) {
  const int n = q.H.rows();
  const int m = q.A.rows();
  const auto& I = q.nonneg_indices;
  const int nb = static_cast<int>(I.size());
  if (nb == 0) return false;

  const double tol_p = 1e-9 * (1.0 + inf_norm(q.b));
  const double tol_d = 1e-9 * (1.0 + inf_norm(q.g));

  std::vector<char> in_set(nb, 0);
  for (int k = 0; k < nb; ++k) in_set[k] = lambda[k] > z[I[k]];

  std::vector<double> r1 = q.H.multiply(q.center);
  for (int i = 0; i < n; ++i) r1[i] -= q.g[i];

  for (int round = 0; round < 10; ++round) {
    std::vector<int> active;
    for (int k = 0; k < nb; ++k)
      if (in_set[k]) active.push_back(k);

    std::vector<SparseMatrix::Triplet> at;
    for (int r = 0; r < m; ++r)
      for (int p = q.A.row_ptr()[r]; p < q.A.row_ptr()[r + 1]; ++p)
        at.push_back({r, q.A.col_idx()[p], q.A.values()[p]});
    for (std::size_t s = 0; s < active.size(); ++s)
      at.push_back({m + static_cast<int>(s), I[active[s]], 1.0});
    SparseMatrix a_aug = SparseMatrix::from_triplets(
        m + static_cast<int>(active.size()), n, std::move(at));
    std::vector<double> r2 = q.b;
    r2.resize(m + active.size(), 0.0);

    KktSolveResult sol;
    try {
      sol = kkt_solve(q.H, a_aug, r1, r2);
    } catch (const std::runtime_error&) {
      return false;
    }

    // Dual recovery: H(z-u) + g - A^T y - sum nu_s e_s = 0 with y = -dy.
    std::vector<double> z_new = sol.dx;
    std::vector<double> y_new(m);
    for (int r = 0; r < m; ++r) y_new[r] = -sol.dy[r];
    std::vector<double> lam_new(nb, 0.0);
    for (std::size_t s = 0; s < active.size(); ++s)
      lam_new[active[s]] = -sol.dy[m + s];

    bool changed = false;
    for (int k = 0; k < nb; ++k) {
      if (!in_set[k] && z_new[I[k]] < -tol_p) {
        in_set[k] = 1;
        changed = true;
      } else if (in_set[k] && lam_new[k] < -tol_d) {
        in_set[k] = 0;
        changed = true;
      }
    }
    if (!changed) {
      for (std::size_t s = 0; s < active.size(); ++s) z_new[I[active[s]]] = 0.0;
      for (double& v : lam_new) v = std::max(v, 0.0);
      z = std::move(z_new);
      y = std::move(y_new);
      lambda = std::move(lam_new);
      return true;
    }
  }
  return false;
}

}  // namespace

void QPProblem::validate() const {
  const int n = H.rows();
  if (H.cols() != n) throw std::invalid_argument("QPProblem: H not square");
  if ((int)g.size() != n || (int)center.size() != n)
    throw std::invalid_argument("QPProblem: g/center size mismatch");
  if (A.rows() > 0 && A.cols() != n)
    throw std::invalid_argument("QPProblem: A column count mismatch");
  if ((int)b.size() != A.rows())
    throw std::invalid_argument("QPProblem: b size mismatch");
  for (int i : nonneg_indices)
    if (i < 0 || i >= n)
      throw std::invalid_argument("QPProblem: nonneg index out of range");
}

QpSolverCache::QpSolverCache(const QPProblem& q)
    : identity_(SparseMatrix::identity(q.H.rows())),
      proj_(identity_, q.A),
      main_(q.H, q.A) {}

std::vector<double> QpSolverCache::project(const std::vector<double>& u,
                                           const std::vector<double>& b) {
  if (proj_.dim_dual() == 0) return u;
  if (!proj_factorized_) {
    double shift = 1e-12;
    bool ok = false;
    for (int attempt = 0; attempt < 3 && !ok; ++attempt, shift *= 100.0)
      ok = proj_.factorize({}, shift);
    if (!ok)
      throw std::runtime_error("QpSolverCache: projection factorization failed");
    proj_factorized_ = true;
  }
  std::vector<double> dx, dy;
  proj_.solve(u, b, dx, dy);
  return dx;
}

QPResult solve_qp(const QPProblem& q, double tol, int max_iter,
                  QpSolverCache* cache, double initial_shift, bool polish) {
  q.validate();
  const int n = q.H.rows();
  const int m = q.A.rows();
  const auto& I = q.nonneg_indices;
  const int nb = static_cast<int>(I.size());

  std::unique_ptr<QpSolverCache> local;
  if (!cache) {
    local = std::make_unique<QpSolverCache>(q);
    cache = local.get();
  }
  KktSolver& kkt = cache->main();

  // Starting point: least-squares projection onto the equality manifold,
  // bounded components pushed up to at least 1.
  std::vector<double> z = cache->project(q.center, q.b);
  for (int i : I) z[i] = std::max(z[i], 1.0);
  std::vector<double> y(m, 0.0);
  std::vector<double> lambda(nb, 1.0);

  const double sd = 1.0 + inf_norm(q.g);
  const double sp = 1.0 + inf_norm(q.b);

  QPResult best;
  best.z = z;
  best.dual_eq = y;
  best.dual_bound = lambda;
  double best_err = std::numeric_limits<double>::infinity();

  std::vector<double> rd(n), rp(m), dz(n), w(m), dlam(nb), r1(n), r2(m);
  std::vector<double> dz_aff(n), dlam_aff(nb), rc(nb);

  // Residuals of the true KKT system at (z, y, lambda); fills rd/rp.
  auto residuals = [&](double& stat, double& prim, double& comp) {
    std::vector<double> zu(n);
    for (int i = 0; i < n; ++i) zu[i] = z[i] - q.center[i];
    rd = q.H.multiply(zu);
    for (int i = 0; i < n; ++i) rd[i] += q.g[i];
    if (m > 0) {
      std::vector<double> aty = q.A.multiply_transpose(y);
      for (int i = 0; i < n; ++i) rd[i] -= aty[i];
      std::vector<double> az = q.A.multiply(z);
      for (int r = 0; r < m; ++r) rp[r] = az[r] - q.b[r];
    }
    for (int k = 0; k < nb; ++k) rd[I[k]] -= lambda[k];
    double mu = 0.0;
    for (int k = 0; k < nb; ++k) mu += z[I[k]] * lambda[k];
    if (nb > 0) mu /= nb;
    stat = inf_norm(rd) / sd;
    prim = (m > 0 ? inf_norm(rp) : 0.0) / sp;
    comp = mu / sd;
  };

  for (int iter = 0; iter <= max_iter; ++iter) {
    double mu = 0.0;
    for (int k = 0; k < nb; ++k) mu += z[I[k]] * lambda[k];
    if (nb > 0) mu /= nb;
    best.mu_trace.push_back(mu);

    // Residuals are reported relative to the problem scale, so all three
    // are <= tol on success.
    double stat, prim, comp;
    residuals(stat, prim, comp);
    double err = stat + prim + comp;
    if (err < best_err) {
      best_err = err;
      best.z = z;
      best.dual_eq = y;
      best.dual_bound = lambda;
      best.stationarity = stat;
      best.primal = prim;
      best.complementarity = comp;
      best.iterations = iter;
    }
    if (stat <= tol && prim <= tol && comp <= tol) {
      if (polish && polish_active_set(q, z, y, lambda))
        residuals(stat, prim, comp);
      best.converged = true;
      best.z = z;
      best.dual_eq = y;
      best.dual_bound = lambda;
      best.stationarity = stat;
      best.primal = prim;
      best.complementarity = comp;
      best.iterations = iter;
      return best;
    }
    if (iter == max_iter) break;

    // Newton system with barrier weights on the bounded diagonal.
    std::vector<double> extra(n, 0.0);
    for (int k = 0; k < nb; ++k)
      extra[I[k]] = std::min(lambda[k] / z[I[k]], 1e16);
    double shift = initial_shift <= 0.0 ? 1e-12 : initial_shift;
    bool ok = false;
    for (int attempt = 0; attempt < 3 && !ok; ++attempt, shift *= 100.0)
      ok = kkt.factorize(extra, shift);
    if (!ok)
      throw std::runtime_error(
          "solve_qp: KKT factorization failed after shift escalation");

    auto solve_direction = [&](const std::vector<double>& rc_in) {
      for (int i = 0; i < n; ++i) r1[i] = -rd[i];
      for (int k = 0; k < nb; ++k) r1[I[k]] -= rc_in[k] / z[I[k]];
      for (int r = 0; r < m; ++r) r2[r] = -rp[r];
      kkt.solve(r1, r2, dz, w);
      for (int k = 0; k < nb; ++k)
        dlam[k] = -(rc_in[k] + lambda[k] * dz[I[k]]) / z[I[k]];
    };
    auto max_step = [&](const std::vector<double>& v,
                        const std::vector<double>& dv, bool bounded_only) {
      double a = 1.0;
      for (int k = 0; k < nb; ++k) {
        double vk = bounded_only ? v[I[k]] : v[k];
        double dk = bounded_only ? dv[I[k]] : dv[k];
        if (dk < 0.0) a = std::min(a, -vk / dk);
      }
      return a;
    };

    double sigma = 0.0;
    if (nb > 0) {
      // Predictor (affine scaling) step.
      for (int k = 0; k < nb; ++k) rc[k] = z[I[k]] * lambda[k];
      solve_direction(rc);
      dz_aff = dz;
      dlam_aff = dlam;
      double ap = max_step(z, dz_aff, true);
      double ad = max_step(lambda, dlam_aff, false);
      double mu_aff = 0.0;
      for (int k = 0; k < nb; ++k)
        mu_aff += (z[I[k]] + ap * dz_aff[I[k]]) * (lambda[k] + ad * dlam_aff[k]);
      mu_aff /= nb;
      sigma = mu > 0.0 ? std::pow(mu_aff / mu, 3) : 0.0;
      sigma = std::clamp(sigma, 0.0, 0.999);
      // Corrector with centering, reusing the factorization.
      for (int k = 0; k < nb; ++k)
        rc[k] = z[I[k]] * lambda[k] + dz_aff[I[k]] * dlam_aff[k] - sigma * mu;
      solve_direction(rc);
    } else {
      rc.clear();
      solve_direction(rc);
    }

    double ap = 1.0, ad = 1.0;
    if (nb > 0) {
      ap = std::min(1.0, 0.995 * max_step(z, dz, true));
      ad = std::min(1.0, 0.995 * max_step(lambda, dlam, false));
      // Keep the barrier parameter monotone; Mehrotra steps do this on
      // their own for almost every convex instance, the cut is a guard.
      for (int guard = 0; guard < 8; ++guard) {
        double mu_new = 0.0;
        for (int k = 0; k < nb; ++k)
          mu_new += (z[I[k]] + ap * dz[I[k]]) * (lambda[k] + ad * dlam[k]);
        mu_new /= nb;
        if (mu_new <= mu * (1.0 + 1e-12) || mu <= tol) break;
        ap *= 0.7;
        ad *= 0.7;
      }
    }
    for (int i = 0; i < n; ++i) z[i] += ap * dz[i];
    for (int r = 0; r < m; ++r) y[r] -= ad * w[r];  // dy = -w
    for (int k = 0; k < nb; ++k) lambda[k] += ad * dlam[k];
  }

  if (m > 0 && best.primal > 1e-4)
    throw std::runtime_error(
        "solve_qp: equality constraints appear infeasible (primal residual "
        "not reducible)");
  best.converged = false;
  return best;
}

}  // namespace wgf
