#pragma once

// Brute-force reference for small bound-constrained QPs: enumerate every
// active set over the bound indices, solve each equality-constrained system
// densely, keep the best feasible candidate. Valid for strictly convex H.

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "wgf/qp.hpp"

namespace test {

inline double qp_objective(const wgf::QPProblem& q,
                           const std::vector<double>& z) {
  const int n = q.H.rows();
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = z[i] - q.center[i];
  auto hd = q.H.multiply(d);
  double f = 0.0;
  for (int i = 0; i < n; ++i) f += 0.5 * d[i] * hd[i] + q.g[i] * d[i];
  return f;
}

struct QpOracleResult {
  std::vector<double> z;
  double objective = 0.0;
  bool found = false;
};

inline QpOracleResult active_set_oracle(const wgf::QPProblem& q) {
  const int n = q.H.rows();
  const int m = q.A.rows();
  const int nb = static_cast<int>(q.nonneg_indices.size());
  auto hd = q.H.to_dense();
  auto ad = q.A.to_dense();
  QpOracleResult best;
  for (int mask = 0; mask < (1 << nb); ++mask) {
    std::vector<int> fixed;
    for (int k = 0; k < nb; ++k)
      if (mask & (1 << k)) fixed.push_back(q.nonneg_indices[k]);
    const int rows = n + m + static_cast<int>(fixed.size());
    Matrix K(rows, Vector(rows, 0.0));
    Vector rhs(rows, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) K[i][j] = hd[i][j];
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += hd[i][j] * q.center[j];
      rhs[i] = s - q.g[i];
    }
    for (int r = 0; r < m; ++r)
      for (int j = 0; j < n; ++j) {
        K[n + r][j] = ad[r][j];
        K[j][n + r] = ad[r][j];
        rhs[n + r] = q.b[r];
      }
    for (std::size_t f = 0; f < fixed.size(); ++f) {
      K[n + m + f][fixed[f]] = 1.0;
      K[fixed[f]][n + m + f] = 1.0;
    }
    Vector sol;
    try {
      sol = dense_solve(K, rhs);
    } catch (const std::runtime_error&) {
      continue;  // singular active-set combination
    }
    std::vector<double> z(sol.begin(), sol.begin() + n);
    bool feasible = true;
    for (int k = 0; k < nb; ++k)
      if (z[q.nonneg_indices[k]] < -1e-9) feasible = false;
    // Near-singular combinations (dependent constraint gradients) slip
    // through partial pivoting; a candidate must satisfy its own system.
    for (int r = 0; r < m && feasible; ++r) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += ad[r][j] * z[j];
      if (std::abs(s - q.b[r]) > 1e-8) feasible = false;
    }
    for (int idx : fixed)
      if (std::abs(z[idx]) > 1e-8) feasible = false;
    for (double zv : z)
      if (!std::isfinite(zv)) feasible = false;
    if (!feasible) continue;
    double f = qp_objective(q, z);
    if (!best.found || f < best.objective) {
      best.found = true;
      best.objective = f;
      best.z = z;
    }
  }
  return best;
}

inline wgf::QPProblem random_qp_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nvar(1, 6), neq(0, 2), nbnd(0, 3);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  const int n = nvar(rng);
  const int m = std::min(neq(rng), n - 1 < 0 ? 0 : n - 1);
  wgf::QPProblem q;
  // H = B^T B + 0.1 I keeps the instance strictly convex.
  Matrix b(n, Vector(n));
  for (auto& row : b)
    for (double& v : row) v = val(rng);
  std::vector<wgf::SparseMatrix::Triplet> ht;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = i == j ? 0.1 : 0.0;
      for (int k = 0; k < n; ++k) s += b[k][i] * b[k][j];
      ht.push_back({i, j, s});
    }
  q.H = wgf::SparseMatrix::from_triplets(n, n, ht);
  q.g.resize(n);
  q.center.resize(n);
  for (double& v : q.g) v = val(rng);
  for (double& v : q.center) v = val(rng);

  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  const int nb = std::min(nbnd(rng), n);
  q.nonneg_indices.assign(all.begin(), all.begin() + nb);
  std::sort(q.nonneg_indices.begin(), q.nonneg_indices.end());

  // Guarantee feasibility: b = A z_feas with z_feas respecting the bounds.
  std::vector<double> z_feas(n);
  for (double& v : z_feas) v = std::abs(val(rng)) + 0.1;
  if (m > 0) {
    std::vector<wgf::SparseMatrix::Triplet> at;
    for (int r = 0; r < m; ++r)
      for (int j = 0; j < n; ++j) at.push_back({r, j, val(rng)});
    q.A = wgf::SparseMatrix::from_triplets(m, n, at);
    q.b = q.A.multiply(z_feas);
  } else {
    q.A = wgf::SparseMatrix(0, n);
  }
  return q;
}

}  // namespace test
