#pragma once

// Small dense reference implementations used as independent oracles in the
// tests. Deliberately naive: correctness over speed, no shared code with the
// library's solve paths.

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace test {

using Matrix = std::vector<std::vector<double>>;
using Vector = std::vector<double>;

// Gaussian elimination with partial pivoting.
inline Vector dense_solve(Matrix a, Vector b) {
  const int n = static_cast<int>(a.size());
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    if (a[k][k] == 0.0) throw std::runtime_error("dense_solve: singular");
    for (int i = k + 1; i < n; ++i) {
      double f = a[i][k] / a[k][k];
      for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  Vector x(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

inline int dense_rank(Matrix a, double tol = 1e-10) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = rank;
    for (int i = rank + 1; i < rows; ++i)
      if (std::abs(a[i][c]) > std::abs(a[piv][c])) piv = i;
    if (std::abs(a[piv][c]) < tol) continue;
    std::swap(a[rank], a[piv]);
    for (int i = 0; i < rows; ++i) {
      if (i == rank) continue;
      double f = a[i][c] / a[rank][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Cyclic Jacobi eigenvalue iteration for small symmetric matrices.
inline Vector sym_eigenvalues(Matrix a, int sweeps = 64) {
  const int n = static_cast<int>(a.size());
  for (int s = 0; s < sweeps; ++s) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        double theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - sn * akq;
          a[k][q] = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - sn * aqk;
          a[q][k] = sn * apk + c * aqk;
        }
      }
  }
  Vector ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a[i][i];
  return ev;
}

// Orthonormal basis (columns) of the zero-sum subspace {sigma : sum = 0}
// by Gram-Schmidt on e_i - e_n.
inline Matrix zero_sum_basis(int n) {
  Matrix basis;
  for (int i = 0; i + 1 < n; ++i) {
    Vector v(n, 0.0);
    v[i] = 1.0;
    v[n - 1] = -1.0;
    for (const Vector& u : basis) {
      double d = 0.0;
      for (int k = 0; k < n; ++k) d += u[k] * v[k];
      for (int k = 0; k < n; ++k) v[k] -= d * u[k];
    }
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (double& x : v) x /= nrm;
    basis.push_back(v);
  }
  return basis;  // basis[j] is the j-th column
}

// B^T A B for a column list B.
inline Matrix project_quadratic(const Matrix& a, const Matrix& basis) {
  const int n = static_cast<int>(a.size());
  const int k = static_cast<int>(basis.size());
  Matrix out(k, Vector(k, 0.0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      double s = 0.0;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) s += basis[i][r] * a[r][c] * basis[j][c];
      out[i][j] = s;
    }
  return out;
}

inline Vector fd_gradient(const std::function<double(const Vector&)>& f,
                          const Vector& u, double h_scale = 1e-5) {
  Vector g(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    double h = h_scale * std::max(1.0, std::abs(u[i]));
    Vector up = u, um = u;
    up[i] += h;
    um[i] -= h;
    g[i] = (f(up) - f(um)) / (2.0 * h);
  }
  return g;
}

inline Matrix fd_hessian(const std::function<double(const Vector&)>& f,
                         const Vector& u, double h_scale = 2e-4) {
  const std::size_t n = u.size();
  Matrix h(n, Vector(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double hi = h_scale * std::max(1.0, std::abs(u[i]));
      double hj = h_scale * std::max(1.0, std::abs(u[j]));
      auto eval = [&](double si, double sj) {
        Vector v = u;
        v[i] += si * hi;
        v[j] += sj * hj;
        return f(v);
      };
      double d = (eval(1, 1) - eval(1, -1) - eval(-1, 1) + eval(-1, -1)) /
                 (4.0 * hi * hj);
      h[i][j] = d;
      h[j][i] = d;
    }
  return h;
}

inline double max_abs(const Matrix& a) {
  double m = 0.0;
  for (const Vector& row : a)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace test
