#include "wgf/kkt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace wgf {

namespace {

// Exact minimum-degree ordering on the elimination graph. Quality only
// affects fill; any permutation is numerically valid. Ties break on the
// smaller node id so the ordering is deterministic.
std::vector<int> min_degree_ordering(std::vector<std::vector<int>> adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> perm;
  perm.reserve(n);
  std::vector<char> alive(n, 1);
  std::vector<int> degree(n);
  using Node = std::pair<int, int>;  // (degree, id)
  std::priority_queue<Node, std::vector<Node>, std::greater<Node>> heap;
  for (int v = 0; v < n; ++v) {
    degree[v] = static_cast<int>(adj[v].size());
    heap.push({degree[v], v});
  }
  std::vector<int> nbrs, merged;
  for (int count = 0; count < n; ++count) {
    int v = -1;
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (alive[u] && d == degree[u]) {
        v = u;
        break;
      }
    }
    if (v < 0) throw std::logic_error("min_degree_ordering: heap exhausted");
    perm.push_back(v);
    alive[v] = 0;
    nbrs.clear();
    for (int u : adj[v])
      if (alive[u]) nbrs.push_back(u);
    adj[v].clear();
    adj[v].shrink_to_fit();
    for (int u : nbrs) {
      // adj[u] <- (adj[u] union nbrs) minus {u, v, dead}
      merged.clear();
      auto a = adj[u].begin(), ae = adj[u].end();
      auto b = nbrs.begin(), be = nbrs.end();
      while (a != ae || b != be) {
        int next;
        if (a == ae)
          next = *b++;
        else if (b == be)
          next = *a++;
        else if (*a < *b)
          next = *a++;
        else if (*b < *a)
          next = *b++;
        else {
          next = *a++;
          ++b;
        }
        if (next == u || !alive[next]) continue;
        if (!merged.empty() && merged.back() == next) continue;
        merged.push_back(next);
      }
      adj[u].swap(merged);
      degree[u] = static_cast<int>(adj[u].size());
      heap.push({degree[u], u});
    }
  }
  return perm;
}

}  // namespace

KktSolver::KktSolver(const SparseMatrix& H, const SparseMatrix& A)
    : H_(H), A_(A) {
  n_ = H.rows();
  if (H.cols() != n_) throw std::invalid_argument("KktSolver: H not square");
  m_ = A.rows();
  if (m_ > 0 && A.cols() != n_)
    throw std::invalid_argument("KktSolver: A column count != H dimension");
  N_ = n_ + m_;
  build_pattern_and_ordering();
  symbolic();
}

void KktSolver::build_pattern_and_ordering() {
  // Symmetric adjacency of K, excluding diagonals.
  std::vector<std::vector<int>> adj(N_);
  for (int r = 0; r < n_; ++r)
    for (int p = H_.row_ptr()[r]; p < H_.row_ptr()[r + 1]; ++p) {
      int c = H_.col_idx()[p];
      if (c != r) adj[r].push_back(c);
    }
  for (int r = 0; r < m_; ++r)
    for (int p = A_.row_ptr()[r]; p < A_.row_ptr()[r + 1]; ++p) {
      int c = A_.col_idx()[p];
      adj[n_ + r].push_back(c);
      adj[c].push_back(n_ + r);
    }
  for (auto& lst : adj) {
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
  }

  perm_ = min_degree_ordering(adj);
  iperm_.assign(N_, 0);
  for (int k = 0; k < N_; ++k) iperm_[perm_[k]] = k;

  // Strictly-upper pattern of the permuted K, column-wise, with a source
  // index per entry so numeric refactorization is a flat copy.
  // Source encoding: p >= 0 -> H.values()[p]; p < 0 -> A.values()[~p].
  kp_.assign(N_ + 1, 0);
  ki_.clear();
  ksrc_.clear();
  kdiag_src_.assign(N_, -1);
  std::vector<std::pair<int, int>> col_entries;  // (permuted row, source)
  for (int k = 0; k < N_; ++k) {
    col_entries.clear();
    int orig = perm_[k];
    if (orig < n_) {
      for (int p = H_.row_ptr()[orig]; p < H_.row_ptr()[orig + 1]; ++p) {
        int c = H_.col_idx()[p];
        if (c == orig) {
          kdiag_src_[k] = p;
        } else if (iperm_[c] < k) {
          col_entries.push_back({iperm_[c], p});
        }
      }
    } else {
      int r = orig - n_;
      for (int p = A_.row_ptr()[r]; p < A_.row_ptr()[r + 1]; ++p) {
        int c = A_.col_idx()[p];
        if (iperm_[c] < k) col_entries.push_back({iperm_[c], ~p});
      }
    }
    std::sort(col_entries.begin(), col_entries.end());
    for (auto& [row, src] : col_entries) {
      ki_.push_back(row);
      ksrc_.push_back(src);
    }
    kp_[k + 1] = static_cast<int>(ki_.size());
  }

  // Insert A entries whose dual index precedes the primal index in the
  // permuted order: entry (dual r, primal c) belongs to column iperm_[c].
  std::vector<std::vector<std::pair<int, int>>> extra(N_);
  bool any_extra = false;
  for (int r = 0; r < m_; ++r)
    for (int p = A_.row_ptr()[r]; p < A_.row_ptr()[r + 1]; ++p) {
      int c = A_.col_idx()[p];
      if (iperm_[n_ + r] < iperm_[c]) {
        extra[iperm_[c]].push_back({iperm_[n_ + r], ~p});
        any_extra = true;
      }
    }
  if (any_extra) {
    std::vector<int> nki;
    std::vector<int> nsrc;
    std::vector<int> nkp(N_ + 1, 0);
    nki.reserve(ki_.size());
    nsrc.reserve(ksrc_.size());
    for (int k = 0; k < N_; ++k) {
      std::vector<std::pair<int, int>> col;
      for (int p = kp_[k]; p < kp_[k + 1]; ++p)
        col.push_back({ki_[p], ksrc_[p]});
      for (auto& e : extra[k]) col.push_back(e);
      std::sort(col.begin(), col.end());
      for (auto& [row, src] : col) {
        nki.push_back(row);
        nsrc.push_back(src);
      }
      nkp[k + 1] = static_cast<int>(nki.size());
    }
    kp_.swap(nkp);
    ki_.swap(nki);
    ksrc_.swap(nsrc);
  }
  kx_.assign(ki_.size(), 0.0);
  kdiag_.assign(N_, 0.0);
}

void KktSolver::symbolic() {
  parent_.assign(N_, -1);
  std::vector<int> lnz(N_, 0), flag(N_, -1);
  for (int k = 0; k < N_; ++k) {
    flag[k] = k;
    for (int p = kp_[k]; p < kp_[k + 1]; ++p) {
      for (int i = ki_[p]; flag[i] != k; i = parent_[i]) {
        if (parent_[i] == -1) parent_[i] = k;
        ++lnz[i];
        flag[i] = k;
      }
    }
  }
  lp_.assign(N_ + 1, 0);
  for (int k = 0; k < N_; ++k) lp_[k + 1] = lp_[k] + lnz[k];
  li_.assign(lp_[N_], 0);
  lx_.assign(lp_[N_], 0.0);
  d_.assign(N_, 0.0);
}

void KktSolver::assemble_values() {
  for (std::size_t p = 0; p < ksrc_.size(); ++p) {
    int s = ksrc_[p];
    kx_[p] = s >= 0 ? H_.values()[s] : A_.values()[~s];
  }
  for (int k = 0; k < N_; ++k) {
    int orig = perm_[k];
    if (orig < n_) {
      double v = kdiag_src_[k] >= 0 ? H_.values()[kdiag_src_[k]] : 0.0;
      if (!extra_diag_.empty()) v += extra_diag_[orig];
      kdiag_[k] = v + shift_;
    } else {
      kdiag_[k] = -shift_;
    }
  }
}

bool KktSolver::factorize(const std::vector<double>& extra_diag,
                          double shift) {
  if (!extra_diag.empty() && (int)extra_diag.size() != n_)
    throw std::invalid_argument("KktSolver::factorize: extra_diag size");
  extra_diag_ = extra_diag;
  shift_ = shift;
  assemble_values();

  std::vector<int> lnz(N_, 0), flag(N_, -1), pattern(N_);
  std::vector<double> y(N_, 0.0);
  factorized_ = false;
  for (int k = 0; k < N_; ++k) {
    int top = N_;
    flag[k] = k;
    for (int p = kp_[k]; p < kp_[k + 1]; ++p) {
      int i = ki_[p];
      y[i] += kx_[p];
      int len = 0;
      for (; flag[i] != k; i = parent_[i]) {
        pattern[len++] = i;
        flag[i] = k;
      }
      while (len > 0) pattern[--top] = pattern[--len];
    }
    double dk = kdiag_[k];
    for (; top < N_; ++top) {
      int i = pattern[top];
      double yi = y[i];
      y[i] = 0.0;
      int pend = lp_[i] + lnz[i];
      for (int p = lp_[i]; p < pend; ++p) y[li_[p]] -= lx_[p] * yi;
      double lki = yi / d_[i];
      dk -= lki * yi;
      li_[pend] = k;
      lx_[pend] = lki;
      ++lnz[i];
    }
    if (!std::isfinite(dk) || std::abs(dk) < kPivotTol) return false;
    d_[k] = dk;
  }
  // Record the used column counts as final offsets for the solve phase.
  lnz_final_ = lnz;
  factorized_ = true;
  return true;
}

void KktSolver::solve_factored(std::vector<double>& b) const {
  // b is in permuted ordering; overwritten with the solution.
  for (int k = 0; k < N_; ++k) {
    double bk = b[k];
    if (bk != 0.0) {
      int pend = lp_[k] + lnz_final_[k];
      for (int p = lp_[k]; p < pend; ++p) b[li_[p]] -= lx_[p] * bk;
    }
  }
  for (int k = 0; k < N_; ++k) b[k] /= d_[k];
  for (int k = N_ - 1; k >= 0; --k) {
    double s = b[k];
    int pend = lp_[k] + lnz_final_[k];
    for (int p = lp_[k]; p < pend; ++p) s -= lx_[p] * b[li_[p]];
    b[k] = s;
  }
}

void KktSolver::apply_K(const std::vector<double>& x,
                        std::vector<double>& y) const {
  // y = K x with K the shifted system in original ordering.
  std::vector<double> x1(x.begin(), x.begin() + n_);
  std::vector<double> hx = H_.multiply(x1);
  for (int i = 0; i < n_; ++i) {
    double v = hx[i] + shift_ * x[i];
    if (!extra_diag_.empty()) v += extra_diag_[i] * x[i];
    y[i] = v;
  }
  if (m_ > 0) {
    std::vector<double> x2(x.begin() + n_, x.end());
    std::vector<double> atx2 = A_.multiply_transpose(x2);
    for (int i = 0; i < n_; ++i) y[i] += atx2[i];
    std::vector<double> ax1 = A_.multiply(x1);
    for (int r = 0; r < m_; ++r) y[n_ + r] = ax1[r] - shift_ * x[n_ + r];
  }
}

void KktSolver::solve(const std::vector<double>& r1,
                      const std::vector<double>& r2, std::vector<double>& dx,
                      std::vector<double>& dy) const {
  if (!factorized_) throw std::logic_error("KktSolver::solve: not factorized");
  if ((int)r1.size() != n_ || (int)r2.size() != m_)
    throw std::invalid_argument("KktSolver::solve: rhs size");
  std::vector<double> rhs(N_);
  std::copy(r1.begin(), r1.end(), rhs.begin());
  std::copy(r2.begin(), r2.end(), rhs.begin() + n_);
  double rnorm = 0.0;
  for (double v : rhs) rnorm = std::max(rnorm, std::abs(v));

  std::vector<double> x(N_, 0.0), work(N_), resid(N_);
  std::vector<double> best_x;
  double best_err = std::numeric_limits<double>::infinity();
  resid = rhs;
  last_rel_residual_ = 0.0;
  for (int pass = 0; pass < 4; ++pass) {
    std::vector<double> pb(N_);
    for (int k = 0; k < N_; ++k) pb[k] = resid[perm_[k]];
    solve_factored(pb);
    for (int k = 0; k < N_; ++k) x[perm_[k]] += pb[k];
    apply_K(x, work);
    double err = 0.0;
    for (int i = 0; i < N_; ++i) {
      resid[i] = rhs[i] - work[i];
      err = std::max(err, std::abs(resid[i]));
    }
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
    double rel = rnorm > 0.0 ? err / rnorm : err;
    bool improved = rel < best_err;
    if (improved || best_x.empty()) {
      best_err = rel;
      best_x = x;
    }
    if (rel <= 1e-15 || !improved) break;
  }
  last_rel_residual_ = best_err;
  dx.assign(best_x.begin(), best_x.begin() + n_);
  dy.assign(best_x.begin() + n_, best_x.end());
}

KktSolveResult kkt_solve(const SparseMatrix& H, const SparseMatrix& A,
                         const std::vector<double>& r1,
                         const std::vector<double>& r2, double diag_shift) {
  if (diag_shift < 0.0)
    throw std::invalid_argument("kkt_solve: negative diag_shift");
  KktSolver solver(H, A);
  double shift = diag_shift;
  for (int attempt = 0; attempt < 3; ++attempt) {
    if (solver.factorize({}, shift)) {
      KktSolveResult res;
      solver.solve(r1, r2, res.dx, res.dy);
      res.relative_residual = solver.last_relative_residual();
      res.shift_used = shift;
      if (res.relative_residual <= KktSolver::kResidualTol) return res;
    }
    shift = shift == 0.0 ? 1e-12 : shift * 100.0;
  }
  throw std::runtime_error(
      "kkt_solve: singular or severely ill-conditioned system (pivot/residual "
      "failure after two shift escalations)");
}

}  // namespace wgf
