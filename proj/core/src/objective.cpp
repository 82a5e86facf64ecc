#include "wgf/objective.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wgf {

void JKOStepProblem::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("JKOStepProblem: tau <= 0");
  if (fisher.value < 0.0)
    throw std::invalid_argument("JKOStepProblem: negative fisher coefficient");
  if (beta_tilde_multiplier < 1)
    throw std::invalid_argument(
        "JKOStepProblem: beta_tilde_multiplier must be a positive integer");
  if ((int)rho_prev.values.size() != grid.n_cells())
    throw std::invalid_argument("JKOStepProblem: rho_prev size mismatch");
  if (spec.has_potential() && (int)spec.potential.size() != grid.n_cells())
    throw std::invalid_argument("JKOStepProblem: potential size mismatch");
}

ContinuityConstraint build_constraints(const JKOStepProblem& p) {
  p.validate();
  const Grid& g = p.grid;
  StateLayout lay(g);
  std::vector<SparseMatrix::Triplet> t;
  t.reserve(static_cast<std::size_t>(g.n_cells()) * 5);
  for (int l = 0; l < g.ny; ++l)
    for (int j = 0; j < g.nx; ++j) {
      int cell = g.cell_index(j, l);
      t.push_back({cell, lay.rho_index(cell), 1.0});
      if (j + 1 < g.nx) t.push_back({cell, lay.mx_index(j + 1, l), 1.0 / g.dx});
      if (j > 0) t.push_back({cell, lay.mx_index(j, l), -1.0 / g.dx});
      if (g.dim == 2) {
        if (l + 1 < g.ny) t.push_back({cell, lay.my_index(j, l + 1), 1.0 / g.dy});
        if (l > 0) t.push_back({cell, lay.my_index(j, l), -1.0 / g.dy});
      }
    }
  ContinuityConstraint c;
  c.A = SparseMatrix::from_triplets(g.n_cells(), lay.size(), std::move(t));
  c.b = p.rho_prev.values;
  c.nonneg_index_set.resize(static_cast<std::size_t>(g.n_cells()));
  for (int i = 0; i < g.n_cells(); ++i) c.nonneg_index_set[i] = i;
  return c;
}

namespace {

struct Face {
  int a, b;   // adjacent cell indices
  int m;      // state index of the face unknown
  double dx;  // spacing along the face axis
};

template <typename F>
void for_each_interior_face(const Grid& g, const StateLayout& lay, F&& fn) {
  for (int l = 0; l < g.ny; ++l)
    for (int j = 1; j < g.nx; ++j)
      fn(Face{g.cell_index(j - 1, l), g.cell_index(j, l), lay.mx_index(j, l),
              g.dx});
  if (g.dim == 2)
    for (int l = 1; l < g.ny; ++l)
      for (int j = 0; j < g.nx; ++j)
        fn(Face{g.cell_index(j, l - 1), g.cell_index(j, l), lay.my_index(j, l),
                g.dy});
}

double objective_value_impl(const std::vector<double>& u,
                            const JKOStepProblem& p, bool surrogate) {
  const Grid& g = p.grid;
  StateLayout lay(g);
  if ((int)u.size() != lay.size())
    throw std::invalid_argument("objective_value: state size mismatch");
  const int n = g.n_cells();
  for (int i = 0; i < n; ++i)
    if (!(u[i] > 0.0)) return std::numeric_limits<double>::infinity();

  const double vol = g.cell_volume();
  const double fisher =
      surrogate ? p.fisher.value * p.beta_tilde_multiplier : p.fisher.value;
  double f = 0.0;
  for_each_interior_face(g, lay, [&](const Face& fc) {
    double ra = u[fc.a], rb = u[fc.b], m = u[fc.m];
    double s = ra + rb;
    double d = safe_log(rb) - safe_log(ra);
    f += vol * (2.0 * m * m / s + fisher / (fc.dx * fc.dx) * d * d * 0.5 * s);
  });

  DensityField rho(g);
  for (int i = 0; i < n; ++i) rho.values[i] = u[i];
  if (surrogate) {
    EnergySpec local = p.spec;
    local.interaction = KernelTable{};
    double e = energy_value(rho, local);
    for (int i = 0; i < n; ++i) e += rho.values[i] * safe_log(rho.values[i]) * vol;
    f += 2.0 * p.tau * e;
  } else {
    f += 2.0 * p.tau * energy_value(rho, p.spec);
  }
  return f;
}

}  // namespace

double objective_value(const std::vector<double>& u, const JKOStepProblem& p) {
  return objective_value_impl(u, p, false);
}

double surrogate_objective_value(const std::vector<double>& u,
                                 const JKOStepProblem& p) {
  return objective_value_impl(u, p, true);
}

std::vector<double> objective_gradient(const std::vector<double>& u,
                                       const JKOStepProblem& p) {
  const Grid& g = p.grid;
  StateLayout lay(g);
  if ((int)u.size() != lay.size())
    throw std::invalid_argument("objective_gradient: state size mismatch");
  const int n = g.n_cells();
  for (int i = 0; i < n; ++i)
    if (!(u[i] > 0.0))
      throw std::domain_error("objective_gradient: density not interior");

  const double vol = g.cell_volume();
  const double fisher = p.fisher.value;
  std::vector<double> grad(u.size(), 0.0);
  for_each_interior_face(g, lay, [&](const Face& fc) {
    double ra = u[fc.a], rb = u[fc.b], m = u[fc.m];
    double s = ra + rb;
    double d = safe_log(rb) - safe_log(ra);
    double q = fisher / (fc.dx * fc.dx) * vol;
    grad[fc.m] += vol * 4.0 * m / s;
    double kin = -vol * 2.0 * m * m / (s * s);
    grad[fc.a] += kin + q * (-d * s / ra + 0.5 * d * d);
    grad[fc.b] += kin + q * (d * s / rb + 0.5 * d * d);
  });

  DensityField rho(g);
  for (int i = 0; i < n; ++i) rho.values[i] = u[i];
  std::vector<double> eg = energy_gradient(rho, p.spec);
  for (int i = 0; i < n; ++i) grad[i] += 2.0 * p.tau * eg[i];
  return grad;
}

SparseMatrix objective_hessian(const std::vector<double>& u,
                               const JKOStepProblem& p, HessianMode mode) {
  const Grid& g = p.grid;
  StateLayout lay(g);
  if ((int)u.size() != lay.size())
    throw std::invalid_argument("objective_hessian: state size mismatch");
  const int n = g.n_cells();
  for (int i = 0; i < n; ++i)
    if (!(u[i] > 0.0))
      throw std::domain_error("objective_hessian: density not interior");

  const bool surrogate = mode == HessianMode::surrogate;
  const double vol = g.cell_volume();
  const double fisher =
      surrogate ? p.fisher.value * p.beta_tilde_multiplier : p.fisher.value;

  std::vector<SparseMatrix::Triplet> t;
  t.reserve(static_cast<std::size_t>(11) * lay.size());
  for_each_interior_face(g, lay, [&](const Face& fc) {
    double ra = u[fc.a], rb = u[fc.b], m = u[fc.m];
    double s = ra + rb;
    double q = fisher / (fc.dx * fc.dx) * vol;
    // kinetic block: 2 m^2 / s
    t.push_back({fc.m, fc.m, 4.0 * vol / s});
    double mixed = -4.0 * vol * m / (s * s);
    t.push_back({fc.m, fc.a, mixed});
    t.push_back({fc.a, fc.m, mixed});
    t.push_back({fc.m, fc.b, mixed});
    t.push_back({fc.b, fc.m, mixed});
    double kin2 = 4.0 * vol * m * m / (s * s * s);
    t.push_back({fc.a, fc.a, kin2});
    t.push_back({fc.b, fc.b, kin2});
    t.push_back({fc.a, fc.b, kin2});
    t.push_back({fc.b, fc.a, kin2});
    // Fisher block via t_ab = (ra-rb)(log ra - log rb) + (ra+rb)
    double dlog = safe_log(ra) - safe_log(rb);
    double tab = (ra - rb) * dlog + s;
    t.push_back({fc.a, fc.a, q * tab / (ra * ra)});
    t.push_back({fc.b, fc.b, q * tab / (rb * rb)});
    t.push_back({fc.a, fc.b, -q * tab / (ra * rb)});
    t.push_back({fc.b, fc.a, -q * tab / (ra * rb)});
  });

  DensityField rho(g);
  for (int i = 0; i < n; ++i) rho.values[i] = u[i];
  const double scale = 2.0 * p.tau;
  if (surrogate) {
    EnergySpec local = p.spec;
    local.interaction = KernelTable{};
    SparseMatrix eh = energy_hessian(rho, local);
    for (int r = 0; r < n; ++r)
      for (int pos = eh.row_ptr()[r]; pos < eh.row_ptr()[r + 1]; ++pos)
        t.push_back({r, eh.col_idx()[pos], scale * eh.values()[pos]});
    double clamped;
    for (int i = 0; i < n; ++i) {
      clamped = rho.values[i] < kLogFloor ? kLogFloor : rho.values[i];
      t.push_back({i, i, scale * vol / clamped});  // entropy replaces W
    }
  } else {
    SparseMatrix eh = energy_hessian(rho, p.spec);
    for (int r = 0; r < n; ++r)
      for (int pos = eh.row_ptr()[r]; pos < eh.row_ptr()[r + 1]; ++pos)
        t.push_back({r, eh.col_idx()[pos], scale * eh.values()[pos]});
  }
  return SparseMatrix::from_triplets(lay.size(), lay.size(), std::move(t));
}

}  // namespace wgf
