#include "wgf/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace wgf {

double safe_log(double v) { return std::log(v < kLogFloor ? kLogFloor : v); }

double Kernel::eval(double r) const {
  double w = 0.0;
  for (const PowerTerm& t : powers) w += t.coeff * std::pow(r, t.exponent) / t.exponent;
  if (log_coeff != 0.0) w -= log_coeff * std::log(r);
  if (gauss_coeff != 0.0) w += gauss_coeff * std::exp(-gauss_alpha * r * r);
  return w;
}

double Kernel::cell_average_1d(double h) const {
  // (1/2h) int_{-h}^{h} W.  |x|^a/a averages to h^a/(a(a+1)); -ln|x|
  // averages to 1 - ln h.
  double w = 0.0;
  for (const PowerTerm& t : powers) {
    if (t.exponent <= -1.0)
      throw std::invalid_argument("Kernel: cell average diverges (a <= -1)");
    w += t.coeff * std::pow(h, t.exponent) / (t.exponent * (t.exponent + 1.0));
  }
  if (log_coeff != 0.0) w += log_coeff * (1.0 - std::log(h));
  if (gauss_coeff != 0.0) w += gauss_coeff;  // smooth at 0, no averaging
  return w;
}

double Kernel::cell_average_2d(double hx, double hy) const {
  double w = 0.0;
  for (const PowerTerm& t : powers) {
    if (t.exponent == 2.0) {
      // avg (x^2+y^2) = (hx^2 + hy^2)/3
      w += t.coeff * (hx * hx + hy * hy) / 6.0;
    } else if (t.exponent == 4.0) {
      // avg (x^2+y^2)^2 = hx^4/5 + 2 hx^2 hy^2 / 9 + hy^4/5
      w += t.coeff *
           (std::pow(hx, 4) / 5.0 + 2.0 * hx * hx * hy * hy / 9.0 +
            std::pow(hy, 4) / 5.0) /
           4.0;
    } else {
      throw std::invalid_argument(
          "Kernel: 2D cell average implemented for exponents 2 and 4 only");
    }
  }
  if (log_coeff != 0.0) {
    // avg of ln|x| over [-hx,hx]x[-hy,hy]:
    //   1/2 [ ln(hx^2+hy^2) - 3 + (hx/hy) atan(hy/hx) + (hy/hx) atan(hx/hy) ]
    // For hx == hy this is ln h + (ln 2 + pi/2 - 3)/2.
    double avg_ln = 0.5 * (std::log(hx * hx + hy * hy) - 3.0 +
                           (hx / hy) * std::atan(hy / hx) +
                           (hy / hx) * std::atan(hx / hy));
    w += log_coeff * (-avg_ln);
  }
  if (gauss_coeff != 0.0) w += gauss_coeff;
  return w;
}

KernelTable kernel_table(const Kernel& kernel, const Grid& grid) {
  KernelTable t;
  t.nx = grid.nx;
  t.ny = grid.dim == 2 ? grid.ny : 1;
  t.w.assign(static_cast<std::size_t>(t.nx) * t.ny, 0.0);
  for (int dj = 0; dj < t.ny; ++dj)
    for (int di = 0; di < t.nx; ++di) {
      if (di == 0 && dj == 0) continue;
      double rx = di * grid.dx;
      double ry = grid.dim == 2 ? dj * grid.dy : 0.0;
      t.w[dj * t.nx + di] = kernel.eval(std::hypot(rx, ry));
    }
  t.w[0] = grid.dim == 1 ? kernel.cell_average_1d(0.5 * grid.dx)
                         : kernel.cell_average_2d(0.5 * grid.dx, 0.5 * grid.dy);
  return t;
}

EnergySpec EnergySpec::make_power_internal(double m_exp,
                                           std::optional<double> coeff) {
  if (!(m_exp > 1.0))
    throw std::invalid_argument("EnergySpec: power exponent must exceed 1");
  EnergySpec s;
  s.internal = InternalEnergy::power;
  s.power_exponent = m_exp;
  s.power_coeff = coeff ? *coeff : 1.0 / (m_exp - 1.0);
  return s;
}

namespace {

// U, U', U'' for the internal energy; logs clamped at kLogFloor.
double internal_value(const EnergySpec& s, double r) {
  switch (s.internal) {
    case InternalEnergy::none:
      return 0.0;
    case InternalEnergy::entropy:
      return r * safe_log(r);
    case InternalEnergy::power:
      return s.power_coeff * std::pow(r, s.power_exponent);
  }
  return 0.0;
}

double internal_d1(const EnergySpec& s, double r) {
  switch (s.internal) {
    case InternalEnergy::none:
      return 0.0;
    case InternalEnergy::entropy:
      return safe_log(r) + 1.0;
    case InternalEnergy::power:
      return s.power_coeff * s.power_exponent *
             std::pow(r, s.power_exponent - 1.0);
  }
  return 0.0;
}

double internal_d2(const EnergySpec& s, double r) {
  switch (s.internal) {
    case InternalEnergy::none:
      return 0.0;
    case InternalEnergy::entropy:
      return 1.0 / (r < kLogFloor ? kLogFloor : r);
    case InternalEnergy::power:
      return s.power_coeff * s.power_exponent * (s.power_exponent - 1.0) *
             std::pow(r, s.power_exponent - 2.0);
  }
  return 0.0;
}

// (W * rho)_j by direct summation over the offset table.
std::vector<double> interaction_convolution(const DensityField& rho,
                                            const KernelTable& w) {
  const Grid& g = rho.grid;
  std::vector<double> out(static_cast<std::size_t>(g.n_cells()), 0.0);
  if (g.dim == 1) {
    for (int j = 0; j < g.nx; ++j) {
      double s = 0.0;
      for (int l = 0; l < g.nx; ++l) s += w.at(j - l) * rho.values[l];
      out[j] = s;
    }
  } else {
    for (int l = 0; l < g.ny; ++l)
      for (int j = 0; j < g.nx; ++j) {
        double s = 0.0;
        for (int l2 = 0; l2 < g.ny; ++l2)
          for (int j2 = 0; j2 < g.nx; ++j2)
            s += w.at(j - j2, l - l2) * rho.values[g.cell_index(j2, l2)];
        out[g.cell_index(j, l)] = s;
      }
  }
  return out;
}

}  // namespace

double energy_value(const DensityField& rho, const EnergySpec& spec) {
  const Grid& g = rho.grid;
  const double vol = g.cell_volume();
  double e = 0.0;
  for (int i = 0; i < g.n_cells(); ++i) {
    double r = rho.values[i];
    double cell = internal_value(spec, r);
    if (spec.has_potential()) cell += spec.potential[i] * r;
    e += cell;
  }
  e *= vol;
  if (spec.has_interaction()) {
    std::vector<double> conv = interaction_convolution(rho, spec.interaction);
    double s = 0.0;
    for (int i = 0; i < g.n_cells(); ++i) s += conv[i] * rho.values[i];
    e += 0.5 * s * vol * vol;
  }
  return e;
}

std::vector<double> energy_gradient(const DensityField& rho,
                                    const EnergySpec& spec) {
  const Grid& g = rho.grid;
  const double vol = g.cell_volume();
  std::vector<double> grad(static_cast<std::size_t>(g.n_cells()), 0.0);
  for (int i = 0; i < g.n_cells(); ++i) {
    double v = internal_d1(spec, rho.values[i]);
    if (spec.has_potential()) v += spec.potential[i];
    grad[i] = v * vol;
  }
  if (spec.has_interaction()) {
    std::vector<double> conv = interaction_convolution(rho, spec.interaction);
    for (int i = 0; i < g.n_cells(); ++i) grad[i] += conv[i] * vol * vol;
  }
  return grad;
}

SparseMatrix energy_hessian(const DensityField& rho, const EnergySpec& spec) {
  const Grid& g = rho.grid;
  const double vol = g.cell_volume();
  const int n = g.n_cells();
  std::vector<SparseMatrix::Triplet> t;
  if (spec.has_interaction()) {
    t.reserve(static_cast<std::size_t>(n) * n);
    const double v2 = vol * vol;
    if (g.dim == 1) {
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          t.push_back({j, l, spec.interaction.at(j - l) * v2});
    } else {
      for (int l = 0; l < g.ny; ++l)
        for (int j = 0; j < g.nx; ++j)
          for (int l2 = 0; l2 < g.ny; ++l2)
            for (int j2 = 0; j2 < g.nx; ++j2)
              t.push_back({g.cell_index(j, l), g.cell_index(j2, l2),
                           spec.interaction.at(j - j2, l - l2) * v2});
    }
  }
  if (spec.internal != InternalEnergy::none)
    for (int i = 0; i < n; ++i)
      t.push_back({i, i, internal_d2(spec, rho.values[i]) * vol});
  return SparseMatrix::from_triplets(n, n, std::move(t));
}

double fisher_value(const DensityField& rho) {
  const Grid& g = rho.grid;
  const double vol = g.cell_volume();
  double s = 0.0;
  auto face_term = [&](int a, int b, double dxe) {
    double ra = rho.values[a], rb = rho.values[b];
    double d = safe_log(rb) - safe_log(ra);
    return d * d / (dxe * dxe) * 0.5 * (ra + rb);
  };
  for (int l = 0; l < g.ny; ++l)
    for (int j = 0; j + 1 < g.nx; ++j)
      s += face_term(g.cell_index(j, l), g.cell_index(j + 1, l), g.dx);
  if (g.dim == 2)
    for (int l = 0; l + 1 < g.ny; ++l)
      for (int j = 0; j < g.nx; ++j)
        s += face_term(g.cell_index(j, l), g.cell_index(j, l + 1), g.dy);
  return s * vol;
}

SparseMatrix fisher_hessian(const DensityField& rho) {
  const Grid& g = rho.grid;
  const double vol = g.cell_volume();
  const int n = g.n_cells();
  std::vector<SparseMatrix::Triplet> t;
  t.reserve(static_cast<std::size_t>(4) * n);
  // Per adjacent pair (a,b):  t_ab = (r_a - r_b)(log r_a - log r_b) + r_a + r_b
  // contributes t_ab/r_a^2 and t_ab/r_b^2 on the diagonal and
  // -t_ab/(r_a r_b) off-diagonal, all scaled by vol/dx_axis^2.
  auto add_face = [&](int a, int b, double dxe) {
    double ra = rho.values[a], rb = rho.values[b];
    double dlog = safe_log(ra) - safe_log(rb);
    double tab = (ra - rb) * dlog + (ra + rb);
    double q = vol / (dxe * dxe);
    t.push_back({a, a, q * tab / (ra * ra)});
    t.push_back({b, b, q * tab / (rb * rb)});
    t.push_back({a, b, -q * tab / (ra * rb)});
    t.push_back({b, a, -q * tab / (ra * rb)});
  };
  for (int l = 0; l < g.ny; ++l)
    for (int j = 0; j + 1 < g.nx; ++j)
      add_face(g.cell_index(j, l), g.cell_index(j + 1, l), g.dx);
  if (g.dim == 2)
    for (int l = 0; l + 1 < g.ny; ++l)
      for (int j = 0; j < g.nx; ++j)
        add_face(g.cell_index(j, l), g.cell_index(j, l + 1), g.dy);
  return SparseMatrix::from_triplets(n, n, std::move(t));
}

}  // namespace wgf
