#pragma once

#include <optional>
#include <vector>

#include "wgf/grid.hpp"
#include "wgf/sparse.hpp"

namespace wgf {

/// Densities below this floor are clamped inside logarithms. The
/// interior-point path keeps iterates strictly positive, so the clamp is a
/// safety net for user-supplied fields.
inline constexpr double kLogFloor = 1e-14;

double safe_log(double v);

/// Interaction kernel W(x) as a sum of radial terms:
///   sum_k  c_k |x|^{a_k} / a_k   +   log_coeff * (-ln|x|)
///   + gauss_coeff * exp(-gauss_alpha |x|^2)
/// The power/log split matches the usual attractive-repulsive families; the
/// |x|^a/a normalization makes a=2 the quadratic well x^2/2.
struct Kernel {
  struct PowerTerm {
    double exponent;  // > 0
    double coeff;
  };
  std::vector<PowerTerm> powers;
  double log_coeff = 0.0;  // contributes -log_coeff * ln|x|
  double gauss_coeff = 0.0;
  double gauss_alpha = 1.0;

  double eval(double r) const;
  /// Average over the 1D cell [-h, h]; throws when the average diverges.
  double cell_average_1d(double h) const;
  /// Average over the rectangular cell [-hx,hx] x [-hy,hy], closed form.
  double cell_average_2d(double hx, double hy) const;
};

/// Pairwise cell-center offset table with the W(0) entry replaced by the
/// cell average of the kernel. Entries are stored by absolute offset, so
/// table(delta) == table(-delta) holds exactly.
struct KernelTable {
  int nx = 0, ny = 1;  // offsets 0..nx-1 (and 0..ny-1 in 2D)
  std::vector<double> w;

  bool empty() const { return w.empty(); }
  double at(int di, int dj = 0) const {
    int ai = di < 0 ? -di : di;
    int aj = dj < 0 ? -dj : dj;
    return w[aj * nx + ai];
  }
};

KernelTable kernel_table(const Kernel& kernel, const Grid& grid);

enum class InternalEnergy { none, entropy, power };

/// Declarative description of the free energy
///   E(rho) = sum_j [U(rho_j) + V_j rho_j] vol
///          + 1/2 sum_{j,l} W(x_j - x_l) rho_j rho_l vol^2.
struct EnergySpec {
  InternalEnergy internal = InternalEnergy::none;
  double power_exponent = 2.0;  // m > 1 for the power law
  double power_coeff = 1.0;     // default 1/(m-1) via make_power_internal
  std::vector<double> potential;  // V at cell centers; empty when absent
  KernelTable interaction;        // empty when absent

  bool has_potential() const { return !potential.empty(); }
  bool has_interaction() const { return !interaction.empty(); }

  /// U(rho) = coeff * rho^m with coeff defaulting to 1/(m-1).
  static EnergySpec make_power_internal(double m_exp,
                                        std::optional<double> coeff = {});
};

/// Multiplier on the discrete Fisher information term of the step objective;
/// beta^-2 tau^2 in the standard mode, tau in the DLSS mode.
struct FisherCoeff {
  double value = 0.0;
};

double energy_value(const DensityField& rho, const EnergySpec& spec);
std::vector<double> energy_gradient(const DensityField& rho,
                                    const EnergySpec& spec);
/// Exact Hessian of the discrete energy. The interaction block is dense and
/// is materialized only here; step solvers that cannot afford it use the
/// surrogate objective Hessian instead.
SparseMatrix energy_hessian(const DensityField& rho, const EnergySpec& spec);

/// Discrete Fisher information with unit coefficient:
///   I(rho) = sum over interior faces of
///            (log rho_b - log rho_a)^2 / dx_axis^2 * (rho_a+rho_b)/2 * vol.
double fisher_value(const DensityField& rho);
SparseMatrix fisher_hessian(const DensityField& rho);

}  // namespace wgf
