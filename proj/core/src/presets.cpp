#include <cmath>
#include <stdexcept>

#include "wgf/driver.hpp"

namespace wgf {

namespace {

InitialData::Bump normal_bump_1d(double cx, double sigma, double weight) {
  // weight * N(cx, sigma^2) density
  return {cx, 0.0, 1.0 / (2.0 * sigma * sigma),
          weight / (std::sqrt(2.0 * M_PI) * sigma)};
}

InitialData::Bump normal_bump_2d(double cx, double cy, double sigma,
                                 double weight) {
  return {cx, cy, 1.0 / (2.0 * sigma * sigma),
          weight / (2.0 * M_PI * sigma * sigma)};
}

Kernel quad_log_kernel() {
  // |x|^2/2 - ln|x|
  Kernel k;
  k.powers.push_back({2.0, 1.0});
  k.log_coeff = 1.0;
  return k;
}

std::vector<Preset> build_library() {
  std::vector<Preset> lib;

  {
    Preset p;
    p.name = "heat1d";
    p.description = "1D heat equation as the entropy flow, beta = 1";
    p.dim = 1;
    p.nx = 99;  // dx = 0.0202
    p.xmin = 0.0;
    p.xmax = 2.0;
    p.tau = 0.0025;
    p.t_max = 0.1;
    p.beta_inv_sq = 1.0;
    p.internal = InternalEnergy::entropy;
    p.qp_tol = 1.25e-7;
    p.initial.kind = InitialData::Kind::gaussians;
    p.initial.bumps.push_back({1.0, 0.0, 100.0, 1.0});  // e^{-100 (x-1)^2}
    p.initial.floor = 1e-5;
    lib.push_back(p);
  }
  {
    Preset p;
    p.name = "pme1d";
    p.description = "1D porous medium (m=2) against the self-similar profile";
    p.dim = 1;
    p.nx = 49;  // dx = 0.0408
    p.xmin = -1.0;
    p.xmax = 1.0;
    p.tau = 5e-4;
    p.t_max = 0.01;
    p.beta_inv_sq = 1.0;
    p.internal = InternalEnergy::power;
    p.power_m = 2.0;
    p.power_coeff = 1.0;  // 1/(m-1)
    p.tol = 1e-8;
    p.initial.kind = InitialData::Kind::barenblatt;
    p.initial.bb = BarenblattParams{2.0, 0.8, 1e-3};
    p.initial.normalize = false;
    p.snapshot_stride = 4;
    lib.push_back(p);
  }
  {
    Preset p;
    p.name = "nfp1d";
    p.description =
        "1D nonlinear Fokker-Planck: m=2 diffusion with V = x^2/2";
    p.dim = 1;
    p.nx = 200;  // dx = 0.01
    p.xmin = -1.0;
    p.xmax = 1.0;
    p.tau = 0.004;
    p.t_max = 4.0;
    p.beta_inv_sq = 1.0 / 40.0;  // beta^-2 tau^2 = tau^2/40 = 4e-7
    p.internal = InternalEnergy::power;
    p.power_m = 2.0;
    p.power_coeff = 1.0;
    p.potential = PotentialKind::quadratic;
    p.initial.kind = InitialData::Kind::gaussians;
    p.initial.bumps.push_back(normal_bump_1d(0.0, 0.1, 0.125));
    p.initial.floor = 0.125 * 1e-8;
    p.snapshot_stride = 100;
    lib.push_back(p);
  }
  {
    Preset p;
    p.name = "agg1d";
    p.description =
        "1D aggregation with quadratic attraction and log repulsion";
    p.dim = 1;
    p.nx = 50;  // dx = 0.08
    p.xmin = -2.0;
    p.xmax = 2.0;
    p.tau = 0.016;
    p.t_max = 10.0;
    p.beta_inv_sq = 1.0 / 640.0;  // beta^-2 tau^2 = tau^2/640 = 4e-7
    p.kernel = quad_log_kernel();
    p.hessian_mode = HessianMode::surrogate;
    p.beta_tilde_multiplier = 1;
    p.initial.kind = InitialData::Kind::gaussians;
    p.initial.bumps.push_back(normal_bump_1d(0.0, 0.5, 1.0));
    p.initial.floor = 1e-8;
    p.snapshot_stride = 125;
    lib.push_back(p);
  }
  {
    Preset p;
    p.name = "dlss1d";
    p.description = "1D DLSS flow with V = x^2/2";
    p.dim = 1;
    p.nx = 800;  // dx = 0.01
    p.xmin = -4.0;
    p.xmax = 4.0;
    p.tau = 0.01;
    p.t_max = 10.0;
    p.fisher_mode = FisherMode::dlss;
    p.potential = PotentialKind::quadratic;
    p.initial.kind = InitialData::Kind::gaussians;
    p.initial.bumps.push_back(normal_bump_1d(-1.5, 0.1, 0.5));
    p.initial.bumps.push_back(normal_bump_1d(1.5, 0.1, 0.5));
    p.initial.floor = 1e-8 / (2.0 * std::sqrt(2.0 * M_PI) * 0.1);
    p.snapshot_stride = 100;
    lib.push_back(p);
  }
  {
    Preset p;
    p.name = "dlss1d_dw";
    p.description = "1D DLSS flow with the double-well V = 10 (1-x^2)^2";
    p.dim = 1;
    p.nx = 50;  // dx = 0.08
    p.xmin = -2.0;
    p.xmax = 2.0;
    p.tau = 0.05;
    p.t_max = 10.0;
    p.fisher_mode = FisherMode::dlss;
    p.potential = PotentialKind::double_well;
    p.initial.kind = InitialData::Kind::gaussians;
    p.initial.bumps.push_back(normal_bump_1d(-1.5, 0.1, 0.5));
    p.initial.bumps.push_back(normal_bump_1d(1.5, 0.1, 0.5));
    p.initial.floor = 1e-8 / (2.0 * std::sqrt(2.0 * M_PI) * 0.1);
    p.snapshot_stride = 20;
    lib.push_back(p);
  }
  {
    Preset p;
    p.name = "aggring2d";
    p.description =
        "2D aggregation, W = |x|^4/4 - |x|^2/2; mass collapses to a ring";
    p.dim = 2;
    p.nx = p.ny = 50;  // dx = dy = 0.05
    p.xmin = p.ymin = 0.0;
    p.xmax = p.ymax = 2.5;
    p.tau = 0.04;
    p.t_max = 10.0;
    p.beta_inv_sq = 2e-3;  // beta^-2 tau^2 = 3.2e-6
    Kernel k;
    k.powers.push_back({4.0, 1.0});
    k.powers.push_back({2.0, -1.0});
    p.kernel = k;
    p.hessian_mode = HessianMode::surrogate;
    p.beta_tilde_multiplier = 80;
    p.max_inner = 500;
    p.initial.kind = InitialData::Kind::gaussians;
    // exp(-|x-x0|^2/theta^2) bump with theta = 0.2, scaled to unit mass.
    p.initial.bumps.push_back(
        {1.25, 1.25, 1.0 / (0.2 * 0.2), 1.0 / (std::sqrt(2.0 * M_PI) * 0.2)});
    p.initial.floor = 1e-5;
    p.initial.mass_target = 1.0;
    p.snapshot_stride = 50;
    lib.push_back(p);
  }
  {
    Preset p;
    p.name = "aggdisk2d";
    p.description =
        "2D aggregation, W = |x|^2/2 - ln|x|; mass spreads over a unit disk";
    p.dim = 2;
    p.nx = p.ny = 50;
    p.xmin = p.ymin = 0.0;
    p.xmax = p.ymax = 2.5;
    p.tau = 0.04;
    p.t_max = 6.0;
    p.beta_inv_sq = 2e-3;
    p.kernel = quad_log_kernel();
    p.hessian_mode = HessianMode::surrogate;
    p.beta_tilde_multiplier = 40;
    p.max_inner = 500;
    p.initial.kind = InitialData::Kind::gaussians;
    p.initial.bumps.push_back(
        {1.25, 1.25, 1.0 / (0.2 * 0.2), 1.0 / (std::sqrt(2.0 * M_PI) * 0.2)});
    p.initial.floor = 1e-5;
    p.initial.mass_target = 1.0;
    p.snapshot_stride = 50;
    lib.push_back(p);
  }
  {
    Preset p;
    p.name = "aggdrift2d";
    p.description =
        "2D aggregation-drift, W = |x|^2/2 - ln|x|, V = -ln(|x|)/4; the "
        "steady state is an annulus";
    p.dim = 2;
    p.nx = p.ny = 36;  // dx = dy = 0.1
    p.xmin = p.ymin = -1.8;
    p.xmax = p.ymax = 1.8;
    p.tau = 0.1;
    p.t_max = 10.0;
    p.beta_inv_sq = 1.25e-3;  // beta^-2 tau^2 = 1.25e-5
    p.kernel = quad_log_kernel();
    p.potential = PotentialKind::log_drift;
    p.hessian_mode = HessianMode::surrogate;
    p.beta_tilde_multiplier = 80;
    p.max_inner = 500;
    p.initial.kind = InitialData::Kind::gaussians;
    // Five unit-mass-total Gaussians placed without radial symmetry.
    p.initial.bumps.push_back(normal_bump_2d(0.6, 0.1, 0.25, 0.2));
    p.initial.bumps.push_back(normal_bump_2d(-0.5, 0.45, 0.25, 0.2));
    p.initial.bumps.push_back(normal_bump_2d(0.1, -0.7, 0.25, 0.2));
    p.initial.bumps.push_back(normal_bump_2d(-0.35, -0.3, 0.25, 0.2));
    p.initial.bumps.push_back(normal_bump_2d(0.45, 0.65, 0.25, 0.2));
    p.initial.floor = 1e-5;
    p.snapshot_stride = 20;
    lib.push_back(p);
  }
  {
    Preset p;
    p.name = "aggdiff2d";
    p.description =
        "2D aggregation-diffusion, W = -exp(-|x|^2)/pi with U = 0.05 rho^3";
    p.dim = 2;
    p.nx = p.ny = 60;  // dx = dy = 0.1
    p.xmin = p.ymin = -3.0;
    p.xmax = p.ymax = 3.0;
    p.tau = 0.5;
    p.t_max = 15.0;
    p.beta_inv_sq = 1.25e-3;  // beta^-2 tau^2 = 3.125e-4
    Kernel k;
    k.gauss_coeff = -1.0 / M_PI;
    k.gauss_alpha = 1.0;
    p.kernel = k;
    p.internal = InternalEnergy::power;
    p.power_m = 3.0;
    p.power_coeff = 0.05;  // nu/(m-1) with nu = 0.1
    p.hessian_mode = HessianMode::surrogate;
    p.beta_tilde_multiplier = 40;
    p.max_inner = 500;
    p.initial.kind = InitialData::Kind::box;
    p.initial.box_half = 2.5;
    p.initial.floor = 1e-5;
    p.initial.normalize = false;
    p.snapshot_stride = 5;
    lib.push_back(p);
  }
  {
    Preset p;
    p.name = "dlss2d";
    p.description = "2D DLSS flow with V = |x|^2/2";
    p.dim = 2;
    p.nx = p.ny = 112;  // dx = dy = 0.0643
    p.xmin = p.ymin = -3.6;
    p.xmax = p.ymax = 3.6;
    p.tau = 0.04;
    p.t_max = 2.0;
    p.fisher_mode = FisherMode::dlss;
    p.potential = PotentialKind::quadratic;
    p.initial.kind = InitialData::Kind::gaussians;
    p.initial.bumps.push_back(normal_bump_2d(-1.5, -1.5, 0.4, 0.25));
    p.initial.bumps.push_back(normal_bump_2d(-1.5, 1.5, 0.4, 0.25));
    p.initial.bumps.push_back(normal_bump_2d(1.5, -1.5, 0.4, 0.25));
    p.initial.bumps.push_back(normal_bump_2d(1.5, 1.5, 0.4, 0.25));
    p.initial.floor = 1e-8;
    p.snapshot_stride = 10;
    lib.push_back(p);
  }
  return lib;
}

}  // namespace

const std::vector<Preset>& preset_library() {
  static const std::vector<Preset> lib = build_library();
  return lib;
}

const Preset& find_preset(const std::string& name) {
  for (const Preset& p : preset_library())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace wgf
