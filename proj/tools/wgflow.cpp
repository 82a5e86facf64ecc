#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "wgf/audit.hpp"
#include "wgf/config.hpp"
#include "wgf/io.hpp"
#include "wgf/oracles.hpp"

namespace {

void print_usage() {
  std::cout <<
      "usage: wgflow <command> [flags]\n"
      "\n"
      "commands:\n"
      "  run           time-step a preset and write CSV/JSONL outputs\n"
      "  convergence   temporal self-convergence table over --tau-list\n"
      "  steady        run a preset and report the distance to its closed-form\n"
      "                steady state\n"
      "  derivcheck    finite-difference audit of the analytic derivatives\n"
      "  list-presets  show the preset catalog\n"
      "\n"
      "flags:\n"
      "  --preset NAME          required for every command but list-presets\n"
      "  --config FILE          key=value file; flags take precedence\n"
      "  --nx N --ny N          grid override\n"
      "  --tau X --t-max X      time step / final time override\n"
      "  --beta X               regularization strength (standard mode only)\n"
      "  --beta-tilde-mult N    surrogate Hessian Fisher multiplier\n"
      "  --tol X --qp-tol X     stopping tolerances\n"
      "  --max-inner N          inner iteration cap\n"
      "  --snapshot-stride N    steps between snapshots\n"
      "  --seed N               recorded in the manifest\n"
      "  --out DIR              output directory (default ./out)\n"
      "  --tau-list a,b,c       convergence command\n"
      "  --derivcheck-nx N      audit grid size (default 20)\n";
}

int run_command(const wgf::RunConfig& cfg) {
  wgf::RunResult res = wgf::run(wgf::find_preset(cfg.preset), cfg.overrides);
  wgf::write_outputs(res, cfg, cfg.out_dir);
  const wgf::StepDiagnostics& last = res.diagnostics.back();
  std::printf("%s: %zu steps to t=%g, mass %.12g, min rho %.3e, energy %.9g\n",
              cfg.preset.c_str(), res.diagnostics.size(), last.t, last.mass,
              last.min_rho, last.energy);
  std::printf("outputs in %s (%zu snapshots)\n", cfg.out_dir.c_str(),
              res.snapshots.size());
  return 0;
}

int convergence_command(const wgf::RunConfig& cfg) {
  if (cfg.tau_list.empty())
    throw wgf::ConfigError("convergence requires '--tau-list'");
  wgf::ConvergenceTable table = wgf::convergence_study(
      wgf::find_preset(cfg.preset), cfg.tau_list, cfg.overrides);
  std::printf("%-12s %-14s %-14s\n", "tau", "e_richardson",
              table.has_reference ? "e_reference" : "-");
  for (const wgf::ConvergenceRow& r : table.rows) {
    if (table.has_reference)
      std::printf("%-12g %-14.6e %-14.6e\n", r.tau, r.err_richardson,
                  r.err_reference);
    else
      std::printf("%-12g %-14.6e\n", r.tau, r.err_richardson);
  }
  std::printf("fitted slope (richardson): %.4f\n", table.slope_richardson);
  if (table.has_reference)
    std::printf("fitted slope (reference):  %.4f\n", table.slope_reference);
  return 0;
}

int steady_command(const wgf::RunConfig& cfg) {
  const wgf::Preset& preset = wgf::find_preset(cfg.preset);
  wgf::RunResult res = wgf::run(preset, cfg.overrides);
  const wgf::DensityField& rho = res.final_rho;
  const wgf::Grid& g = rho.grid;
  double mass = rho.mass();

  wgf::DensityField target(g);
  std::vector<wgf::Point> pts = wgf::cell_centers(g);
  if (cfg.preset == "nfp1d") {
    for (int i = 0; i < g.n_cells(); ++i)
      target.values[i] = wgf::nfp_steady(pts[i].x, 2.0, mass);
  } else if (cfg.preset == "agg1d") {
    for (int i = 0; i < g.n_cells(); ++i)
      target.values[i] = wgf::agg1d_steady(pts[i].x);
  } else if (cfg.preset == "dlss1d") {
    for (int i = 0; i < g.n_cells(); ++i)
      target.values[i] = wgf::dlss_steady(pts[i].x);
  } else if (cfg.preset == "dlss2d") {
    for (int i = 0; i < g.n_cells(); ++i)
      target.values[i] = std::exp(
          -0.5 * (pts[i].x * pts[i].x + pts[i].y * pts[i].y));
    double scale = mass / target.mass();
    for (double& v : target.values) v *= scale;
  } else {
    throw wgf::ConfigError("preset '" + cfg.preset +
                           "' has no closed-form steady state");
  }
  wgf::write_outputs(res, cfg, cfg.out_dir);
  std::printf("%s at t=%g: l1 distance %.6e, linf distance %.6e\n",
              cfg.preset.c_str(), res.diagnostics.back().t,
              wgf::l1_err(rho, target), wgf::linf_err(rho, target));
  return 0;
}

int derivcheck_command(const wgf::RunConfig& cfg) {
  wgf::AuditReport rep = wgf::derivative_audit(
      wgf::find_preset(cfg.preset), cfg.derivcheck_nx,
      static_cast<unsigned>(cfg.seed == 0 ? 7 : cfg.seed),
      cfg.corrupt_gradient);
  std::printf("gradient  max rel err: %.3e\n", rep.gradient_rel_err);
  std::printf("hessian   max rel err: %.3e (exact mode)\n",
              rep.hessian_rel_err);
  std::printf("hessian   max rel err: %.3e (surrogate mode)\n",
              rep.surrogate_hessian_rel_err);
  std::printf("threshold %.1e: %s\n", rep.threshold,
              rep.pass ? "pass" : "FAIL");
  return rep.pass ? 0 : 2;
}

int list_presets_command() {
  for (const wgf::Preset& p : wgf::preset_library()) {
    std::printf("%-12s %dD nx=%d", p.name.c_str(), p.dim, p.nx);
    if (p.dim == 2) std::printf("x%d", p.ny);
    std::printf(" tau=%g t_max=%g ", p.tau, p.t_max);
    if (p.fisher_mode == wgf::FisherMode::dlss)
      std::printf("fisher=tau ");
    else
      std::printf("beta_inv_sq=%g ", p.beta_inv_sq);
    std::printf("%s", p.hessian_mode == wgf::HessianMode::exact
                          ? "H=exact"
                          : "H=surrogate");
    if (p.hessian_mode == wgf::HessianMode::surrogate)
      std::printf("(x%d)", p.beta_tilde_multiplier);
    std::printf("  %s\n", p.description.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && (args[0] == "--help" || args[0] == "-h")) {
    print_usage();
    return 0;
  }
  wgf::RunConfig cfg;
  try {
    cfg = wgf::parse_config(args);
  } catch (const wgf::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    print_usage();
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    switch (cfg.command) {
      case wgf::RunConfig::Command::run:
        return run_command(cfg);
      case wgf::RunConfig::Command::convergence:
        return convergence_command(cfg);
      case wgf::RunConfig::Command::steady:
        return steady_command(cfg);
      case wgf::RunConfig::Command::derivcheck:
        return derivcheck_command(cfg);
      case wgf::RunConfig::Command::list_presets:
        return list_presets_command();
    }
  } catch (const wgf::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
