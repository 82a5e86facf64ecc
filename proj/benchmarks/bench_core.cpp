#include <benchmark/benchmark.h>

#include "wgf/driver.hpp"
#include "wgf/kkt.hpp"
#include "wgf/objective.hpp"
#include "wgf/sqp.hpp"

namespace {

wgf::JKOStepProblem heat_problem(int nx) {
  const wgf::Preset& preset = wgf::find_preset("heat1d");
  wgf::Preset p = preset;
  p.nx = nx;
  wgf::Grid grid = p.make_grid();
  wgf::JKOStepProblem prob;
  prob.grid = grid;
  prob.spec = wgf::build_energy_spec(p, grid);
  prob.tau = p.tau;
  prob.fisher = wgf::FisherCoeff{p.fisher_coeff(p.tau)};
  prob.rho_prev = wgf::initial_density(p, grid);
  return prob;
}

void BM_kkt_factorize_heat(benchmark::State& state) {
  wgf::JKOStepProblem prob = heat_problem(static_cast<int>(state.range(0)));
  wgf::StateLayout lay = prob.layout();
  std::vector<double> u =
      lay.pack(prob.rho_prev, wgf::FluxField(prob.grid));
  wgf::SparseMatrix H =
      wgf::objective_hessian(u, prob, wgf::HessianMode::exact);
  wgf::ContinuityConstraint c = wgf::build_constraints(prob);
  wgf::KktSolver solver(H, c.A);
  for (auto _ : state) {
    bool ok = solver.factorize({}, 1e-12);
    benchmark::DoNotOptimize(ok);
  }
}
BENCHMARK(BM_kkt_factorize_heat)->Arg(100)->Arg(400);

void BM_sqp_step_heat(benchmark::State& state) {
  wgf::JKOStepProblem prob = heat_problem(static_cast<int>(state.range(0)));
  wgf::SqpParams params;
  wgf::SqpWorkspace ws;
  std::vector<double> warm =
      wgf::warm_start(prob.rho_prev, nullptr, nullptr, 1e-6);
  for (auto _ : state) {
    wgf::StepResult r = wgf::sqp_step(prob, params, warm, &ws);
    benchmark::DoNotOptimize(r.final_objective);
  }
}
BENCHMARK(BM_sqp_step_heat)->Arg(100)->Arg(400);

void BM_objective_gradient_2d(benchmark::State& state) {
  const wgf::Preset& preset = wgf::find_preset("aggring2d");
  wgf::Preset p = preset;
  p.nx = p.ny = static_cast<int>(state.range(0));
  wgf::Grid grid = p.make_grid();
  wgf::JKOStepProblem prob;
  prob.grid = grid;
  prob.spec = wgf::build_energy_spec(p, grid);
  prob.tau = p.tau;
  prob.fisher = wgf::FisherCoeff{p.fisher_coeff(p.tau)};
  prob.hessian_mode = p.hessian_mode;
  prob.beta_tilde_multiplier = p.beta_tilde_multiplier;
  prob.rho_prev = wgf::initial_density(p, grid);
  std::vector<double> u =
      prob.layout().pack(prob.rho_prev, wgf::FluxField(grid));
  for (auto _ : state) {
    std::vector<double> g = wgf::objective_gradient(u, prob);
    benchmark::DoNotOptimize(g.data());
  }
}
BENCHMARK(BM_objective_gradient_2d)->Arg(24)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
