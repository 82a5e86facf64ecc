#include "wgf/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

namespace wgf {

namespace {

std::string full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_snapshot_csv(const Snapshot& snap, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  const Grid& g = snap.rho.grid;
  if (g.dim == 1) {
    out << "x,rho\n";
    for (int j = 0; j < g.nx; ++j)
      out << full_precision(g.x_center(j)) << ','
          << full_precision(snap.rho.values[j]) << '\n';
  } else {
    out << "x,y,rho\n";
    for (int l = 0; l < g.ny; ++l)
      for (int j = 0; j < g.nx; ++j)
        out << full_precision(g.x_center(j)) << ','
            << full_precision(g.y_center(l)) << ','
            << full_precision(snap.rho.values[g.cell_index(j, l)]) << '\n';
  }
}

nlohmann::json resolved_manifest(const RunResult& result,
                                 const RunConfig& config) {
  const Preset& p = result.resolved;
  nlohmann::json j;
  j["command"] = command_name(config.command);
  j["preset"] = p.name;
  j["dim"] = p.dim;
  j["nx"] = p.nx;
  if (p.dim == 2) j["ny"] = p.ny;
  j["domain"] = p.dim == 2
                    ? nlohmann::json::array({p.xmin, p.xmax, p.ymin, p.ymax})
                    : nlohmann::json::array({p.xmin, p.xmax});
  j["tau"] = p.tau;
  j["t_max"] = p.t_max;
  j["tol"] = p.tol;
  j["qp_tol"] = p.qp_tol;
  j["max_inner"] = p.max_inner;
  j["snapshot_stride"] = p.snapshot_stride;
  j["fisher_mode"] =
      p.fisher_mode == FisherMode::dlss ? "dlss" : "standard";
  if (p.fisher_mode == FisherMode::standard) j["beta_inv_sq"] = p.beta_inv_sq;
  j["fisher_coeff"] = p.fisher_coeff(p.tau);
  j["hessian_mode"] =
      p.hessian_mode == HessianMode::exact ? "exact" : "surrogate";
  if (p.hessian_mode == HessianMode::surrogate)
    j["beta_tilde_multiplier"] = p.beta_tilde_multiplier;
  j["seed"] = config.seed;
  j["out"] = config.out_dir;
  return j;
}

}  // namespace

std::string snapshot_filename(double t) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "rho_t%.6f.csv", t);
  return buf;
}

void write_outputs(const RunResult& result, const RunConfig& config,
                   const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec && !std::filesystem::is_directory(dir))
    throw std::runtime_error("cannot create output directory '" + dir + "'");

  for (const Snapshot& snap : result.snapshots)
    write_snapshot_csv(snap, dir + "/" + snapshot_filename(snap.t));

  {
    std::ofstream out(dir + "/diagnostics.jsonl", std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot write '" + dir + "/diagnostics.jsonl'");
    for (const StepDiagnostics& d : result.diagnostics) {
      nlohmann::json j;
      j["t"] = d.t;
      j["mass"] = d.mass;
      j["min_rho"] = d.min_rho;
      j["energy"] = d.energy;
      j["fisher"] = d.fisher;
      j["modified_energy"] = d.modified_energy;
      j["inner_iterations"] = d.inner_iterations;
      j["qp_iterations"] = d.qp_iterations;
      j["wall_time"] = d.wall_time;
      out << j.dump() << '\n';
    }
  }
  {
    std::ofstream out(dir + "/manifest.json", std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot write '" + dir + "/manifest.json'");
    out << resolved_manifest(result, config).dump(2) << '\n';
  }
}

}  // namespace wgf
