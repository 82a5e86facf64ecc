#pragma once

#include <string>

#include "wgf/config.hpp"
#include "wgf/driver.hpp"

namespace wgf {

/// Writes one CSV per snapshot (`rho_t<time>.csv`, header `x,rho` or
/// `x,y,rho`, full round-trip precision), `diagnostics.jsonl` with one
/// record per step, and `manifest.json` with the resolved configuration.
/// Reruns with identical inputs produce byte-identical files.
void write_outputs(const RunResult& result, const RunConfig& config,
                   const std::string& dir);

std::string snapshot_filename(double t);

}  // namespace wgf
