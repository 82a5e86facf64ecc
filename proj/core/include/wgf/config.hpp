#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wgf/driver.hpp"

namespace wgf {

/// Raised on malformed command lines or config files; the message names the
/// offending flag, key or value. CLI exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  enum class Command { run, convergence, steady, derivcheck, list_presets };
  Command command = Command::run;
  std::string preset;
  RunOverrides overrides;
  std::string out_dir = "out";
  std::vector<double> tau_list;  // convergence command
  int derivcheck_nx = 20;
  bool corrupt_gradient = false;  // derivcheck negative control
  long seed = 0;
};

/// Parses `<command> [--flag value ...]` with an optional `--config FILE` of
/// flat key=value lines ('#' comments). Flags override file values, file
/// values override preset defaults. Unknown flags or keys and unparsable
/// numbers raise ConfigError naming the token.
RunConfig parse_config(const std::vector<std::string>& args);

std::string command_name(RunConfig::Command c);

}  // namespace wgf
