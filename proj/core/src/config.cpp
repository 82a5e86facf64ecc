#include "wgf/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace wgf {

namespace {

double parse_double(const std::string& key, const std::string& text) {
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    throw ConfigError("value for '" + key + "' is not a number: '" + text +
                      "'");
  return v;
}

long parse_long(const std::string& key, const std::string& text) {
  char* end = nullptr;
  long v = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0')
    throw ConfigError("value for '" + key + "' is not an integer: '" + text +
                      "'");
  return v;
}

std::vector<double> parse_tau_list(const std::string& key,
                                   const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ConfigError("'" + key + "' is empty");
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// key -> value with flags taking precedence over the config file.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config file line " + std::to_string(lineno) +
                        " is not key=value: '" + s + "'");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config file line " + std::to_string(lineno) +
                        " has an empty key");
    kv[key] = val;
  }
  return kv;
}

}  // namespace

std::string command_name(RunConfig::Command c) {
  switch (c) {
    case RunConfig::Command::run:
      return "run";
    case RunConfig::Command::convergence:
      return "convergence";
    case RunConfig::Command::steady:
      return "steady";
    case RunConfig::Command::derivcheck:
      return "derivcheck";
    case RunConfig::Command::list_presets:
      return "list-presets";
  }
  return "?";
}

RunConfig parse_config(const std::vector<std::string>& args) {
  if (args.empty())
    throw ConfigError(
        "missing command (run | convergence | steady | derivcheck | "
        "list-presets)");

  RunConfig cfg;
  const std::string& cmd = args[0];
  if (cmd == "run")
    cfg.command = RunConfig::Command::run;
  else if (cmd == "convergence")
    cfg.command = RunConfig::Command::convergence;
  else if (cmd == "steady")
    cfg.command = RunConfig::Command::steady;
  else if (cmd == "derivcheck")
    cfg.command = RunConfig::Command::derivcheck;
  else if (cmd == "list-presets")
    cfg.command = RunConfig::Command::list_presets;
  else
    throw ConfigError("unknown command '" + cmd + "'");

  // First pass: flags into a map, remembering the config file path.
  std::map<std::string, std::string> kv;
  std::string config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) throw ConfigError("unexpected token '" + a + "'");
    std::string key = a.substr(2);
    if (key == "corrupt-gradient") {
      cfg.corrupt_gradient = true;
      continue;
    }
    if (i + 1 >= args.size())
      throw ConfigError("flag '--" + key + "' is missing a value");
    const std::string& val = args[++i];
    if (key == "config")
      config_path = val;
    else
      kv[key] = val;
  }
  if (!config_path.empty()) {
    for (auto& [k, v] : read_config_file(config_path))
      kv.emplace(k, v);  // flags win over file entries
  }

  for (auto& [key, val] : kv) {
    if (key == "preset")
      cfg.preset = val;
    else if (key == "out")
      cfg.out_dir = val;
    else if (key == "nx")
      cfg.overrides.nx = static_cast<int>(parse_long(key, val));
    else if (key == "ny")
      cfg.overrides.ny = static_cast<int>(parse_long(key, val));
    else if (key == "tau")
      cfg.overrides.tau = parse_double(key, val);
    else if (key == "beta")
      cfg.overrides.beta = parse_double(key, val);
    else if (key == "beta_tilde_mult" || key == "beta-tilde-mult")
      cfg.overrides.beta_tilde_mult = static_cast<int>(parse_long(key, val));
    else if (key == "t_max" || key == "t-max")
      cfg.overrides.t_max = parse_double(key, val);
    else if (key == "tol")
      cfg.overrides.tol = parse_double(key, val);
    else if (key == "max_inner" || key == "max-inner")
      cfg.overrides.max_inner = static_cast<int>(parse_long(key, val));
    else if (key == "qp_tol" || key == "qp-tol")
      cfg.overrides.qp_tol = parse_double(key, val);
    else if (key == "snapshot_stride" || key == "snapshot-stride")
      cfg.overrides.snapshot_stride = static_cast<int>(parse_long(key, val));
    else if (key == "seed") {
      cfg.seed = parse_long(key, val);
      cfg.overrides.seed = cfg.seed;
    } else if (key == "tau_list" || key == "tau-list")
      cfg.tau_list = parse_tau_list(key, val);
    else if (key == "derivcheck_nx" || key == "derivcheck-nx")
      cfg.derivcheck_nx = static_cast<int>(parse_long(key, val));
    else
      throw ConfigError("unknown key '" + key + "'");
  }

  if (cfg.command != RunConfig::Command::list_presets && cfg.preset.empty())
    throw ConfigError("missing required '--preset'");
  if (!cfg.preset.empty()) find_preset(cfg.preset);  // rejects unknown names
  return cfg;
}

}  // namespace wgf
