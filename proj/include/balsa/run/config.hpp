//! \file config.hpp
//  \brief Run configuration and the flat key = value config-file parser.

#pragma once

#include <fstream>
#include <set>
#include <string>

#include "balsa/core.hpp"

namespace balsa {

struct RunConfig {
  int example = 0;             // 1..8; 0 means a named preset model
  std::string model;           // "advection" or "sw_smooth" (convergence presets)
  std::string scheme = "1";    // 1 | 2 | 3 | A
  int nx = 0;                  // 0: example default
  int ny = 0;
  double t_final = -1.0;       // <0: example default
  double cfl = 0.5;
  long max_steps = 50'000'000;
  std::string out_dir = ".";
  std::string ic_file;         // optional tabulated initial data (1-D)
  // Physical constants; negative manning means "example default".
  double gravity = 9.812;
  double gravity_two_layer = 10.0;
  double gamma = 1.4;
  double kappa = 1.0;
  double density_ratio = 0.98;
  double manning = -1.0;
  std::string nozzle_branch = "super";  // reference Mach regime of Examples 1-2
  // Scheme options.
  bool corrections = true;
  bool first_order = false;
  double diffusion_factor = 1.0;
  bool write_solution = true;

  void validate() const {
    if (example < 0 || example > 8) throw config_error("example must be 1..8");
    if (example == 0 && model.empty()) throw config_error("need an example id or a model preset");
    if (scheme != "1" && scheme != "2" && scheme != "3" && scheme != "A")
      throw config_error("scheme must be one of 1, 2, 3, A");
    if (!(cfl > 0.0) || cfl > 1.0) throw config_error("cfl must lie in (0, 1]");
    if (nx < 0 || ny < 0) throw config_error("grid sizes must be nonnegative");
    if (nozzle_branch != "super" && nozzle_branch != "sub")
      throw config_error("nozzle_branch must be super or sub");
  }
};

namespace config_detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw config_error("expected boolean for " + key + ", got '" + v + "'");
}

}  // namespace config_detail

// One `key = value` per line; optional [section] headers qualify the keys
// that follow. Unknown keys are rejected.
inline RunConfig parse_config_text(std::istream& in) {
  using config_detail::parse_bool;
  using config_detail::trim;
  RunConfig cfg;
  std::string line, section;
  int lineno = 0;
  auto strip_section = [](std::string key) {
    const auto dot = key.find('.');
    return dot == std::string::npos ? key : key.substr(dot + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!section.empty()) key = section + "." + key;
    const std::string bare = strip_section(key);

    if (bare == "example") cfg.example = std::stoi(val);
    else if (bare == "model") cfg.model = val;
    else if (bare == "scheme") cfg.scheme = val;
    else if (bare == "nx") cfg.nx = std::stoi(val);
    else if (bare == "ny") cfg.ny = std::stoi(val);
    else if (bare == "t_final") cfg.t_final = std::stod(val);
    else if (bare == "cfl") cfg.cfl = std::stod(val);
    else if (bare == "max_steps") cfg.max_steps = std::stol(val);
    else if (bare == "out_dir") cfg.out_dir = val;
    else if (bare == "ic_file") cfg.ic_file = val;
    else if (bare == "gravity") cfg.gravity = std::stod(val);
    else if (bare == "gravity_two_layer") cfg.gravity_two_layer = std::stod(val);
    else if (bare == "gamma") cfg.gamma = std::stod(val);
    else if (bare == "kappa") cfg.kappa = std::stod(val);
    else if (bare == "density_ratio") cfg.density_ratio = std::stod(val);
    else if (bare == "manning") cfg.manning = std::stod(val);
    else if (bare == "nozzle_branch") cfg.nozzle_branch = val;
    else if (bare == "corrections") cfg.corrections = parse_bool(val, key);
    else if (bare == "first_order") cfg.first_order = parse_bool(val, key);
    else if (bare == "diffusion_factor") cfg.diffusion_factor = std::stod(val);
    else if (bare == "write_solution") cfg.write_solution = parse_bool(val, key);
    else throw config_error("unknown config key: " + key);
  }
  cfg.validate();
  return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config: " + path);
  return parse_config_text(in);
}

}  // namespace balsa
