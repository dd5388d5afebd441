#ifndef EERD_CONFIG_HPP
#define EERD_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "eerd/grid.hpp"
#include "eerd/model.hpp"
#include "eerd/simulator.hpp"
#include "eerd/state.hpp"

namespace eerd {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fully resolved configuration; every optional key is filled with its
// default and recorded in defaults_applied.
struct RunConfig {
  ModelFunctions model;

  // [domain]
  double L = 1.0;
  int N = 128;
  std::vector<double> eps;  // size 1 (uniform) or size N
  double E0 = 1.0;

  Bounds bounds{0.5, 2.0};

  // [simulation]
  SimConfig simulation;
  std::string initial = "random";  // random | equilibrium | csv
  double sim_amplitude = 0.2;
  std::uint64_t sim_seed = 1;
  std::string csv_path;

  // [verify]
  int verify_states = 1000;
  std::uint64_t verify_seed = 1;
  double verify_margin = 1.1;
  double verify_amplitude = 0.2;

  // [output]
  std::string out_dir = "out";
  bool write_csv = true;
  bool write_json = true;
  bool write_svg = true;

  std::vector<std::string> defaults_applied;
};

/// Parses and validates a configuration file. Unknown sections or keys,
/// type mismatches, missing required keys, and model-hypothesis
/// violations all raise ConfigError with the offending location.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_string(const std::string& text, const std::string& origin = "<string>");

Grid make_grid(const RunConfig& cfg);

/// Initial state per cfg.initial: a seeded perturbed-equilibrium state,
/// the equilibrium itself, or a CSV file with columns x,n,p,u.
State make_initial_state(const RunConfig& cfg, const Grid& g);

State read_state_csv(const std::string& path, const Grid& g);

}  // namespace eerd

#endif
