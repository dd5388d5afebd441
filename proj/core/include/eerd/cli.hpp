#ifndef EERD_CLI_HPP
#define EERD_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eerd/config.hpp"

namespace eerd {

struct CliOverrides {
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> states;
  std::optional<double> margin;
  std::vector<std::string> extra_scenarios;  // verify-eep only
};

/// Dispatches one of: check-model, equilibrium, constants, simulate,
/// verify-eep, report, plot. Writes artifacts under the output
/// directory and returns 0 exactly when every executed check passed.
int run_subcommand(const std::string& name, const RunConfig& cfg,
                   const CliOverrides& overrides = {});

}  // namespace eerd

#endif
