#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "eerd/cli.hpp"
#include "eerd/config.hpp"
#include "eerd/serialize.hpp"

int main(int argc, char** argv) {
  CLI::App app{"1D two-species electro-energy-reaction-diffusion simulator "
               "and inequality certification harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int states = 0;
  double margin = 0.0;
  std::vector<std::string> extra_scenarios;

  app.add_option("--config", config_path, "TOML configuration file")->required();
  app.add_option("--out", out_dir, "output directory (overrides [output] out_dir)");
  app.add_option("--seed", seed, "seed override for random states");
  app.add_option("--states", states, "state count override for verify-eep");
  app.add_option("--margin", margin, "margin override for verify-eep");

  const char* names[] = {"check-model", "equilibrium", "constants", "simulate",
                         "verify-eep",  "plot",        "report"};
  const char* descs[] = {
      "check the structural hypotheses of the configured model",
      "print the equilibrium determined by E0 and verify its structure",
      "emit every certified constant with its defining formula",
      "integrate the system and write trajectory diagnostics",
      "run the randomized inequality battery",
      "render SVG plots from a previously written trajectory",
      "aggregate all JSON artifacts into one report"};
  for (int i = 0; i < 7; ++i) app.add_subcommand(names[i], descs[i])->fallthrough();
  app.get_subcommand("verify-eep")
      ->add_option("--scenario", extra_scenarios,
                   "additional scenario config(s) for the battery");

  CLI11_PARSE(app, argc, argv);

  eerd::RunConfig cfg;
  try {
    cfg = eerd::parse_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  eerd::CliOverrides overrides;
  if (!out_dir.empty()) overrides.out_dir = out_dir;
  if (app.count("--seed")) overrides.seed = seed;
  if (app.count("--states")) overrides.states = states;
  if (app.count("--margin")) overrides.margin = margin;
  overrides.extra_scenarios = extra_scenarios;

  for (const auto* sub : app.get_subcommands())
    return eerd::run_subcommand(sub->get_name(), cfg, overrides);
  return 2;
}
