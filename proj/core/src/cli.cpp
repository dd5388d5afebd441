#include "eerd/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>

#include "eerd/constants.hpp"
#include "eerd/equilibrium.hpp"
#include "eerd/functionals.hpp"
#include "eerd/serialize.hpp"
#include "eerd/simulator.hpp"
#include "eerd/svg.hpp"
#include "eerd/verifier.hpp"

namespace eerd {

namespace {

struct Resolved {
  RunConfig cfg;
  std::string out_dir;
};

Resolved resolve(const RunConfig& cfg_in, const CliOverrides& ov) {
  Resolved r{cfg_in, cfg_in.out_dir};
  if (ov.out_dir) {
    r.out_dir = *ov.out_dir;
    r.cfg.out_dir = *ov.out_dir;
  }
  if (ov.seed) {
    r.cfg.sim_seed = *ov.seed;
    r.cfg.verify_seed = *ov.seed;
  }
  if (ov.states) r.cfg.verify_states = *ov.states;
  if (ov.margin) r.cfg.verify_margin = *ov.margin;
  return r;
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

ScenarioContext make_context(const RunConfig& cfg, const std::string& label) {
  ScenarioContext ctx{label,
                      cfg.model,
                      make_grid(cfg),
                      cfg.bounds,
                      Equilibrium{},
                      HypothesisConstants{},
                      EEPConstants{}};
  ctx.eq = compute_equilibrium(cfg.E0, 0.0, ctx.grid, cfg.model);
  ctx.hypothesis = compute_hypothesis_constants(cfg.bounds, cfg.model, ctx.grid);
  ctx.eep = compute_eep_constants(ctx.hypothesis, ctx.eq, cfg.model, ctx.grid);
  return ctx;
}

int cmd_check_model(const Resolved& r) {
  const auto hc = compute_hypothesis_constants(r.cfg.bounds, r.cfg.model,
                                               make_grid(r.cfg));
  const auto report = check_hypotheses(r.cfg.model, hc.c_u);
  if (r.cfg.write_json)
    write_text_file(join(r.out_dir, "model_check.json"), to_json(report));
  std::cout << (report.all_pass ? "model hypotheses: pass\n"
                                : "model hypotheses: FAIL\n");
  return report.all_pass ? 0 : 1;
}

int cmd_equilibrium(const Resolved& r) {
  const Grid g = make_grid(r.cfg);
  const Equilibrium eq = compute_equilibrium(r.cfg.E0, 0.0, g, r.cfg.model);
  const auto report = verify_equilibrium(eq, r.cfg.E0, r.cfg.model, g);
  const std::string json = to_json(eq, report);
  if (r.cfg.write_json) write_text_file(join(r.out_dir, "equilibrium.json"), json);
  std::cout << json;
  return report.all_pass ? 0 : 1;
}

int cmd_constants(const Resolved& r) {
  const auto ctx = make_context(r.cfg, "scenario");
  const std::string json = constants_json(ctx.hypothesis, ctx.eep);
  if (r.cfg.write_json) write_text_file(join(r.out_dir, "constants.json"), json);
  std::cout << json;
  return 0;
}

int cmd_simulate(const Resolved& r) {
  const Grid grid = make_grid(r.cfg);
  const State s0 = make_initial_state(r.cfg, grid);
  // The run relaxes toward the equilibrium of its own conserved
  // quantities, not of the nominal E0.
  const Equilibrium eq =
      compute_equilibrium(total_energy(s0, grid), total_charge(s0, grid), grid,
                          r.cfg.model);
  const auto hc = compute_hypothesis_constants(r.cfg.bounds, r.cfg.model, grid);
  const auto eep = compute_eep_constants(hc, eq, r.cfg.model, grid);
  const Trajectory traj =
      run(s0, r.cfg.simulation, r.cfg.model, grid, eq, eep, r.cfg.bounds);
  const SimulationSummary summary = summarize(traj);
  if (r.cfg.write_csv)
    write_text_file(join(r.out_dir, "trajectory.csv"), trajectory_csv(traj));
  if (r.cfg.write_json)
    write_text_file(join(r.out_dir, "summary.json"), to_json(summary));
  std::cout << "simulate: t_end=" << summary.t_end << " steps=" << summary.steps
            << " H0=" << summary.H0 << " fitted_rate=" << summary.fitted_rate
            << " predicted_rate=" << summary.predicted_rate
            << (summary.envelope_satisfied ? " envelope=ok" : " envelope=VIOLATED")
            << "\n";
  return (summary.envelope_satisfied && summary.entropy_monotone) ? 0 : 1;
}

int cmd_verify_eep(const Resolved& r, const CliOverrides& ov) {
  std::vector<ScenarioContext> scenarios;
  scenarios.push_back(make_context(r.cfg, "primary"));
  int index = 1;
  for (const auto& path : ov.extra_scenarios) {
    RunConfig extra = parse_config(path);
    scenarios.push_back(make_context(extra, "scenario" + std::to_string(index++)));
  }
  BatteryConfig bc;
  bc.states = r.cfg.verify_states;
  bc.seed = r.cfg.verify_seed;
  bc.margin = r.cfg.verify_margin;
  bc.amplitude = r.cfg.verify_amplitude;
  const BatteryResult battery = run_battery(scenarios, bc);
  if (r.cfg.write_json)
    write_text_file(join(r.out_dir, "eep_report.json"), battery_json(battery, bc));
  std::cout << "verify-eep: " << battery.states_checked << " states, "
            << battery.violations << " violations\n";
  return battery.violations == 0 ? 0 : 1;
}

int cmd_plot(const Resolved& r) {
  const std::string csv_path = join(r.out_dir, "trajectory.csv");
  if (!std::filesystem::exists(csv_path)) {
    std::cerr << "plot: " << csv_path << " not found; run simulate first\n";
    return 1;
  }
  Trajectory traj = trajectory_from_csv(read_text_file(csv_path));
  const auto ctx = make_context(r.cfg, "scenario");
  traj.predicted_rate = ctx.eep.rate;
  write_text_file(join(r.out_dir, "h_decay.svg"),
                  svg_decay_plot(traj, ctx.eep.rate));
  write_text_file(join(r.out_dir, "conservation.svg"), svg_conservation_plot(traj));
  std::cout << "plot: wrote h_decay.svg and conservation.svg\n";
  return 0;
}

int cmd_report(const Resolved& r) {
  const std::string json = aggregate_report(r.out_dir);
  write_text_file(join(r.out_dir, "report.json"), json);
  const bool ok = json.find("\"all_pass\": true") != std::string::npos;
  std::cout << (ok ? "report: all checks pass\n" : "report: failures present\n");
  return ok ? 0 : 1;
}

}  // namespace

int run_subcommand(const std::string& name, const RunConfig& cfg,
                   const CliOverrides& overrides) {
  const Resolved r = resolve(cfg, overrides);
  try {
    if (name == "check-model") return cmd_check_model(r);
    if (name == "equilibrium") return cmd_equilibrium(r);
    if (name == "constants") return cmd_constants(r);
    if (name == "simulate") return cmd_simulate(r);
    if (name == "verify-eep") return cmd_verify_eep(r, overrides);
    if (name == "plot") return cmd_plot(r);
    if (name == "report") return cmd_report(r);
  } catch (const std::exception& e) {
    std::cerr << name << ": " << e.what() << "\n";
    return 2;
  }
  std::cerr << "unknown subcommand '" << name << "'\n";
  return 2;
}

}  // namespace eerd
