#ifndef EERD_SERIALIZE_HPP
#define EERD_SERIALIZE_HPP

#include <string>

#include "eerd/config.hpp"
#include "eerd/constants.hpp"
#include "eerd/equilibrium.hpp"
#include "eerd/model.hpp"
#include "eerd/simulator.hpp"
#include "eerd/verifier.hpp"

namespace eerd {

// JSON emitters with stable key order; doubles are printed round-trip
// exact so identical inputs give byte-identical artifacts.

std::string to_json(const ModelHypothesisReport& report);
std::string to_json(const Equilibrium& eq, const EquilibriumReport& report);
std::string constants_json(const HypothesisConstants& hc, const EEPConstants& eep);
std::string battery_json(const BatteryResult& battery, const BatteryConfig& cfg);
std::string config_json(const RunConfig& cfg);

struct SimulationSummary {
  double t_end;
  double H0;
  double fitted_rate;     // NaN when H vanishes identically
  double predicted_rate;  // 1/(C1 C2)
  bool envelope_satisfied;
  bool entropy_monotone;
  double max_charge_drift;
  double max_energy_drift_rel;
  long long steps;
  long long rejections;
};

SimulationSummary summarize(const Trajectory& traj);
std::string to_json(const SimulationSummary& summary);

/// CSV with header t,S,E,Q,H,P,l1_n,l1_p,l1_u,h1_psi,dt.
std::string trajectory_csv(const Trajectory& traj);

Trajectory trajectory_from_csv(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Merges every .json artifact in a directory into one document and
/// reports whether any embedded pass flag is false.
std::string aggregate_report(const std::string& dir);

}  // namespace eerd

#endif
