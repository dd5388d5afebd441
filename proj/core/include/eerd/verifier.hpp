#ifndef EERD_VERIFIER_HPP
#define EERD_VERIFIER_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eerd/constants.hpp"
#include "eerd/equilibrium.hpp"
#include "eerd/functionals.hpp"
#include "eerd/grid.hpp"
#include "eerd/model.hpp"
#include "eerd/simulator.hpp"
#include "eerd/state.hpp"

namespace eerd {

struct CheckRecord {
  std::string name;
  std::string digest;  // hash of the inputs, for reproducibility
  double lhs;
  double rhs;
  double margin;
  bool pass;  // lhs <= rhs * margin
};

struct VerificationReport {
  std::vector<CheckRecord> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

/// Smooth random member of the admissible class: equilibrium values
/// modulated by zero-mean fields built from the first five cosine modes
/// (seeded coefficients, unit sup norm), relative amplitudes at most
/// `amplitude`, with the holes shifted by a constant so the total charge
/// vanishes and the energy shifted by a constant so the total energy
/// equals |Omega| u_inf. Regenerated with halved amplitude when the
/// admissibility check fails, at most 20 times.
State random_admissible_state(std::uint64_t seed, const Grid& g,
                              const ModelFunctions& m, const Bounds& b,
                              const Equilibrium& eq, double amplitude);

/// H <= C1 C2 P within the discrete-operator margin.
CheckRecord check_eep(const State& s, const EEPConstants& consts,
                      const ModelFunctions& m, const Grid& g, const Equilibrium& eq,
                      double margin = 1.1);

/// The two quadratic halves H <= C1 Q and Q <= C2 P with
/// Q = int((n-n_inf)^2 + (p-p_inf)^2 + (u-u_inf)^2).
std::pair<CheckRecord, CheckRecord> check_quadratic_sandwich(
    const State& s, const EEPConstants& consts, const ModelFunctions& m, const Grid& g,
    const Equilibrium& eq, double margin = 1.1);

/// int gamma^{-1} |grad(1/theta)|^2 <= 2 P within margin.
CheckRecord check_inv_temp_bound(const State& s, const ModelFunctions& m, const Grid& g,
                                 double margin = 1.1);

/// Dissipative lower bound: rhs <= (1 + 2 max(G_sigma,G_w)^2 (g_w + 1/2)) P
/// within margin.
CheckRecord check_dissipative_bound(const State& s, const ModelFunctions& m,
                                    const Grid& g, const WeightGrowthConstants& wc,
                                    double margin = 1.1);

/// Csiszar-Kullback-Pinsker:
/// int(f log(f/g) - f + g) >= 3/(2|f|_1 + 4|g|_1) |f - g|_1^2.
CheckRecord ckp_lower_bound(const CellField& f, const CellField& g_field,
                            const Grid& grid);

/// Seeded sweeps of the scalar inequalities:
///   (x-y) log(x/y) >= 4 (sqrt x - sqrt y)^2,
///   lambda(z) <= (z-1)^2,
/// and the two weight-family bounds tying (w'/w)^2, w''/w, and g_w.
std::vector<CheckRecord> scalar_inequality_suite(int sample_count, std::uint64_t seed,
                                                 const ModelFunctions& m);

/// Median relative error of the centered difference dS/dt against the
/// recorded P over the interior samples; passes at 5%. Throws on fewer
/// than three samples.
CheckRecord check_entropy_production_law(const Trajectory& traj);

struct BatteryConfig {
  int states = 1000;
  std::uint64_t seed = 1;
  double margin = 1.1;
  double amplitude = 0.2;
};

struct ScenarioContext {
  std::string label;
  ModelFunctions model;
  Grid grid;
  Bounds bounds;
  Equilibrium eq;
  HypothesisConstants hypothesis;
  EEPConstants eep;
};

struct BatteryResult {
  VerificationReport report;
  int states_checked = 0;
  int violations = 0;
  std::vector<std::string> violating_states;  // JSON dumps for post-mortem
};

/// Randomized battery over one or more scenarios: EEP, both sandwich
/// halves, the inverse-temperature bound, and the dissipative bound on
/// every generated state.
BatteryResult run_battery(const std::vector<ScenarioContext>& scenarios,
                          const BatteryConfig& cfg);

std::string state_digest(const State& s);

}  // namespace eerd

#endif
