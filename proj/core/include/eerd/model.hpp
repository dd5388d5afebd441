#ifndef EERD_MODEL_HPP
#define EERD_MODEL_HPP

#include <string>
#include <variant>
#include <vector>

namespace eerd {

// Thermal entropy families. Both are strictly increasing and strictly
// concave on (0, inf) with sigma'(0+) = inf and sigma'(inf) = 0.
struct LogEntropy {
  double a = 1.0;  // sigma(u) = a log u
};
struct PowerEntropy {
  double a = 1.0;      // sigma(u) = a u^alpha
  double alpha = 0.5;  // alpha in (0, 1)
};
using ThermalEntropy = std::variant<LogEntropy, PowerEntropy>;

// Energetic equilibrium density w(u) = b (1+u)^beta, beta in (0, 1/3).
// The beta range keeps g_w = beta/(1-beta) below 1/2.
struct PowerWeight {
  double b = 1.0;
  double beta = 0.25;
};

struct ConstantRate {
  double F0 = 1.0;
};
struct SrhRate {
  double k1 = 1.0;  // F(n,p,u) = 1/(k1 + k2 n + k3 p)
  double k2 = 0.0;
  double k3 = 0.0;
};
using ReactionRate = std::variant<ConstantRate, SrhRate>;

struct ModelFunctions {
  ThermalEntropy sigma;
  PowerWeight weight;
  ReactionRate rate;
};

/// Value plus first and second derivative at a point.
struct Deriv2 {
  double value;
  double d1;
  double d2;
};

/// Throws std::invalid_argument when a parameter violates the family
/// invariants (a, b, F0, k1 positive; alpha in (0,1); beta in (0,1/3);
/// k2, k3 nonnegative).
void validate_model(const ModelFunctions& m);

/// sigma(u), sigma'(u), sigma''(u). Requires u > 0.
Deriv2 eval_sigma(const ModelFunctions& m, double u);

/// w(u), w'(u), w''(u). Requires u >= 0.
Deriv2 eval_w(const ModelFunctions& m, double u);

/// Boltzmann function s log s - s + 1, continuously extended to s = 0
/// by 1. Nonnegative, convex, vanishing exactly at s = 1. Requires s >= 0.
double boltzmann(double s);

/// The unique u > 0 with sigma'(u) = y. Requires y > 0.
double inverse_sigma_prime(const ModelFunctions& m, double y);

/// F(n, p, u) of the selected rate family.
double reaction_rate_factor(const ModelFunctions& m, double n, double p, double u);

/// Uniform lower bound c_F for F(n,p,u) over 0 <= n, p <= n_max.
double rate_floor(const ModelFunctions& m, double n_max);

// Growth constants tying w and sigma together:
//   (w')^2        <= -g_w w'' w       on (0, inf), g_w < 1/2
//   -w'' w        <= G_w (w')^2       on (0, inf)
//   -sigma'' w    <= G_sigma sigma' w'  on [c_u, inf)
struct WeightGrowthConstants {
  double g_w;
  double G_w;
  double G_sigma;
};

/// Closed-form growth constants for the built-in families; G_sigma is
/// evaluated at the energy floor c_u. Throws std::domain_error when
/// beta >= 1/3 (no admissible g_w < 1/2 exists).
WeightGrowthConstants hypothesis_constants(const ModelFunctions& m, double c_u);

struct HypothesisCheck {
  std::string name;
  bool pass;
  double constant;     // certifying constant, 0 when not applicable
  double worst_ratio;  // worst sampled lhs/rhs, 0 when not applicable
  std::string detail;
};

struct ModelHypothesisReport {
  std::vector<HypothesisCheck> checks;
  bool all_pass = true;
};

/// Checks every structural hypothesis of the model on a fixed sampling
/// grid (1e4 log-spaced points in [1e-6, 1e6]); closed-form constants
/// certify, sampling confirms. Failures are reported, never thrown.
ModelHypothesisReport check_hypotheses(const ModelFunctions& m, double c_u = 1.0);

}  // namespace eerd

#endif
