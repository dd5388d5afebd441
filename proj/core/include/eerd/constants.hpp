#ifndef EERD_CONSTANTS_HPP
#define EERD_CONSTANTS_HPP

#include "eerd/equilibrium.hpp"
#include "eerd/grid.hpp"
#include "eerd/model.hpp"
#include "eerd/state.hpp"

namespace eerd {

// Every named constant of the admissibility hypotheses, derived from
// (model, bounds, grid) alone.
struct HypothesisConstants {
  double g_w;      // (w')^2 <= -g_w w'' w, g_w < 1/2
  double G_w;      // -w'' w <= G_w (w')^2
  double G_sigma;  // -sigma'' w <= G_sigma sigma' w' on [c_u, inf)
  double c_theta;  // temperature floor (input bound)
  double C_u;      // energy ceiling (input bound)
  double c_u;      // implied energy floor (sigma')^{-1}(1/c_theta)
  double C_theta;  // implied temperature ceiling 1/sigma'(C_u)
  double N_max;    // implied concentration ceiling w(C_u)/(c_theta w'(C_u))
  double c_F;      // uniform reaction-rate floor
  double C_P;      // interval Poincare constant (L/pi)^2
  double eps_min;
  double eps_max;
};

HypothesisConstants compute_hypothesis_constants(const Bounds& b,
                                                 const ModelFunctions& m,
                                                 const Grid& g);

// Quadratic envelopes of the concave sigma and w around u_inf:
//   -(f(u) - f'(u_inf)(u-u_inf) - f(u_inf))  <=  K_f (u-u_inf)^2  on [c_u, C_u]
//                                            >=  k_f (u-u_inf)^2  on (0, C_u]
// K = sup(-f'')/2 over [c_u, C_u], k = inf(-f'')/2 over (0, C_u];
// -sigma'' and -w'' are decreasing for the built-in families, so the
// closed-form extrema sit at the interval ends. A dense sampling pass
// confirms and the safer value wins.
struct TaylorEnvelopeConstants {
  double K_sigma;
  double K_w;
  double k_sigma;
  double k_w;
};

/// Requires c_u <= u_inf <= C_u; throws std::domain_error otherwise.
TaylorEnvelopeConstants compute_K_constants(const HypothesisConstants& hc,
                                            const Equilibrium& eq,
                                            const ModelFunctions& m);

/// Relative-entropy upper-bound constant:
/// C1 = max(2/w(0) + C_P/(theta_inf eps_min),
///          2 (2 w'(0)^2 / w(0) + K_w) + K_sigma).
double compute_C1(const HypothesisConstants& hc, const TaylorEnvelopeConstants& K,
                  const Equilibrium& eq, const ModelFunctions& m);

struct C2Pair {
  double C2_tilde;
  double C2;
};

/// Entropy-production lower-bound constants:
/// C2_tilde = (max(1, sigma'(C_u)/(4 eps_max c_F)) + 2 max(G_sigma, G_w)^2)
///            * (2 eps_max/(1 - 2 g_w))
///            * max(1/sigma'(C_u),
///                  (C_P/eps_min)(C_P w(C_u)^2/(4 eps_min c_theta w'(C_u)^2)
///                                - 1/sigma''(C_u)));
/// C2 = (2 + max(4 w'(0)^2 - 1, 0)) C2_tilde.
C2Pair compute_C2(const HypothesisConstants& hc, const Equilibrium& eq,
                  const ModelFunctions& m);

/// Convergence constant of the distance bounds:
/// C3 = max(2|Omega| (2 w(C_u)/(3 c_theta w'(C_u)) + 4 w(C_u)/3
///                    + w'(0)^2/(2 k_w)),
///          |Omega|/k_sigma, 2 (1 + C_P) theta_inf / eps_min) * H0.
double compute_C3(const HypothesisConstants& hc, const TaylorEnvelopeConstants& K,
                  const Equilibrium& eq, const ModelFunctions& m, const Grid& g,
                  double H0);

struct EEPConstants {
  double K_sigma;
  double K_w;
  double k_sigma;
  double k_w;
  double C1;
  double C2_tilde;
  double C2;
  double C3;
  double rate;  // 1/(C1 C2)
};

EEPConstants compute_eep_constants(const HypothesisConstants& hc, const Equilibrium& eq,
                                   const ModelFunctions& m, const Grid& g,
                                   double H0 = 1.0);

}  // namespace eerd

#endif
