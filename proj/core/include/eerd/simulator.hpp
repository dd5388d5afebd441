#ifndef EERD_SIMULATOR_HPP
#define EERD_SIMULATOR_HPP

#include <cstdint>
#include <vector>

#include "eerd/constants.hpp"
#include "eerd/equilibrium.hpp"
#include "eerd/grid.hpp"
#include "eerd/model.hpp"
#include "eerd/state.hpp"

namespace eerd {

struct FluxSet {
  FaceField j_n;  // interior faces; boundary faces carry zero flux
  FaceField j_p;
  FaceField j_u;
};

struct SimConfig {
  double t_end = 1.0;
  double dt_init = 1e-3;          // user ceiling on the step size
  double cfl = 0.2;               // fraction of the parabolic limit h^2/D_max
  int sample_every = 100;         // accepted steps between samples
  double positivity_floor = 0.0;  // 0 selects 1e-12 * N_max
};

struct TrajectorySample {
  double t;
  double S, E, Q, H, P;
  double l1_n, l1_p, l1_u;  // L1 distances to the equilibrium
  double h1_psi;            // H1 norm of the potential
  double dt;                // step size used to reach this sample
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double H0 = 0.0;
  double predicted_rate = 0.0;  // 1/(C1 C2)
  long long steps = 0;
  long long rejections = 0;
};

/// Drift-diffusion fluxes at the interior faces, with all coefficients
/// face-averaged arithmetically. With A = (n-p)/gamma (w'/w)^2:
///   j_n = -grad n + (n/theta)(1 + A) grad psi
///   j_p = -grad p - (p/theta)(1 - A) grad psi
///   j_u = -grad u + (1/theta)((n-p)/gamma)(w'/w) grad psi
FluxSet compute_fluxes(const State& s, const DerivedFields& d, const ModelFunctions& m,
                       const Grid& g);

struct Rhs {
  CellField dn, dp, du;
  double d_max = 1.0;  // diffusive scale governing the explicit step cap
};

/// dn = -div j_n + R, dp = -div j_p + R,
/// du = -div j_u + Joule, with the Joule face power (j_n - j_p) grad psi
/// split half to each adjacent cell.
Rhs compute_rhs(const State& s, const ModelFunctions& m, const Grid& g);
Rhs compute_rhs(const State& s, const DerivedFields& d, const ModelFunctions& m,
                const Grid& g);

struct StepResult {
  State state;
  double dt_used;
};

/// One explicit Euler step with rejection: a trial state violating the
/// positivity floor, the temperature floor, or the energy ceiling is
/// retried with dt/2, at most 40 times before std::runtime_error.
StepResult step(const State& s, double dt, const ModelFunctions& m, const Grid& g,
                const Bounds& b, double positivity_floor);

/// Explicit Euler integration to t_end with the step capped by
/// cfl * h^2 / D_max, sampling all diagnostics every sample_every
/// accepted steps and at the final time.
Trajectory run(const State& s0, const SimConfig& cfg, const ModelFunctions& m,
               const Grid& g, const Equilibrium& eq, const EEPConstants& consts,
               const Bounds& b);

/// Least-squares slope of -log H over the samples with t >= t_from,
/// skipping values below the round-off floor. Returns NaN when fewer
/// than two usable samples exist.
double fitted_decay_rate(const Trajectory& traj, double t_from);

}  // namespace eerd

#endif
