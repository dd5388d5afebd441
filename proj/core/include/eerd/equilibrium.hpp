#ifndef EERD_EQUILIBRIUM_HPP
#define EERD_EQUILIBRIUM_HPP

#include <string>
#include <vector>

#include "eerd/grid.hpp"
#include "eerd/model.hpp"
#include "eerd/state.hpp"

namespace eerd {

// The constrained entropy maximizer at energy E0 and zero charge:
// spatially constant, n_inf = p_inf = w(u_inf), vanishing potential.
// eta and kappa are the Lagrange multipliers of the energy and charge
// constraints.
struct Equilibrium {
  double u_inf;
  double n_inf;
  double p_inf;
  double theta_inf;
  double psi_inf;  // always 0
  double eta;      // 1/theta_inf
  double kappa;    // always 0
};

/// Closed-form equilibrium from the conserved quantities: u_inf = E0/|Omega|
/// (the field energy vanishes with psi_inf = 0), n_inf = p_inf = w(u_inf),
/// 1/theta_inf = sigma'(u_inf) + 2 w'(u_inf). Throws on E0 <= 0 or |Q0|
/// beyond round-off.
Equilibrium compute_equilibrium(double E0, double Q0, const Grid& g,
                                const ModelFunctions& m);

/// The constant state realizing the equilibrium on the grid.
State equilibrium_state(const Equilibrium& eq, const Grid& g);

struct EquilibriumCheck {
  std::string name;
  double value;
  double tol;
  bool pass;
};

struct EquilibriumReport {
  std::vector<EquilibriumCheck> checks;
  bool all_pass = true;
};

/// Builds the constant equilibrium state and confirms H = 0, P = 0,
/// R = 0, psi = 0, total energy = E0, total charge = 0 within 1e-10.
EquilibriumReport verify_equilibrium(const Equilibrium& eq, double E0,
                                     const ModelFunctions& m, const Grid& g);

}  // namespace eerd

#endif
