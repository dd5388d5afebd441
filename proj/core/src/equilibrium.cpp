#include "eerd/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

#include "eerd/functionals.hpp"
#include "eerd/poisson.hpp"

namespace eerd {

Equilibrium compute_equilibrium(double E0, double Q0, const Grid& g,
                                const ModelFunctions& m) {
  if (!(E0 > 0.0)) throw std::domain_error("compute_equilibrium: E0 must be positive");
  if (std::abs(Q0) > 1e-12 * std::max(1.0, std::abs(E0)))
    throw std::invalid_argument("compute_equilibrium: total charge must vanish");
  Equilibrium eq{};
  eq.u_inf = E0 / g.length();
  const auto w = eval_w(m, eq.u_inf);
  eq.n_inf = w.value;
  eq.p_inf = w.value;
  eq.theta_inf = 1.0 / (eval_sigma(m, eq.u_inf).d1 + 2.0 * w.d1);
  eq.psi_inf = 0.0;
  eq.eta = 1.0 / eq.theta_inf;
  eq.kappa = 0.0;
  return eq;
}

State equilibrium_state(const Equilibrium& eq, const Grid& g) {
  const size_t n = static_cast<size_t>(g.cells());
  return State{CellField(n, eq.n_inf), CellField(n, eq.p_inf), CellField(n, eq.u_inf)};
}

EquilibriumReport verify_equilibrium(const Equilibrium& eq, double E0,
                                     const ModelFunctions& m, const Grid& g) {
  constexpr double kTol = 1e-10;
  EquilibriumReport report;
  auto add = [&report](const std::string& name, double value, double tol) {
    const bool pass = std::abs(value) <= tol;
    report.all_pass = report.all_pass && pass;
    report.checks.push_back({name, value, tol, pass});
  };

  const State s = equilibrium_state(eq, g);
  add("relative_entropy", relative_entropy(s, eq, m, g), kTol);
  add("entropy_production", entropy_production(s, m, g), kTol);

  double max_R = 0.0;
  for (int i = 0; i < g.cells(); ++i)
    max_R = std::max(max_R, std::abs(reaction(s.n[i], s.p[i], s.u[i], m)));
  add("reaction", max_R, kTol);

  double max_reactive = 0.0;
  for (int i = 0; i < g.cells(); ++i)
    max_reactive =
        std::max(max_reactive, std::abs(reactive_entropy_term(s.n[i], s.p[i], s.u[i], m)));
  add("reactive_entropy_term", max_reactive, kTol);

  const CellField psi = solve_poisson(g, s.n, s.p);
  double max_psi = 0.0;
  for (double v : psi) max_psi = std::max(max_psi, std::abs(v));
  add("potential", max_psi, kTol);

  add("energy_mismatch", total_energy(s, g) - E0, kTol * std::max(1.0, std::abs(E0)));
  add("charge", total_charge(s, g), kTol);
  return report;
}

}  // namespace eerd
