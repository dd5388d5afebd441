#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "eerd/equilibrium.hpp"
#include "eerd/functionals.hpp"

using namespace eerd;

namespace {
const ModelFunctions kModel{LogEntropy{1.0}, PowerWeight{1.0, 0.25}, ConstantRate{1.0}};
}

TEST_CASE("closed-form equilibrium values") {
  const Grid g(1.0, 32);
  const Equilibrium eq = compute_equilibrium(2.0, 0.0, g, kModel);
  CHECK(eq.u_inf == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(eq.n_inf == doctest::Approx(1.3160740129524925).epsilon(1e-14));
  CHECK(eq.p_inf == eq.n_inf);
  CHECK(1.0 / eq.theta_inf == doctest::Approx(0.71934566882541541).epsilon(1e-14));
  CHECK(eq.psi_inf == 0.0);
  CHECK(eq.kappa == 0.0);
  CHECK(eq.eta == doctest::Approx(1.0 / eq.theta_inf).epsilon(1e-15));
}

TEST_CASE("u_inf is the mean energy density") {
  const Grid g(2.0, 32);
  CHECK(compute_equilibrium(2.0, 0.0, g, kModel).u_inf == doctest::Approx(1.0));
}

TEST_CASE("invalid conserved quantities are rejected") {
  const Grid g(1.0, 32);
  CHECK_THROWS_AS(compute_equilibrium(2.0, 0.1, g, kModel), std::invalid_argument);
  CHECK_THROWS_AS(compute_equilibrium(0.0, 0.0, g, kModel), std::domain_error);
  CHECK_THROWS_AS(compute_equilibrium(-1.0, 0.0, g, kModel), std::domain_error);
}

TEST_CASE("mass-action balance holds exactly") {
  const Grid g(1.0, 16);
  const Equilibrium eq = compute_equilibrium(1.7, 0.0, g, kModel);
  const double w = eval_w(kModel, eq.u_inf).value;
  CHECK(eq.n_inf * eq.p_inf == w * w);
}

TEST_CASE("verify_equilibrium passes on the true equilibrium") {
  const Grid g(1.0, 64);
  const Equilibrium eq = compute_equilibrium(2.0, 0.0, g, kModel);
  const auto report = verify_equilibrium(eq, 2.0, kModel, g);
  CHECK(report.all_pass);
  for (const auto& c : report.checks) CHECK(std::abs(c.value) <= c.tol);
}

TEST_CASE("perturbed equilibrium fails the energy identity") {
  const Grid g(1.0, 64);
  Equilibrium eq = compute_equilibrium(2.0, 0.0, g, kModel);
  eq.u_inf += 1e-3;
  eq.n_inf = eq.p_inf = eval_w(kModel, eq.u_inf).value;
  const auto report = verify_equilibrium(eq, 2.0, kModel, g);
  CHECK_FALSE(report.all_pass);
  bool energy_failed = false;
  for (const auto& c : report.checks)
    if (c.name == "energy_mismatch" && !c.pass) energy_failed = true;
  CHECK(energy_failed);
}

TEST_CASE("reactive entropy term vanishes at the equilibrium state") {
  const Grid g(1.0, 16);
  const Equilibrium eq = compute_equilibrium(1.0, 0.0, g, kModel);
  const State s = equilibrium_state(eq, g);
  for (int i = 0; i < g.cells(); ++i) {
    CHECK(reaction(s.n[i], s.p[i], s.u[i], kModel) == 0.0);
    CHECK(reactive_entropy_term(s.n[i], s.p[i], s.u[i], kModel) == 0.0);
  }
}
