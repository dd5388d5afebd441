#include "eerd/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "eerd/poisson.hpp"

namespace eerd {

double charge_tolerance(const Grid& g, const State& s) {
  return 1e-12 * std::max({integrate(g, s.n), integrate(g, s.p), 1.0});
}

void derive_fields_into(DerivedFields& d, const State& s, const ModelFunctions& m,
                        const Grid& g, bool with_potentials) {
  const int cells = g.cells();
  if (s.n.size() != static_cast<size_t>(cells) || s.p.size() != s.n.size() ||
      s.u.size() != s.n.size())
    throw std::invalid_argument("derive_fields: field length mismatch");

  d.theta.resize(cells);
  d.gamma.resize(cells);
  d.w.resize(cells);
  d.w_ratio.resize(cells);
  bool strictly_positive = true;
  for (int i = 0; i < cells; ++i) {
    if (s.n[i] < 0.0 || s.p[i] < 0.0 || !(s.u[i] > 0.0))
      throw std::domain_error("derive_fields: state must have n, p >= 0 and u > 0");
    strictly_positive = strictly_positive && s.n[i] > 0.0 && s.p[i] > 0.0;
    const auto sig = eval_sigma(m, s.u[i]);
    const auto w = eval_w(m, s.u[i]);
    const double np = s.n[i] + s.p[i];
    d.w[i] = w.value;
    d.w_ratio[i] = w.d1 / w.value;
    d.theta[i] = 1.0 / (sig.d1 + np * d.w_ratio[i]);
    d.gamma[i] = -sig.d2 - np * w.d2 / w.value;
  }
  d.psi = solve_poisson(g, s.n, s.p);
  d.potentials_valid = false;
  d.y_n.clear();
  d.y_p.clear();
  if (with_potentials && strictly_positive) {
    d.y_n.resize(cells);
    d.y_p.resize(cells);
    for (int i = 0; i < cells; ++i) {
      d.y_n[i] = -std::log(s.n[i] / d.w[i]);
      d.y_p[i] = -std::log(s.p[i] / d.w[i]);
    }
    d.potentials_valid = true;
  }
}

DerivedFields derive_fields(const State& s, const ModelFunctions& m, const Grid& g) {
  DerivedFields d;
  derive_fields_into(d, s, m, g, true);
  return d;
}

AdmissibilityReport check_admissible(const State& s, const Bounds& b,
                                     const ModelFunctions& m, const Grid& g) {
  AdmissibilityReport r{};
  auto fail = [&r](std::string msg) {
    r.admissible = false;
    r.failures.push_back(std::move(msg));
  };

  const int cells = g.cells();
  if (s.n.size() != static_cast<size_t>(cells) || s.p.size() != s.n.size() ||
      s.u.size() != s.n.size()) {
    fail("field length mismatch");
    return r;
  }
  if (!(b.c_theta > 0.0) || !(b.C_u > 0.0)) fail("bounds must be positive");

  r.min_n = r.min_p = r.min_u = std::numeric_limits<double>::infinity();
  r.max_n = r.max_p = r.max_u = -std::numeric_limits<double>::infinity();
  r.min_theta = std::numeric_limits<double>::infinity();
  r.max_theta = -std::numeric_limits<double>::infinity();

  bool u_positive = true;
  for (int i = 0; i < cells; ++i) {
    r.min_n = std::min(r.min_n, s.n[i]);
    r.min_p = std::min(r.min_p, s.p[i]);
    r.min_u = std::min(r.min_u, s.u[i]);
    r.max_n = std::max(r.max_n, s.n[i]);
    r.max_p = std::max(r.max_p, s.p[i]);
    r.max_u = std::max(r.max_u, s.u[i]);
    u_positive = u_positive && s.u[i] > 0.0;
  }
  if (r.min_n < 0.0) fail("negative electron concentration");
  if (r.min_p < 0.0) fail("negative hole concentration");
  if (r.min_u < 0.0) fail("negative internal energy");
  if (r.max_u > b.C_u) fail("internal energy exceeds C_u");

  if (u_positive && r.min_n >= 0.0 && r.min_p >= 0.0) {
    for (int i = 0; i < cells; ++i) {
      const auto sig = eval_sigma(m, s.u[i]);
      const auto w = eval_w(m, s.u[i]);
      const double theta = 1.0 / (sig.d1 + (s.n[i] + s.p[i]) * w.d1 / w.value);
      r.min_theta = std::min(r.min_theta, theta);
      r.max_theta = std::max(r.max_theta, theta);
    }
    if (r.min_theta < b.c_theta) fail("temperature drops below c_theta");
  } else {
    fail("temperature undefined on nonpositive energy");
  }

  r.charge = integrate(g, s.n) - integrate(g, s.p);
  r.charge_tol = charge_tolerance(g, s);
  if (std::abs(r.charge) > r.charge_tol) fail("charge compatibility violated");

  r.implied_c_u = inverse_sigma_prime(m, 1.0 / b.c_theta);
  r.implied_C_theta = 1.0 / eval_sigma(m, b.C_u).d1;
  const auto wC = eval_w(m, b.C_u);
  r.implied_N_max = wC.value / (b.c_theta * wC.d1);
  return r;
}

}  // namespace eerd
