#ifndef EERD_STATE_HPP
#define EERD_STATE_HPP

#include <string>
#include <vector>

#include "eerd/grid.hpp"
#include "eerd/model.hpp"

namespace eerd {

// Charges are fixed: electrons carry -1, holes +1.
inline constexpr double kChargeN = -1.0;
inline constexpr double kChargeP = +1.0;

struct State {
  CellField n;  // electron concentration, nonnegative
  CellField p;  // hole concentration, nonnegative
  CellField u;  // internal energy density, nonnegative
};

// Uniform temperature floor and energy ceiling of the admissible class.
struct Bounds {
  double c_theta;
  double C_u;
};

struct DerivedFields {
  CellField theta;    // 1 / (sigma'(u) + (n+p) w'(u)/w(u)), positive
  CellField gamma;    // -sigma''(u) - (n+p) w''(u)/w(u), positive
  CellField psi;      // electrostatic potential, zero mean
  CellField y_n;      // -log(n / w(u)), only when potentials_valid
  CellField y_p;      // -log(p / w(u)), only when potentials_valid
  CellField w;        // w(u), cached for flux and reaction assembly
  CellField w_ratio;  // w'(u)/w(u)
  bool potentials_valid = false;
};

/// Round-off scale for the charge compatibility condition,
/// 1e-12 * max(integral n, integral p, 1).
double charge_tolerance(const Grid& g, const State& s);

/// Temperature, Hessian weight gamma, potential, and (on strictly
/// positive states) the chemical potentials. Zero concentrations are
/// allowed; the chemical potentials are then skipped. Throws
/// std::domain_error on negative n/p or nonpositive u.
DerivedFields derive_fields(const State& s, const ModelFunctions& m, const Grid& g);

/// Allocation-reusing variant; with_potentials = false skips y_n, y_p.
void derive_fields_into(DerivedFields& out, const State& s, const ModelFunctions& m,
                        const Grid& g, bool with_potentials = true);

struct AdmissibilityReport {
  bool admissible = true;
  std::vector<std::string> failures;
  double min_n, min_p, min_u, max_n, max_p, max_u;
  double min_theta, max_theta;
  double charge, charge_tol;
  // Bounds implied by (c_theta, C_u) for every admissible state.
  double implied_c_u;      // (sigma')^{-1}(1/c_theta)
  double implied_C_theta;  // 1/sigma'(C_u)
  double implied_N_max;    // w(C_u) / (c_theta w'(C_u))
};

/// Per-cell verification of u <= C_u, theta >= c_theta, nonnegativity,
/// and charge compatibility. Failures are reported, never thrown.
AdmissibilityReport check_admissible(const State& s, const Bounds& b,
                                     const ModelFunctions& m, const Grid& g);

}  // namespace eerd

#endif
