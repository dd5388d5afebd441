#include "eerd/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eerd {

// The Neumann system is lower-triangular in the face fluxes: with
// F_f = eps_f (psi_{i+1} - psi_i)/h and zero boundary fluxes,
// (F_i - F_{i-1})/h = -source_i determines every interior flux by a
// running sum, which is the forward-elimination half of the tridiagonal
// solve. Back substitution integrates psi from the fluxes; the constant
// nullspace is removed by subtracting the mean.
CellField solve_poisson_source(const Grid& g, const CellField& source) {
  const int n = g.cells();
  if (source.size() != static_cast<size_t>(n))
    throw std::invalid_argument("solve_poisson: source length mismatch");

  double scale = 1.0;
  for (double s : source) scale = std::max(scale, std::abs(s));
  double total = 0.0;
  for (double s : source) total += s;
  if (std::abs(g.h() * total) > 1e-10 * scale * g.length())
    throw std::invalid_argument("solve_poisson: incompatible source (nonzero mean)");

  // Center the source so the outflow face flux vanishes identically.
  const double mean = total / n;

  CellField psi(n);
  const double h = g.h();
  double flux = 0.0;
  psi[0] = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    flux -= h * (source[i] - mean);
    psi[i + 1] = psi[i] + h * flux / g.eps_face()[i];
  }

  double psi_mean = 0.0;
  for (double v : psi) psi_mean += v;
  psi_mean /= n;
  for (double& v : psi) v -= psi_mean;
  return psi;
}

CellField solve_poisson(const Grid& g, const CellField& n, const CellField& p) {
  if (n.size() != p.size() || n.size() != static_cast<size_t>(g.cells()))
    throw std::invalid_argument("solve_poisson: field length mismatch");
  double sum_n = 0.0, sum_p = 0.0, charge = 0.0;
  for (size_t i = 0; i < n.size(); ++i) {
    sum_n += n[i];
    sum_p += p[i];
    charge += n[i] - p[i];
  }
  const double h = g.h();
  const double tol = 1e-12 * std::max({h * sum_n, h * sum_p, 1.0});
  if (std::abs(h * charge) > tol)
    throw std::invalid_argument("solve_poisson: charge compatibility violated");
  CellField source(n.size());
  for (size_t i = 0; i < n.size(); ++i) source[i] = p[i] - n[i];
  return solve_poisson_source(g, source);
}

}  // namespace eerd
