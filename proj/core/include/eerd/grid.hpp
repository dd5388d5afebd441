#ifndef EERD_GRID_HPP
#define EERD_GRID_HPP

#include <vector>

namespace eerd {

using CellField = std::vector<double>;  // one value per cell, length N
using FaceField = std::vector<double>;  // one value per interior face, length N-1

// Uniform cell-centered mesh on [0, L] with per-cell permittivity.
// Boundary faces carry no flux; they are not stored.
class Grid {
 public:
  Grid(double length, int cells, double eps_uniform = 1.0);
  Grid(double length, int cells, CellField eps);

  double length() const { return length_; }
  int cells() const { return cells_; }
  double h() const { return h_; }
  double cell_center(int i) const { return (i + 0.5) * h_; }

  const CellField& eps() const { return eps_; }
  /// Harmonic face averages of the permittivity, the flux-continuous choice.
  const FaceField& eps_face() const { return eps_face_; }
  double eps_min() const { return eps_min_; }
  double eps_max() const { return eps_max_; }

 private:
  void finish();

  double length_;
  int cells_;
  double h_;
  CellField eps_;
  FaceField eps_face_;
  double eps_min_;
  double eps_max_;
};

/// (f[i+1] - f[i]) / h at interior faces.
FaceField face_gradient(const Grid& g, const CellField& f);

/// (j[i] - j[i-1]) / h with zero flux through the boundary faces.
CellField divergence_of_face_flux(const Grid& g, const FaceField& j);

/// Midpoint rule, h * sum f[i].
double integrate(const Grid& g, const CellField& f);

/// Optimal interval constant (L/pi)^2 in |f|_2^2 <= C_P |f'|_2^2 for
/// zero-mean f under no-flux conditions.
double poincare_constant(const Grid& g);

/// Arithmetic face average of a cell field.
FaceField face_average(const Grid& g, const CellField& f);

/// h * sum over faces of eps_face * (face_gradient f)^2.
double weighted_face_dirichlet_energy(const Grid& g, const CellField& f);

/// h * sum over faces of (face_gradient f)^2.
double face_dirichlet_energy(const Grid& g, const CellField& f);

double l1_norm(const Grid& g, const CellField& f);
double l1_distance(const Grid& g, const CellField& f, const CellField& ref);
double l1_distance(const Grid& g, const CellField& f, double ref);

}  // namespace eerd

#endif
