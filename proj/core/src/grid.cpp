#include "eerd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eerd {

Grid::Grid(double length, int cells, double eps_uniform)
    : Grid(length, cells, CellField(static_cast<size_t>(std::max(cells, 0)), eps_uniform)) {}

Grid::Grid(double length, int cells, CellField eps)
    : length_(length), cells_(cells), eps_(std::move(eps)) {
  if (!(length_ > 0.0)) throw std::invalid_argument("grid: length must be positive");
  if (cells_ < 2) throw std::invalid_argument("grid: need at least two cells");
  if (eps_.size() != static_cast<size_t>(cells_))
    throw std::invalid_argument("grid: permittivity length does not match cell count");
  h_ = length_ / cells_;
  finish();
}

void Grid::finish() {
  eps_min_ = eps_[0];
  eps_max_ = eps_[0];
  for (double e : eps_) {
    if (!(e > 0.0)) throw std::invalid_argument("grid: permittivity must be positive");
    eps_min_ = std::min(eps_min_, e);
    eps_max_ = std::max(eps_max_, e);
  }
  eps_face_.resize(cells_ - 1);
  for (int i = 0; i + 1 < cells_; ++i)
    eps_face_[i] = 2.0 * eps_[i] * eps_[i + 1] / (eps_[i] + eps_[i + 1]);
}

namespace {
void require_cells(const Grid& g, const CellField& f, const char* who) {
  if (f.size() != static_cast<size_t>(g.cells()))
    throw std::invalid_argument(std::string(who) + ": cell field length mismatch");
}
void require_faces(const Grid& g, const FaceField& j, const char* who) {
  if (j.size() != static_cast<size_t>(g.cells() - 1))
    throw std::invalid_argument(std::string(who) + ": face field length mismatch");
}
}  // namespace

FaceField face_gradient(const Grid& g, const CellField& f) {
  require_cells(g, f, "face_gradient");
  FaceField out(g.cells() - 1);
  const double inv_h = 1.0 / g.h();
  for (int i = 0; i + 1 < g.cells(); ++i) out[i] = (f[i + 1] - f[i]) * inv_h;
  return out;
}

CellField divergence_of_face_flux(const Grid& g, const FaceField& j) {
  require_faces(g, j, "divergence_of_face_flux");
  const int n = g.cells();
  CellField out(n);
  const double inv_h = 1.0 / g.h();
  out[0] = j[0] * inv_h;
  for (int i = 1; i + 1 < n; ++i) out[i] = (j[i] - j[i - 1]) * inv_h;
  out[n - 1] = -j[n - 2] * inv_h;
  return out;
}

double integrate(const Grid& g, const CellField& f) {
  require_cells(g, f, "integrate");
  double sum = 0.0;
  for (double v : f) sum += v;
  return g.h() * sum;
}

double poincare_constant(const Grid& g) {
  const double r = g.length() / M_PI;
  return r * r;
}

FaceField face_average(const Grid& g, const CellField& f) {
  require_cells(g, f, "face_average");
  FaceField out(g.cells() - 1);
  for (int i = 0; i + 1 < g.cells(); ++i) out[i] = 0.5 * (f[i] + f[i + 1]);
  return out;
}

double weighted_face_dirichlet_energy(const Grid& g, const CellField& f) {
  require_cells(g, f, "weighted_face_dirichlet_energy");
  const double inv_h = 1.0 / g.h();
  double sum = 0.0;
  for (int i = 0; i + 1 < g.cells(); ++i) {
    const double grad = (f[i + 1] - f[i]) * inv_h;
    sum += g.eps_face()[i] * grad * grad;
  }
  return g.h() * sum;
}

double face_dirichlet_energy(const Grid& g, const CellField& f) {
  require_cells(g, f, "face_dirichlet_energy");
  const double inv_h = 1.0 / g.h();
  double sum = 0.0;
  for (int i = 0; i + 1 < g.cells(); ++i) {
    const double grad = (f[i + 1] - f[i]) * inv_h;
    sum += grad * grad;
  }
  return g.h() * sum;
}

double l1_norm(const Grid& g, const CellField& f) {
  require_cells(g, f, "l1_norm");
  double sum = 0.0;
  for (double v : f) sum += std::abs(v);
  return g.h() * sum;
}

double l1_distance(const Grid& g, const CellField& f, const CellField& ref) {
  require_cells(g, f, "l1_distance");
  require_cells(g, ref, "l1_distance");
  double sum = 0.0;
  for (size_t i = 0; i < f.size(); ++i) sum += std::abs(f[i] - ref[i]);
  return g.h() * sum;
}

double l1_distance(const Grid& g, const CellField& f, double ref) {
  require_cells(g, f, "l1_distance");
  double sum = 0.0;
  for (double v : f) sum += std::abs(v - ref);
  return g.h() * sum;
}

}  // namespace eerd
