#ifndef EERD_FACE_PRIMITIVES_HPP
#define EERD_FACE_PRIMITIVES_HPP

#include <vector>

#include "eerd/grid.hpp"
#include "eerd/state.hpp"

namespace eerd::detail {

// Face-averaged inputs shared by the entropy production forms, the
// dissipative bounds, and the fluxes. Every form is assembled from the
// same primitives so that the algebraic identities between them carry
// over to the discrete level exactly.
struct FacePrimitives {
  int faces = 0;
  std::vector<double> grad_n, grad_p, grad_u, grad_psi;
  std::vector<double> n, p, u, theta, gamma, r;  // r = w'(u)/w(u)
};

inline void build_face_primitives(FacePrimitives& fp, const State& s,
                                  const DerivedFields& d, const Grid& g) {
  const int faces = g.cells() - 1;
  fp.faces = faces;
  fp.grad_n.resize(faces);
  fp.grad_p.resize(faces);
  fp.grad_u.resize(faces);
  fp.grad_psi.resize(faces);
  fp.n.resize(faces);
  fp.p.resize(faces);
  fp.u.resize(faces);
  fp.theta.resize(faces);
  fp.gamma.resize(faces);
  fp.r.resize(faces);
  const double inv_h = 1.0 / g.h();
  for (int f = 0; f < faces; ++f) {
    fp.grad_n[f] = (s.n[f + 1] - s.n[f]) * inv_h;
    fp.grad_p[f] = (s.p[f + 1] - s.p[f]) * inv_h;
    fp.grad_u[f] = (s.u[f + 1] - s.u[f]) * inv_h;
    fp.grad_psi[f] = (d.psi[f + 1] - d.psi[f]) * inv_h;
    fp.n[f] = 0.5 * (s.n[f + 1] + s.n[f]);
    fp.p[f] = 0.5 * (s.p[f + 1] + s.p[f]);
    fp.u[f] = 0.5 * (s.u[f + 1] + s.u[f]);
    fp.theta[f] = 0.5 * (d.theta[f + 1] + d.theta[f]);
    fp.gamma[f] = 0.5 * (d.gamma[f + 1] + d.gamma[f]);
    fp.r[f] = 0.5 * (d.w_ratio[f + 1] + d.w_ratio[f]);
  }
}

inline FacePrimitives face_primitives(const State& s, const DerivedFields& d,
                                      const Grid& g) {
  FacePrimitives fp;
  build_face_primitives(fp, s, d, g);
  return fp;
}

}  // namespace eerd::detail

#endif
