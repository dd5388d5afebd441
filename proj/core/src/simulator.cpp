#include "eerd/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "eerd/functionals.hpp"
#include "face_primitives.hpp"

namespace eerd {

namespace {

struct Workspace {
  detail::FacePrimitives fp;
  FaceField j_n, j_p, j_u;
  CellField reaction, joule;
  CellField dn, dp, du;
};

// Fluxes, reactions, and the Joule source in one pass. d_max combines
// the unit diffusion coefficient with the advective scales h|v| so that
// cfl*h^2/d_max respects both limits.
void fluxes_into(Workspace& ws, const State& s, const DerivedFields& d,
                 const ModelFunctions& m, const Grid& g, double* d_max_out) {
  detail::build_face_primitives(ws.fp, s, d, g);
  const auto& fp = ws.fp;
  const int faces = fp.faces;
  const int cells = g.cells();
  ws.j_n.resize(faces);
  ws.j_p.resize(faces);
  ws.j_u.resize(faces);
  ws.reaction.resize(cells);
  ws.joule.resize(cells);

  double v_max = 0.0;
  for (int f = 0; f < faces; ++f) {
    const double drift = fp.grad_psi[f] / fp.theta[f];
    const double A = (fp.n[f] - fp.p[f]) * fp.r[f] * fp.r[f] / fp.gamma[f];
    const double vu = (fp.n[f] - fp.p[f]) / fp.gamma[f] * fp.r[f] / fp.theta[f] *
                      fp.grad_psi[f];
    ws.j_n[f] = -fp.grad_n[f] + fp.n[f] * (1.0 + A) * drift;
    ws.j_p[f] = -fp.grad_p[f] - fp.p[f] * (1.0 - A) * drift;
    ws.j_u[f] = -fp.grad_u[f] + vu;
    v_max = std::max({v_max, std::abs((1.0 + A) * drift),
                      std::abs((1.0 - A) * drift), std::abs(vu) / fp.u[f]});
  }
  if (d_max_out) *d_max_out = std::max(1.0, g.h() * v_max);

  for (int i = 0; i < cells; ++i) {
    const double F = reaction_rate_factor(m, s.n[i], s.p[i], s.u[i]);
    ws.reaction[i] = F * (d.w[i] * d.w[i] - s.n[i] * s.p[i]);
    const double joule_r = (i < faces) ? (ws.j_n[i] - ws.j_p[i]) * fp.grad_psi[i] : 0.0;
    const double joule_l =
        (i > 0) ? (ws.j_n[i - 1] - ws.j_p[i - 1]) * fp.grad_psi[i - 1] : 0.0;
    ws.joule[i] = 0.5 * (joule_r + joule_l);
  }
}

void rhs_into(Workspace& ws, const State& s, const DerivedFields& d,
              const ModelFunctions& m, const Grid& g, double* d_max_out) {
  fluxes_into(ws, s, d, m, g, d_max_out);
  const int cells = g.cells();
  const int faces = cells - 1;
  ws.dn.resize(cells);
  ws.dp.resize(cells);
  ws.du.resize(cells);
  const double inv_h = 1.0 / g.h();
  for (int i = 0; i < cells; ++i) {
    const double jn_r = (i < faces) ? ws.j_n[i] : 0.0;
    const double jn_l = (i > 0) ? ws.j_n[i - 1] : 0.0;
    const double jp_r = (i < faces) ? ws.j_p[i] : 0.0;
    const double jp_l = (i > 0) ? ws.j_p[i - 1] : 0.0;
    const double ju_r = (i < faces) ? ws.j_u[i] : 0.0;
    const double ju_l = (i > 0) ? ws.j_u[i - 1] : 0.0;
    ws.dn[i] = -(jn_r - jn_l) * inv_h + ws.reaction[i];
    ws.dp[i] = -(jp_r - jp_l) * inv_h + ws.reaction[i];
    ws.du[i] = -(ju_r - ju_l) * inv_h + ws.joule[i];
  }
}

// Explicit Euler update in conservative form: every face flux leaves one
// cell and enters its neighbor as the identical number, and the common
// reaction increment cancels exactly in p - n, so the discrete charge is
// conserved to the rounding of the state itself.
void apply_update(State& trial, const State& s, const Workspace& ws, double dt,
                  const Grid& g) {
  const int cells = g.cells();
  for (int i = 0; i < cells; ++i) {
    const double dR = dt * ws.reaction[i];
    trial.n[i] = s.n[i] + dR;
    trial.p[i] = s.p[i] + dR;
    trial.u[i] = s.u[i] + dt * ws.joule[i];
  }
  const double scale = dt / g.h();
  for (int f = 0; f + 1 < cells; ++f) {
    const double tn = scale * ws.j_n[f];
    const double tp = scale * ws.j_p[f];
    const double tu = scale * ws.j_u[f];
    trial.n[f] -= tn;
    trial.n[f + 1] += tn;
    trial.p[f] -= tp;
    trial.p[f + 1] += tp;
    trial.u[f] -= tu;
    trial.u[f + 1] += tu;
  }
}

bool trial_admissible(const State& trial, const ModelFunctions& m, const Bounds& b,
                      double floor, DerivedFields& d_out, const Grid& g) {
  for (size_t i = 0; i < trial.n.size(); ++i) {
    if (!(trial.n[i] >= floor && trial.p[i] >= floor && trial.u[i] >= floor))
      return false;
    if (trial.u[i] > b.C_u) return false;
  }
  derive_fields_into(d_out, trial, m, g, false);
  for (double th : d_out.theta)
    if (th < b.c_theta) return false;
  return true;
}

double resolve_floor(const SimConfig& cfg, const Bounds& b, const ModelFunctions& m) {
  if (cfg.positivity_floor > 0.0) return cfg.positivity_floor;
  const auto wC = eval_w(m, b.C_u);
  return 1e-12 * wC.value / (b.c_theta * wC.d1);
}

}  // namespace

FluxSet compute_fluxes(const State& s, const DerivedFields& d, const ModelFunctions& m,
                       const Grid& g) {
  Workspace ws;
  rhs_into(ws, s, d, m, g, nullptr);
  return {std::move(ws.j_n), std::move(ws.j_p), std::move(ws.j_u)};
}

Rhs compute_rhs(const State& s, const DerivedFields& d, const ModelFunctions& m,
                const Grid& g) {
  Workspace ws;
  Rhs out;
  rhs_into(ws, s, d, m, g, &out.d_max);
  out.dn = std::move(ws.dn);
  out.dp = std::move(ws.dp);
  out.du = std::move(ws.du);
  return out;
}

Rhs compute_rhs(const State& s, const ModelFunctions& m, const Grid& g) {
  return compute_rhs(s, derive_fields(s, m, g), m, g);
}

StepResult step(const State& s, double dt, const ModelFunctions& m, const Grid& g,
                const Bounds& b, double positivity_floor) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const DerivedFields d = derive_fields(s, m, g);
  Workspace ws;
  fluxes_into(ws, s, d, m, g, nullptr);
  State trial;
  DerivedFields trial_d;
  const int cells = g.cells();
  trial.n.resize(cells);
  trial.p.resize(cells);
  trial.u.resize(cells);
  for (int attempt = 0; attempt <= 40; ++attempt) {
    apply_update(trial, s, ws, dt, g);
    if (trial_admissible(trial, m, b, positivity_floor, trial_d, g))
      return {std::move(trial), dt};
    dt *= 0.5;
  }
  throw std::runtime_error("step: rejected after 40 halvings");
}

Trajectory run(const State& s0, const SimConfig& cfg, const ModelFunctions& m,
               const Grid& g, const Equilibrium& eq, const EEPConstants& consts,
               const Bounds& b) {
  if (!(cfg.t_end > 0.0) || !(cfg.dt_init > 0.0) || !(cfg.cfl > 0.0 && cfg.cfl < 1.0) ||
      cfg.sample_every < 1)
    throw std::invalid_argument("run: invalid simulation configuration");
  const double floor = resolve_floor(cfg, b, m);

  State s = s0;
  DerivedFields d = derive_fields(s, m, g);
  {
    const auto adm = check_admissible(s, b, m, g);
    if (!adm.admissible)
      throw std::invalid_argument("run: initial state not admissible: " +
                                  adm.failures.front());
    for (size_t i = 0; i < s.n.size(); ++i)
      if (!(s.n[i] > 0.0 && s.p[i] > 0.0 && s.u[i] > 0.0))
        throw std::invalid_argument("run: initial state must be strictly positive");
  }

  Trajectory traj;
  traj.predicted_rate = consts.rate;

  auto sample = [&](double t, double dt_used) {
    TrajectorySample smp{};
    smp.t = t;
    smp.S = total_entropy(s, m, g);
    smp.E = total_energy(s, d, g);
    smp.Q = total_charge(s, g);
    smp.H = relative_entropy_terms(s, d, eq, m, g).total();
    smp.P = entropy_production(s, d, m, g);
    smp.l1_n = l1_distance(g, s.n, eq.n_inf);
    smp.l1_p = l1_distance(g, s.p, eq.p_inf);
    smp.l1_u = l1_distance(g, s.u, eq.u_inf);
    double psi_sq = 0.0;
    for (double v : d.psi) psi_sq += v * v;
    smp.h1_psi = std::sqrt(g.h() * psi_sq + face_dirichlet_energy(g, d.psi));
    smp.dt = dt_used;
    traj.samples.push_back(smp);
  };

  sample(0.0, 0.0);
  traj.H0 = traj.samples.front().H;

  Workspace ws;
  State trial;
  trial.n.resize(g.cells());
  trial.p.resize(g.cells());
  trial.u.resize(g.cells());
  DerivedFields trial_d;

  double t = 0.0;
  const double h2 = g.h() * g.h();
  long long since_sample = 0;
  while (t < cfg.t_end) {
    double d_max = 1.0;
    fluxes_into(ws, s, d, m, g, &d_max);
    double dt = std::min(cfg.dt_init, cfg.cfl * h2 / d_max);
    dt = std::min(dt, cfg.t_end - t);

    bool accepted = false;
    for (int attempt = 0; attempt <= 40; ++attempt) {
      apply_update(trial, s, ws, dt, g);
      if (trial_admissible(trial, m, b, floor, trial_d, g)) {
        accepted = true;
        break;
      }
      ++traj.rejections;
      dt *= 0.5;
    }
    if (!accepted)
      throw std::runtime_error("run: step rejected after 40 halvings at t = " +
                               std::to_string(t));

    std::swap(s.n, trial.n);
    std::swap(s.p, trial.p);
    std::swap(s.u, trial.u);
    d = std::move(trial_d);
    t += dt;
    ++traj.steps;
    ++since_sample;
    if (since_sample >= cfg.sample_every || t >= cfg.t_end) {
      sample(t, dt);
      since_sample = 0;
    }
  }
  return traj;
}

double fitted_decay_rate(const Trajectory& traj, double t_from) {
  const double h_floor = 1e-26 * (1.0 + traj.H0);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (const auto& s : traj.samples) {
    if (s.t < t_from || !(s.H > h_floor)) continue;
    const double x = s.t;
    const double y = std::log(s.H);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return std::numeric_limits<double>::quiet_NaN();
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return -(count * sxy - sx * sy) / denom;
}

}  // namespace eerd
