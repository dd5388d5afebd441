#include "eerd/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "eerd/poisson.hpp"
#include "face_primitives.hpp"

namespace eerd {

namespace {

// log1p(x) - x, fully accurate for small x where the direct difference
// cancels to the O(x^2) remainder.
double log1p_minus_x(double x) {
  if (std::abs(x) < 1e-3)
    return x * x * (-0.5 + x * (1.0 / 3.0 + x * (-0.25 + x / 5.0)));
  return std::log1p(x) - x;
}

// (1+x)^q - 1 - q x, same purpose for the power families.
double pow1p_minus_linear(double x, double q) {
  if (std::abs(x) < 1e-3) {
    const double c2 = q * (q - 1.0) / 2.0;
    const double c3 = c2 * (q - 2.0) / 3.0;
    const double c4 = c3 * (q - 3.0) / 4.0;
    const double c5 = c4 * (q - 4.0) / 5.0;
    return x * x * (c2 + x * (c3 + x * (c4 + x * c5)));
  }
  return std::expm1(q * std::log1p(x)) - q * x;
}

// sigma(u) - sigma(u_ref) - sigma'(u_ref)(u - u_ref), <= 0 by concavity.
double sigma_taylor_remainder(const ModelFunctions& m, double u, double u_ref) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        const double x = (u - u_ref) / u_ref;
        if constexpr (std::is_same_v<T, LogEntropy>) {
          return s.a * log1p_minus_x(x);
        } else {
          return s.a * std::pow(u_ref, s.alpha) * pow1p_minus_linear(x, s.alpha);
        }
      },
      m.sigma);
}

// w(u) - w(u_ref) - w'(u_ref)(u - u_ref), <= 0 by concavity.
double weight_taylor_remainder(const ModelFunctions& m, double u, double u_ref) {
  const double x = (u - u_ref) / (1.0 + u_ref);
  return m.weight.b * std::pow(1.0 + u_ref, m.weight.beta) *
         pow1p_minus_linear(x, m.weight.beta);
}

// c log(c/w) - c + w = w lambda(c/w), nonnegative.
double boltzmann_group(double c, double w) { return w * boltzmann(c / w); }

void require_positive(const State& s, const char* who) {
  for (size_t i = 0; i < s.n.size(); ++i)
    if (!(s.n[i] > 0.0 && s.p[i] > 0.0 && s.u[i] > 0.0))
      throw std::domain_error(std::string(who) + ": state must be strictly positive");
}

}  // namespace

double entropy_density(double n, double p, double u, const ModelFunctions& m) {
  if (!(u > 0.0)) throw std::domain_error("entropy_density: u must be positive");
  if (n < 0.0 || p < 0.0)
    throw std::domain_error("entropy_density: concentrations must be nonnegative");
  const auto sig = eval_sigma(m, u);
  const auto w = eval_w(m, u);
  const double logw = std::log(w.value);
  return sig.value + n * logw - boltzmann(n) + p * logw - boltzmann(p);
}

double total_entropy(const State& s, const ModelFunctions& m, const Grid& g) {
  double sum = 0.0;
  for (int i = 0; i < g.cells(); ++i)
    sum += entropy_density(s.n[i], s.p[i], s.u[i], m);
  return g.h() * sum;
}

double total_energy(const State& s, const Grid& g) {
  const CellField psi = solve_poisson(g, s.n, s.p);
  double sum_u = 0.0;
  for (double v : s.u) sum_u += v;
  return 0.5 * weighted_face_dirichlet_energy(g, psi) + g.h() * sum_u;
}

double total_energy(const State& s, const DerivedFields& d, const Grid& g) {
  double sum_u = 0.0;
  for (double v : s.u) sum_u += v;
  return 0.5 * weighted_face_dirichlet_energy(g, d.psi) + g.h() * sum_u;
}

double total_charge(const State& s, const Grid& g) {
  return kChargeN * integrate(g, s.n) + kChargeP * integrate(g, s.p);
}

double reaction(double n, double p, double u, const ModelFunctions& m) {
  const double w = eval_w(m, u).value;
  return reaction_rate_factor(m, n, p, u) * (w * w - n * p);
}

double reactive_entropy_term(double n, double p, double u, const ModelFunctions& m) {
  const double w = eval_w(m, u).value;
  const double np = n * p;
  if (np == 0.0)
    throw std::domain_error("reactive_entropy_term: diverges at n p = 0");
  const double F = reaction_rate_factor(m, n, p, u);
  const double w2 = w * w;
  // F (np - w^2) log(np/w^2) = F w^2 d log1p(d) with d = np/w^2 - 1.
  const double d = (np - w2) / w2;
  if (std::abs(d) < 0.5) return F * w2 * d * std::log1p(d);
  return F * (np - w2) * std::log(np / w2);
}

RelativeEntropyTerms relative_entropy_terms(const State& s, const DerivedFields& d,
                                            const Equilibrium& eq,
                                            const ModelFunctions& m, const Grid& g) {
  RelativeEntropyTerms t{};
  double boltz = 0.0, weight = 0.0, sig = 0.0;
  for (int i = 0; i < g.cells(); ++i) {
    const double w = d.w[i];
    boltz += boltzmann_group(s.n[i], w) + boltzmann_group(s.p[i], w);
    weight += weight_taylor_remainder(m, s.u[i], eq.u_inf);
    sig += sigma_taylor_remainder(m, s.u[i], eq.u_inf);
  }
  t.boltzmann_term = g.h() * boltz;
  t.weight_term = -2.0 * g.h() * weight;
  t.sigma_term = -g.h() * sig;
  t.field_term = 0.5 / eq.theta_inf * weighted_face_dirichlet_energy(g, d.psi);
  return t;
}

RelativeEntropyTerms relative_entropy_terms(const State& s, const Equilibrium& eq,
                                            const ModelFunctions& m, const Grid& g) {
  return relative_entropy_terms(s, derive_fields(s, m, g), eq, m, g);
}

double relative_entropy(const State& s, const Equilibrium& eq, const ModelFunctions& m,
                        const Grid& g) {
  return relative_entropy_terms(s, eq, m, g).total();
}

EntropyProductionTerms entropy_production_terms(const State& s, const DerivedFields& d,
                                                const ModelFunctions& m, const Grid& g) {
  require_positive(s, "entropy_production");
  EntropyProductionTerms t{};
  const double h = g.h();

  double reactive = 0.0;
  for (int i = 0; i < g.cells(); ++i)
    reactive += reactive_entropy_term(s.n[i], s.p[i], s.u[i], m);
  t.reactive = h * reactive;

  const auto fp = detail::face_primitives(s, d, g);
  double acc_n = 0.0, acc_p = 0.0, acc_u = 0.0;
  for (int f = 0; f < fp.faces; ++f) {
    const double drift = fp.grad_psi[f] / fp.theta[f];
    const double en = fp.grad_n[f] - fp.n[f] * fp.r[f] * fp.grad_u[f] - fp.n[f] * drift;
    const double ep = fp.grad_p[f] - fp.p[f] * fp.r[f] * fp.grad_u[f] + fp.p[f] * drift;
    const double eu =
        fp.grad_u[f] + (fp.p[f] - fp.n[f]) * fp.r[f] / fp.gamma[f] * drift;
    acc_n += en * en / fp.n[f];
    acc_p += ep * ep / fp.p[f];
    acc_u += fp.gamma[f] * eu * eu;
  }
  t.particle_n = h * acc_n;
  t.particle_p = h * acc_p;
  t.energy = h * acc_u;
  return t;
}

EntropyProductionTerms entropy_production_terms(const State& s, const ModelFunctions& m,
                                                const Grid& g) {
  return entropy_production_terms(s, derive_fields(s, m, g), m, g);
}

double entropy_production(const State& s, const ModelFunctions& m, const Grid& g) {
  return entropy_production_terms(s, m, g).total();
}

double entropy_production(const State& s, const DerivedFields& d,
                          const ModelFunctions& m, const Grid& g) {
  return entropy_production_terms(s, d, m, g).total();
}

double entropy_production_recast(const State& s, const DerivedFields& d,
                                 const ModelFunctions& m, const Grid& g) {
  require_positive(s, "entropy_production_recast");
  const double h = g.h();

  double reactive = 0.0;
  for (int i = 0; i < g.cells(); ++i)
    reactive += reactive_entropy_term(s.n[i], s.p[i], s.u[i], m);

  const auto fp = detail::face_primitives(s, d, g);
  double acc = 0.0;
  for (int f = 0; f < fp.faces; ++f) {
    const double drift = fp.grad_psi[f] / fp.theta[f];
    const double cross =
        -2.0 * fp.r[f] * (fp.grad_n[f] + fp.grad_p[f]) * fp.grad_u[f];
    const double en = fp.grad_n[f] - fp.n[f] * drift;
    const double ep = fp.grad_p[f] + fp.p[f] * drift;
    const double cu = fp.gamma[f] + (fp.n[f] + fp.p[f]) * fp.r[f] * fp.r[f];
    const double dnp = fp.n[f] - fp.p[f];
    const double cpsi = fp.r[f] * fp.r[f] * dnp * dnp / fp.gamma[f];
    acc += cross + en * en / fp.n[f] + ep * ep / fp.p[f] +
           cu * fp.grad_u[f] * fp.grad_u[f] + cpsi * drift * drift;
  }
  return h * reactive + h * acc;
}

double entropy_production_recast(const State& s, const ModelFunctions& m,
                                 const Grid& g) {
  return entropy_production_recast(s, derive_fields(s, m, g), m, g);
}

double dissipative_lower_bound_rhs(const State& s, const DerivedFields& d,
                                   const ModelFunctions& m, const Grid& g,
                                   const WeightGrowthConstants& wc) {
  require_positive(s, "dissipative_lower_bound_rhs");
  const double h = g.h();

  double reactive = 0.0;
  for (int i = 0; i < g.cells(); ++i)
    reactive += reactive_entropy_term(s.n[i], s.p[i], s.u[i], m);

  const auto fp = detail::face_primitives(s, d, g);
  const double damp = 0.5 - wc.g_w;
  double acc = 0.0;
  for (int f = 0; f < fp.faces; ++f) {
    const double eps_ratio = g.eps_face()[f] / g.eps_max();
    const double drift = fp.grad_psi[f] / fp.theta[f];
    const double en = fp.grad_n[f] - fp.n[f] * drift;
    const double ep = fp.grad_p[f] + fp.p[f] * drift;
    const double cu = fp.gamma[f] + (fp.n[f] + fp.p[f]) * fp.r[f] * fp.r[f];
    const double dnp = fp.n[f] - fp.p[f];
    const double cpsi = fp.r[f] * fp.r[f] * dnp * dnp / fp.gamma[f];
    acc += eps_ratio * (en * en / fp.n[f] + ep * ep / fp.p[f] +
                        cu * fp.grad_u[f] * fp.grad_u[f] + cpsi * drift * drift);
  }
  return h * reactive + damp * h * acc;
}

double dissipative_lower_bound_rhs(const State& s, const ModelFunctions& m,
                                   const Grid& g, const WeightGrowthConstants& wc) {
  return dissipative_lower_bound_rhs(s, derive_fields(s, m, g), m, g, wc);
}

double inv_temp_gradient_functional(const State& s, const DerivedFields& d,
                                    const ModelFunctions& m, const Grid& g) {
  require_positive(s, "inv_temp_gradient_functional");
  const int faces = g.cells() - 1;
  const double inv_h = 1.0 / g.h();
  double acc = 0.0;
  for (int f = 0; f < faces; ++f) {
    const double grad_inv_theta =
        (1.0 / d.theta[f + 1] - 1.0 / d.theta[f]) * inv_h;
    const double gamma_f = 0.5 * (d.gamma[f + 1] + d.gamma[f]);
    acc += grad_inv_theta * grad_inv_theta / gamma_f;
  }
  return g.h() * acc;
}

double inv_temp_gradient_functional(const State& s, const ModelFunctions& m,
                                    const Grid& g) {
  return inv_temp_gradient_functional(s, derive_fields(s, m, g), m, g);
}

FunctionalReport functional_report(const State& s, const Equilibrium& eq,
                                   const ModelFunctions& m, const Grid& g,
                                   const WeightGrowthConstants& wc) {
  const DerivedFields d = derive_fields(s, m, g);
  FunctionalReport r{};
  r.S_total = total_entropy(s, m, g);
  r.E_total = total_energy(s, d, g);
  r.Q_total = total_charge(s, g);
  r.H = relative_entropy_terms(s, d, eq, m, g).total();
  const auto pt = entropy_production_terms(s, d, m, g);
  r.P = pt.total();
  r.P_recast = entropy_production_recast(s, d, m, g);
  r.reactive_term = pt.reactive;
  r.dissipative_lb = dissipative_lower_bound_rhs(s, d, m, g, wc);
  r.inv_temp_grad = inv_temp_gradient_functional(s, d, m, g);
  return r;
}

}  // namespace eerd
