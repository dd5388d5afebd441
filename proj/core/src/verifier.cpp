#include "eerd/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "eerd/poisson.hpp"

namespace eerd {

namespace {

// splitmix64; keeps seeding independent of the standard library's
// distribution implementations.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo_exp, double hi_exp) {
    return std::pow(10.0, uniform(lo_exp, hi_exp));
  }
};

// Zero-mean field from the first five cosine modes, normalized to unit
// sup norm on the cell centers.
CellField cosine_perturbation(Rng& rng, const Grid& g) {
  double coeff[5];
  for (double& c : coeff) c = rng.uniform(-1.0, 1.0);
  CellField phi(g.cells());
  double sup = 0.0;
  for (int i = 0; i < g.cells(); ++i) {
    const double x = g.cell_center(i) / g.length();
    double v = 0.0;
    for (int k = 0; k < 5; ++k) v += coeff[k] * std::cos((k + 1) * M_PI * x);
    phi[i] = v;
    sup = std::max(sup, std::abs(v));
  }
  if (sup == 0.0) {
    phi.assign(g.cells(), 0.0);
    return phi;
  }
  for (double& v : phi) v /= sup;
  return phi;
}

}  // namespace

std::string state_digest(const State& s) {
  // FNV-1a over the raw field bytes.
  std::uint64_t hash = 1469598103934665603ull;
  auto eat = [&hash](const CellField& f) {
    const unsigned char* bytes = reinterpret_cast<const unsigned char*>(f.data());
    for (size_t i = 0; i < f.size() * sizeof(double); ++i) {
      hash ^= bytes[i];
      hash *= 1099511628211ull;
    }
  };
  eat(s.n);
  eat(s.p);
  eat(s.u);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

State random_admissible_state(std::uint64_t seed, const Grid& g,
                              const ModelFunctions& m, const Bounds& b,
                              const Equilibrium& eq, double amplitude) {
  if (!(amplitude >= 0.0 && amplitude < 1.0))
    throw std::invalid_argument("random_admissible_state: amplitude must be in [0, 1)");
  Rng rng(mix64(seed));
  double amp = amplitude;
  for (int attempt = 0; attempt <= 20; ++attempt) {
    const CellField phi_n = cosine_perturbation(rng, g);
    const CellField phi_p = cosine_perturbation(rng, g);
    const CellField phi_u = cosine_perturbation(rng, g);
    const double a_n = amp * rng.uniform(0.5, 1.0);
    const double a_p = amp * rng.uniform(0.5, 1.0);
    const double a_u = amp * rng.uniform(0.5, 1.0);

    State s;
    s.n.resize(g.cells());
    s.p.resize(g.cells());
    s.u.resize(g.cells());
    for (int i = 0; i < g.cells(); ++i) {
      s.n[i] = eq.n_inf * (1.0 + a_n * phi_n[i]);
      s.p[i] = eq.p_inf * (1.0 + a_p * phi_p[i]);
      s.u[i] = eq.u_inf * (1.0 + a_u * phi_u[i]);
    }
    const double shift = (integrate(g, s.n) - integrate(g, s.p)) / g.length();
    for (double& v : s.p) v += shift;

    // Charge separation stores field energy; draining it from u keeps the
    // total energy at |Omega| u_inf, the conservation identity behind the
    // quadratic entropy-production bound.
    const double field_energy =
        0.5 * weighted_face_dirichlet_energy(g, solve_poisson(g, s.n, s.p));
    const double u_shift = field_energy / g.length();
    for (double& v : s.u) v -= u_shift;

    if (check_admissible(s, b, m, g).admissible) {
      bool positive = true;
      for (int i = 0; i < g.cells(); ++i)
        positive = positive && s.n[i] > 0.0 && s.p[i] > 0.0 && s.u[i] > 0.0;
      if (positive) return s;
    }
    amp *= 0.5;
  }
  throw std::runtime_error(
      "random_admissible_state: no admissible state after 20 amplitude halvings");
}

CheckRecord check_eep(const State& s, const EEPConstants& consts,
                      const ModelFunctions& m, const Grid& g, const Equilibrium& eq,
                      double margin) {
  const double H = relative_entropy(s, eq, m, g);
  const double P = entropy_production(s, m, g);
  const double rhs = consts.C1 * consts.C2 * P;
  return {"eep", state_digest(s), H, rhs, margin, H <= rhs * margin};
}

std::pair<CheckRecord, CheckRecord> check_quadratic_sandwich(
    const State& s, const EEPConstants& consts, const ModelFunctions& m, const Grid& g,
    const Equilibrium& eq, double margin) {
  double quad = 0.0;
  for (int i = 0; i < g.cells(); ++i) {
    const double dn = s.n[i] - eq.n_inf;
    const double dp = s.p[i] - eq.p_inf;
    const double du = s.u[i] - eq.u_inf;
    quad += dn * dn + dp * dp + du * du;
  }
  quad *= g.h();
  const double H = relative_entropy(s, eq, m, g);
  const double P = entropy_production(s, m, g);
  const std::string digest = state_digest(s);
  CheckRecord upper{"relative_entropy_quadratic_upper", digest, H, consts.C1 * quad,
                    margin, H <= consts.C1 * quad * margin};
  CheckRecord lower{"entropy_production_quadratic_lower", digest, quad, consts.C2 * P,
                    margin, quad <= consts.C2 * P * margin};
  return {upper, lower};
}

CheckRecord check_inv_temp_bound(const State& s, const ModelFunctions& m, const Grid& g,
                                 double margin) {
  const double lhs = inv_temp_gradient_functional(s, m, g);
  const double rhs = 2.0 * entropy_production(s, m, g);
  return {"inv_temp_gradient_bound", state_digest(s), lhs, rhs, margin,
          lhs <= rhs * margin};
}

CheckRecord check_dissipative_bound(const State& s, const ModelFunctions& m,
                                    const Grid& g, const WeightGrowthConstants& wc,
                                    double margin) {
  const double lhs = dissipative_lower_bound_rhs(s, m, g, wc);
  const double G = std::max(wc.G_sigma, wc.G_w);
  const double factor = 1.0 + 2.0 * G * G * (wc.g_w + 0.5);
  const double rhs = factor * entropy_production(s, m, g);
  return {"dissipative_lower_bound", state_digest(s), lhs, rhs, margin,
          lhs <= rhs * margin};
}

CheckRecord ckp_lower_bound(const CellField& f, const CellField& g_field,
                            const Grid& grid) {
  if (f.size() != g_field.size() || f.size() != static_cast<size_t>(grid.cells()))
    throw std::invalid_argument("ckp_lower_bound: field length mismatch");
  double lhs = 0.0, norm_f = 0.0, norm_g = 0.0, dist = 0.0;
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 0.0) throw std::domain_error("ckp_lower_bound: f must be nonnegative");
    if (!(g_field[i] > 0.0))
      throw std::domain_error("ckp_lower_bound: g must be strictly positive");
    lhs += g_field[i] * boltzmann(f[i] / g_field[i]);
    norm_f += f[i];
    norm_g += g_field[i];
    dist += std::abs(f[i] - g_field[i]);
  }
  const double h = grid.h();
  lhs *= h;
  norm_f *= h;
  norm_g *= h;
  dist *= h;
  const double rhs = 3.0 / (2.0 * norm_f + 4.0 * norm_g) * dist * dist;
  State dummy{f, g_field, CellField(f.size(), 1.0)};
  return {"csiszar_kullback_pinsker", state_digest(dummy), rhs, lhs, 1.0, rhs <= lhs};
}

std::vector<CheckRecord> scalar_inequality_suite(int sample_count, std::uint64_t seed,
                                                 const ModelFunctions& m) {
  if (sample_count < 1)
    throw std::invalid_argument("scalar_inequality_suite: need at least one sample");
  Rng rng(mix64(seed ^ 0x5ca1ab1eull));
  const double g_w = hypothesis_constants(m, 1.0).g_w;

  // Track the worst lhs/rhs margin of each inequality over the sweep.
  double worst_log = 0.0, worst_boltz = 0.0, worst_wa = 0.0, worst_wb = 0.0;
  bool ok_log = true, ok_boltz = true, ok_wa = true, ok_wb = true;
  constexpr double kSlack = 1e-12;

  for (int i = 0; i < sample_count; ++i) {
    {
      const double x = rng.log_uniform(-3.0, 3.0);
      const double y = rng.log_uniform(-3.0, 3.0);
      const double lhs = 4.0 * (std::sqrt(x) - std::sqrt(y)) * (std::sqrt(x) - std::sqrt(y));
      const double rhs = (x - y) * std::log(x / y);
      ok_log = ok_log && lhs <= rhs + kSlack * (1.0 + rhs);
      if (rhs > 0.0) worst_log = std::max(worst_log, lhs / rhs);
    }
    {
      const double z = 100.0 * rng.uniform();
      const double lhs = boltzmann(z);
      const double rhs = (z - 1.0) * (z - 1.0);
      ok_boltz = ok_boltz && lhs <= rhs + kSlack * (1.0 + rhs);
      if (rhs > 0.0) worst_boltz = std::max(worst_boltz, lhs / rhs);
    }
    {
      const double u = rng.log_uniform(-6.0, 6.0);
      const auto w = eval_w(m, u);
      const double r2 = (w.d1 / w.value) * (w.d1 / w.value);
      const double lhs = 2.0 / (g_w + 0.5) * r2;
      const double rhs = (g_w + 0.5) * (r2 - w.d2 / w.value);
      ok_wa = ok_wa && lhs <= rhs * (1.0 + kSlack);
      worst_wa = std::max(worst_wa, lhs / rhs);
      const double lhs_b = 0.5 - g_w;
      const double rhs_b = 1.0 + 2.0 / (g_w + 0.5) * r2 * (w.value / w.d2);
      ok_wb = ok_wb && lhs_b <= rhs_b * (1.0 + kSlack) + kSlack;
      if (rhs_b > 0.0) worst_wb = std::max(worst_wb, lhs_b / rhs_b);
    }
  }

  std::vector<CheckRecord> out;
  out.push_back({"log_mean_inequality", "-", worst_log, 1.0, 1.0, ok_log});
  out.push_back({"boltzmann_quadratic_bound", "-", worst_boltz, 1.0, 1.0, ok_boltz});
  out.push_back({"weight_bound_a", "-", worst_wa, 1.0, 1.0, ok_wa});
  out.push_back({"weight_bound_b", "-", worst_wb, 1.0, 1.0, ok_wb});
  return out;
}

CheckRecord check_entropy_production_law(const Trajectory& traj) {
  const auto& s = traj.samples;
  if (s.size() < 3)
    throw std::invalid_argument("check_entropy_production_law: need at least 3 samples");
  std::vector<double> errors;
  errors.reserve(s.size() - 2);
  for (size_t k = 1; k + 1 < s.size(); ++k) {
    const double dSdt = (s[k + 1].S - s[k - 1].S) / (s[k + 1].t - s[k - 1].t);
    const double scale = std::max(std::abs(s[k].P), 1e-14 * (1.0 + std::abs(s[k].S)));
    errors.push_back(std::abs(dSdt - s[k].P) / scale);
  }
  std::nth_element(errors.begin(), errors.begin() + errors.size() / 2, errors.end());
  const double median = errors[errors.size() / 2];
  return {"entropy_production_law", "-", median, 0.05, 1.0, median <= 0.05};
}

BatteryResult run_battery(const std::vector<ScenarioContext>& scenarios,
                          const BatteryConfig& cfg) {
  BatteryResult result;
  if (scenarios.empty())
    throw std::invalid_argument("run_battery: need at least one scenario");
  for (size_t sc = 0; sc < scenarios.size(); ++sc) {
    const auto& ctx = scenarios[sc];
    const WeightGrowthConstants wc{ctx.hypothesis.g_w, ctx.hypothesis.G_w,
                                   ctx.hypothesis.G_sigma};
    for (int i = 0; i < cfg.states; ++i) {
      const std::uint64_t seed = cfg.seed + 1000003ull * sc + i;
      const State s = random_admissible_state(seed, ctx.grid, ctx.model, ctx.bounds,
                                              ctx.eq, cfg.amplitude);
      ++result.states_checked;

      auto note = [&](CheckRecord rec) {
        rec.name = ctx.label + "/" + rec.name;
        if (!rec.pass) {
          ++result.violations;
          std::string dump = "{\"scenario\":\"" + ctx.label + "\",\"seed\":" +
                             std::to_string(seed) + ",\"check\":\"" + rec.name +
                             "\",\"digest\":\"" + rec.digest + "\"}";
          result.violating_states.push_back(std::move(dump));
        }
        result.report.entries.push_back(std::move(rec));
      };

      note(check_eep(s, ctx.eep, ctx.model, ctx.grid, ctx.eq, cfg.margin));
      auto sandwich =
          check_quadratic_sandwich(s, ctx.eep, ctx.model, ctx.grid, ctx.eq, cfg.margin);
      note(std::move(sandwich.first));
      note(std::move(sandwich.second));
      note(check_inv_temp_bound(s, ctx.model, ctx.grid, cfg.margin));
      note(check_dissipative_bound(s, ctx.model, ctx.grid, wc, cfg.margin));
    }
  }
  return result;
}

}  // namespace eerd
