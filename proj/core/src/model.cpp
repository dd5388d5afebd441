#include "eerd/model.hpp"

#include <cmath>
#include <stdexcept>

namespace eerd {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void validate_model(const ModelFunctions& m) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        require(s.a > 0.0, "thermal entropy: a must be positive");
        if constexpr (std::is_same_v<T, PowerEntropy>) {
          require(s.alpha > 0.0 && s.alpha < 1.0,
                  "thermal entropy: alpha must lie in (0, 1)");
        }
      },
      m.sigma);
  require(m.weight.b > 0.0, "weight: b must be positive");
  require(m.weight.beta > 0.0 && m.weight.beta < 1.0 / 3.0,
          "weight: beta must lie in (0, 1/3)");
  std::visit(
      [](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ConstantRate>) {
          require(r.F0 > 0.0, "rate: F0 must be positive");
        } else {
          require(r.k1 > 0.0, "rate: k1 must be positive");
          require(r.k2 >= 0.0 && r.k3 >= 0.0, "rate: k2, k3 must be nonnegative");
        }
      },
      m.rate);
}

Deriv2 eval_sigma(const ModelFunctions& m, double u) {
  if (!(u > 0.0)) throw std::domain_error("eval_sigma: u must be positive");
  return std::visit(
      [u](const auto& s) -> Deriv2 {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LogEntropy>) {
          return {s.a * std::log(u), s.a / u, -s.a / (u * u)};
        } else {
          const double t = std::pow(u, s.alpha);  // u^alpha
          const double v = s.a * t;
          const double d1 = s.a * s.alpha * t / u;
          const double d2 = d1 * (s.alpha - 1.0) / u;
          return {v, d1, d2};
        }
      },
      m.sigma);
}

Deriv2 eval_w(const ModelFunctions& m, double u) {
  if (!(u >= 0.0)) throw std::domain_error("eval_w: u must be nonnegative");
  const double b = m.weight.b, beta = m.weight.beta;
  const double t = std::pow(1.0 + u, beta);
  const double v = b * t;
  const double d1 = b * beta * t / (1.0 + u);
  const double d2 = d1 * (beta - 1.0) / (1.0 + u);
  return {v, d1, d2};
}

double boltzmann(double s) {
  if (!(s >= 0.0)) throw std::domain_error("boltzmann: s must be nonnegative");
  if (s == 0.0) return 1.0;
  // Near s = 1 the direct form cancels; s log1p(d) - d keeps the
  // O(d^2) remainder accurate.
  const double d = s - 1.0;
  if (std::abs(d) < 0.5) return s * std::log1p(d) - d;
  return s * std::log(s) - s + 1.0;
}

double inverse_sigma_prime(const ModelFunctions& m, double y) {
  if (!(y > 0.0)) throw std::domain_error("inverse_sigma_prime: y must be positive");
  return std::visit(
      [y](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LogEntropy>) {
          return s.a / y;
        } else {
          return std::pow(s.a * s.alpha / y, 1.0 / (1.0 - s.alpha));
        }
      },
      m.sigma);
}

double reaction_rate_factor(const ModelFunctions& m, double n, double p, double /*u*/) {
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ConstantRate>) {
          return r.F0;
        } else {
          return 1.0 / (r.k1 + r.k2 * n + r.k3 * p);
        }
      },
      m.rate);
}

double rate_floor(const ModelFunctions& m, double n_max) {
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ConstantRate>) {
          return r.F0;
        } else {
          return 1.0 / (r.k1 + (r.k2 + r.k3) * n_max);
        }
      },
      m.rate);
}

WeightGrowthConstants hypothesis_constants(const ModelFunctions& m, double c_u) {
  if (!(c_u > 0.0)) throw std::domain_error("hypothesis_constants: c_u must be positive");
  const double beta = m.weight.beta;
  const double g_w = beta / (1.0 - beta);
  if (!(g_w < 0.5))
    throw std::domain_error("hypothesis_constants: beta >= 1/3 gives g_w >= 1/2");
  validate_model(m);
  const double G_w = (1.0 - beta) / beta;
  const double G_sigma = std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LogEntropy>) {
          return (1.0 + c_u) / (beta * c_u);
        } else {
          return (1.0 - s.alpha) * (1.0 + c_u) / (beta * c_u);
        }
      },
      m.sigma);
  return {g_w, G_w, G_sigma};
}

namespace {

// 1e4 log-spaced sample points in [1e-6, 1e6]; hypotheses are stated on
// (0, inf), the closed-form constants are the certificate and sampling
// is a confirmation.
std::vector<double> sampling_grid() {
  constexpr int kPoints = 10000;
  std::vector<double> grid(kPoints);
  const double lo = -6.0, hi = 6.0;
  for (int i = 0; i < kPoints; ++i) {
    const double e = lo + (hi - lo) * static_cast<double>(i) / (kPoints - 1);
    grid[i] = std::pow(10.0, e);
  }
  return grid;
}

constexpr double kSampleSlack = 1e-12;

}  // namespace

ModelHypothesisReport check_hypotheses(const ModelFunctions& m, double c_u) {
  ModelHypothesisReport report;
  auto add = [&report](HypothesisCheck c) {
    report.all_pass = report.all_pass && c.pass;
    report.checks.push_back(std::move(c));
  };

  try {
    validate_model(m);
  } catch (const std::exception& e) {
    add({"model_parameters", false, 0.0, 0.0, e.what()});
    return report;
  }

  const auto grid = sampling_grid();

  {
    bool ok = true;
    for (double u : grid) {
      const auto s = eval_sigma(m, u);
      if (!(s.d1 > 0.0 && s.d2 < 0.0)) { ok = false; break; }
    }
    add({"sigma_increasing_strictly_concave", ok, 0.0, 0.0,
         "sigma' > 0 and sigma'' < 0 on the sampling grid"});
  }
  {
    bool ok = eval_w(m, 0.0).value > 0.0;
    for (double u : grid) {
      const auto w = eval_w(m, u);
      if (!(w.value > 0.0 && w.d1 > 0.0 && w.d2 < 0.0)) { ok = false; break; }
    }
    add({"w_positive_increasing_strictly_concave", ok, 0.0, 0.0,
         "w > 0, w' > 0, w'' < 0 on the sampling grid and w(0) > 0"});
  }

  const double beta = m.weight.beta;
  const double g_w = beta / (1.0 - beta);
  {
    bool ok = g_w < 0.5;
    double worst = 0.0;
    if (ok) {
      for (double u : grid) {
        const auto w = eval_w(m, u);
        const double lhs = w.d1 * w.d1;
        const double rhs = -g_w * w.d2 * w.value;
        worst = std::max(worst, lhs / rhs);
        if (!(lhs <= rhs * (1.0 + kSampleSlack))) { ok = false; break; }
      }
    }
    add({"w_growth_lower", ok, g_w, worst,
         ok ? "(w')^2 <= -g_w w'' w with g_w = beta/(1-beta) < 1/2"
            : "g_w = beta/(1-beta) >= 1/2 or sampled violation"});
  }
  {
    const double G_w = (1.0 - beta) / beta;
    bool ok = true;
    double worst = 0.0;
    for (double u : grid) {
      const auto w = eval_w(m, u);
      const double lhs = -w.d2 * w.value;
      const double rhs = G_w * w.d1 * w.d1;
      worst = std::max(worst, lhs / rhs);
      if (!(lhs <= rhs * (1.0 + kSampleSlack))) { ok = false; break; }
    }
    add({"w_growth_upper", ok, G_w, worst, "-w'' w <= G_w (w')^2"});
  }
  {
    bool ok = true;
    double worst = 0.0;
    double G_sigma = 0.0;
    std::string detail = "-sigma'' w <= G_sigma sigma' w' on [c_u, inf)";
    if (g_w < 0.5) {
      G_sigma = hypothesis_constants(m, c_u).G_sigma;
      for (double u : grid) {
        if (u < c_u) continue;
        const auto s = eval_sigma(m, u);
        const auto w = eval_w(m, u);
        const double lhs = -s.d2 * w.value;
        const double rhs = G_sigma * s.d1 * w.d1;
        worst = std::max(worst, lhs / rhs);
        if (!(lhs <= rhs * (1.0 + kSampleSlack))) { ok = false; break; }
      }
    } else {
      ok = false;
      detail = "skipped: no admissible g_w";
    }
    add({"sigma_w_compatibility", ok, G_sigma, worst, detail});
  }

  return report;
}

}  // namespace eerd
