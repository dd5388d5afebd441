#include "eerd/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace eerd {

HypothesisConstants compute_hypothesis_constants(const Bounds& b,
                                                 const ModelFunctions& m,
                                                 const Grid& g) {
  validate_model(m);
  if (!(b.c_theta > 0.0 && b.C_u > 0.0))
    throw std::invalid_argument("hypothesis constants: bounds must be positive");
  HypothesisConstants hc{};
  hc.c_theta = b.c_theta;
  hc.C_u = b.C_u;
  hc.c_u = inverse_sigma_prime(m, 1.0 / b.c_theta);
  hc.C_theta = 1.0 / eval_sigma(m, b.C_u).d1;
  const auto wC = eval_w(m, b.C_u);
  hc.N_max = wC.value / (b.c_theta * wC.d1);
  const auto wc = hypothesis_constants(m, hc.c_u);
  hc.g_w = wc.g_w;
  hc.G_w = wc.G_w;
  hc.G_sigma = wc.G_sigma;
  hc.c_F = rate_floor(m, hc.N_max);
  hc.C_P = poincare_constant(g);
  hc.eps_min = g.eps_min();
  hc.eps_max = g.eps_max();
  return hc;
}

namespace {

constexpr int kScanPoints = 10000;

// Extremum of -f'' over [lo, hi] by dense sampling; used to confirm the
// closed-form value obtained from monotonicity.
template <typename F>
std::pair<double, double> scan_neg_d2(F&& eval, double lo, double hi) {
  double smax = -std::numeric_limits<double>::infinity();
  double smin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kScanPoints; ++i) {
    const double u = (i == kScanPoints - 1)
                         ? hi
                         : lo + (hi - lo) * static_cast<double>(i) / (kScanPoints - 1);
    const double v = -eval(u).d2;
    smax = std::max(smax, v);
    smin = std::min(smin, v);
  }
  return {smin, smax};
}

}  // namespace

TaylorEnvelopeConstants compute_K_constants(const HypothesisConstants& hc,
                                            const Equilibrium& eq,
                                            const ModelFunctions& m) {
  if (!(hc.c_u <= eq.u_inf && eq.u_inf <= hc.C_u))
    throw std::domain_error(
        "compute_K_constants: u_inf must lie in the admissible band [c_u, C_u]");

  // -sigma'' and -w'' are decreasing, so the sup sits at the left end
  // and the inf at the right end of the interval.
  const double K_sigma_closed = 0.5 * (-eval_sigma(m, hc.c_u).d2);
  const double K_w_closed = 0.5 * (-eval_w(m, hc.c_u).d2);
  const double k_sigma_closed = 0.5 * (-eval_sigma(m, hc.C_u).d2);
  const double k_w_closed = 0.5 * (-eval_w(m, hc.C_u).d2);

  auto sig = [&m](double u) { return eval_sigma(m, u); };
  auto wfun = [&m](double u) { return eval_w(m, u); };
  const auto sig_band = scan_neg_d2(sig, hc.c_u, hc.C_u);
  const auto w_band = scan_neg_d2(wfun, hc.c_u, hc.C_u);
  // k-constants live on (0, C_u] and [0, C_u]; sample from a tiny
  // positive offset for sigma.
  const auto sig_low = scan_neg_d2(sig, hc.C_u * 1e-8, hc.C_u);
  const auto w_low = scan_neg_d2(wfun, 0.0, hc.C_u);

  TaylorEnvelopeConstants K{};
  K.K_sigma = std::max(K_sigma_closed, 0.5 * sig_band.second);
  K.K_w = std::max(K_w_closed, 0.5 * w_band.second);
  K.k_sigma = std::min(k_sigma_closed, 0.5 * sig_low.first);
  K.k_w = std::min(k_w_closed, 0.5 * w_low.first);
  return K;
}

double compute_C1(const HypothesisConstants& hc, const TaylorEnvelopeConstants& K,
                  const Equilibrium& eq, const ModelFunctions& m) {
  const auto w0 = eval_w(m, 0.0);
  const double field_branch = 2.0 / w0.value + hc.C_P / (eq.theta_inf * hc.eps_min);
  const double pointwise_branch =
      2.0 * (2.0 * w0.d1 * w0.d1 / w0.value + K.K_w) + K.K_sigma;
  return std::max(field_branch, pointwise_branch);
}

C2Pair compute_C2(const HypothesisConstants& hc, const Equilibrium& eq,
                  const ModelFunctions& m) {
  if (!(hc.g_w < 0.5))
    throw std::domain_error("compute_C2: needs g_w < 1/2");
  const auto sC = eval_sigma(m, hc.C_u);
  const auto wC = eval_w(m, hc.C_u);
  const double G = std::max(hc.G_sigma, hc.G_w);
  const double reactive_factor = std::max(1.0, sC.d1 / (4.0 * hc.eps_max * hc.c_F));
  const double front = reactive_factor + 2.0 * G * G;
  const double middle = 2.0 * hc.eps_max / (1.0 - 2.0 * hc.g_w);
  const double poincare_branch =
      (hc.C_P / hc.eps_min) *
      (hc.C_P * wC.value * wC.value /
           (4.0 * hc.eps_min * hc.c_theta * wC.d1 * wC.d1) -
       1.0 / sC.d2);
  const double back = std::max(1.0 / sC.d1, poincare_branch);

  C2Pair out{};
  out.C2_tilde = front * middle * back;
  const double w0p = eval_w(m, 0.0).d1;
  out.C2 = (2.0 + std::max(4.0 * w0p * w0p - 1.0, 0.0)) * out.C2_tilde;
  return out;
}

double compute_C3(const HypothesisConstants& hc, const TaylorEnvelopeConstants& K,
                  const Equilibrium& eq, const ModelFunctions& m, const Grid& g,
                  double H0) {
  if (!(H0 >= 0.0)) throw std::domain_error("compute_C3: H0 must be nonnegative");
  const auto wC = eval_w(m, hc.C_u);
  const double w0p = eval_w(m, 0.0).d1;
  const double vol = g.length();
  const double ckp_branch =
      2.0 * vol *
      (2.0 * wC.value / (3.0 * hc.c_theta * wC.d1) + 4.0 * wC.value / 3.0 +
       w0p * w0p / (2.0 * K.k_w));
  const double sigma_branch = vol / K.k_sigma;
  const double field_branch = 2.0 * (1.0 + hc.C_P) * eq.theta_inf / hc.eps_min;
  return std::max({ckp_branch, sigma_branch, field_branch}) * H0;
}

EEPConstants compute_eep_constants(const HypothesisConstants& hc, const Equilibrium& eq,
                                   const ModelFunctions& m, const Grid& g, double H0) {
  const auto K = compute_K_constants(hc, eq, m);
  EEPConstants c{};
  c.K_sigma = K.K_sigma;
  c.K_w = K.K_w;
  c.k_sigma = K.k_sigma;
  c.k_w = K.k_w;
  c.C1 = compute_C1(hc, K, eq, m);
  const auto c2 = compute_C2(hc, eq, m);
  c.C2_tilde = c2.C2_tilde;
  c.C2 = c2.C2;
  c.C3 = compute_C3(hc, K, eq, m, g, H0);
  c.rate = 1.0 / (c.C1 * c.C2);
  return c;
}

}  // namespace eerd
