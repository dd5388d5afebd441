#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "eerd/model.hpp"

using namespace eerd;

namespace {

ModelFunctions log_model(double a = 1.0, double b = 1.0, double beta = 0.25) {
  return {LogEntropy{a}, PowerWeight{b, beta}, ConstantRate{1.0}};
}

ModelFunctions power_model(double a = 2.0, double alpha = 0.5, double b = 1.0,
                           double beta = 0.25) {
  return {PowerEntropy{a, alpha}, PowerWeight{b, beta}, ConstantRate{1.0}};
}

double uniform01(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("eval_sigma closed forms") {
  const auto log1 = eval_sigma(log_model(), 1.0);
  CHECK(log1.value == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log1.d1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(log1.d2 == doctest::Approx(-1.0).epsilon(1e-15));

  const auto pw = eval_sigma(power_model(), 4.0);
  CHECK(pw.value == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(pw.d1 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pw.d2 == doctest::Approx(-0.0625).epsilon(1e-14));

  CHECK_THROWS_AS(eval_sigma(log_model(), 0.0), std::domain_error);
  CHECK_THROWS_AS(eval_sigma(log_model(), -1.0), std::domain_error);
}

TEST_CASE("eval_w closed forms") {
  const auto w0 = eval_w(log_model(), 0.0);
  CHECK(w0.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w0.d1 == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w0.d2 == doctest::Approx(-0.1875).epsilon(1e-15));

  // Linear in b.
  const auto w0b = eval_w(log_model(1.0, 2.0), 0.0);
  CHECK(w0b.value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(w0b.d1 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(w0b.d2 == doctest::Approx(-0.375).epsilon(1e-15));

  const auto w3 = eval_w(log_model(), 3.0);
  CHECK(w3.value == doctest::Approx(1.4142135623730950).epsilon(1e-14));
  CHECK(w3.d1 == doctest::Approx(0.08838834764831844).epsilon(1e-14));
  CHECK(w3.d2 == doctest::Approx(-0.016572815184059708).epsilon(1e-14));

  CHECK_THROWS_AS(eval_w(log_model(), -0.5), std::domain_error);
}

TEST_CASE("boltzmann function") {
  CHECK(boltzmann(1.0) == 0.0);
  CHECK(boltzmann(0.0) == 1.0);
  CHECK(boltzmann(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(boltzmann(-0.1), std::domain_error);

  std::uint64_t rng = 42;
  for (int i = 0; i < 10000; ++i) {
    const double s = 100.0 * uniform01(rng) + 1e-12;
    const double lhs = boltzmann(s);
    const double rhs = (s - 1.0) * (s - 1.0);
    CHECK(lhs >= 0.0);
    CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-15);
  }
}

TEST_CASE("inverse_sigma_prime inverts sigma'") {
  CHECK(inverse_sigma_prime(log_model(), 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(inverse_sigma_prime(log_model(), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(inverse_sigma_prime(power_model(), 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(inverse_sigma_prime(log_model(), 0.0), std::domain_error);

  for (const auto& m : {log_model(), power_model(), log_model(3.0, 2.0, 0.2)}) {
    for (int i = 0; i <= 60; ++i) {
      const double u = std::pow(10.0, -3.0 + 6.0 * i / 60.0);
      const double y = eval_sigma(m, u).d1;
      CHECK(inverse_sigma_prime(m, y) == doctest::Approx(u).epsilon(1e-12));
    }
  }
}

TEST_CASE("hypothesis_constants closed forms") {
  const auto c = hypothesis_constants(log_model(), 1.0);
  CHECK(c.g_w == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(c.G_w == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(c.G_sigma == doctest::Approx(8.0).epsilon(1e-14));

  const auto cp = hypothesis_constants(power_model(), 1.0);
  CHECK(cp.G_sigma == doctest::Approx(4.0).epsilon(1e-14));

  CHECK_THROWS_AS(hypothesis_constants(
                      ModelFunctions{LogEntropy{1.0}, PowerWeight{1.0, 0.4},
                                     ConstantRate{1.0}},
                      1.0),
                  std::domain_error);
}

TEST_CASE("check_hypotheses") {
  const auto report = check_hypotheses(log_model());
  CHECK(report.all_pass);
  CHECK(report.checks.size() == 5);

  // beta = 0.5 makes g_w = 1 >= 1/2; reported, not thrown.
  const auto bad = check_hypotheses(
      ModelFunctions{LogEntropy{1.0}, PowerWeight{1.0, 0.5}, ConstantRate{1.0}});
  CHECK_FALSE(bad.all_pass);
}

TEST_CASE("power-family growth ratio is constant") {
  const auto m = log_model(1.0, 1.7, 0.3);
  const double expected = 0.3 / 0.7;
  for (int i = 0; i <= 200; ++i) {
    const double u = std::pow(10.0, -6.0 + 12.0 * i / 200.0);
    const auto w = eval_w(m, u);
    const double ratio = w.d1 * w.d1 / (-w.d2 * w.value);
    CHECK(ratio == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("sign pattern of the model functions") {
  for (const auto& m : {log_model(), power_model()}) {
    for (int i = 0; i <= 300; ++i) {
      const double u = std::pow(10.0, -6.0 + 12.0 * i / 300.0);
      const auto s = eval_sigma(m, u);
      const auto w = eval_w(m, u);
      CHECK(s.d1 > 0.0);
      CHECK(s.d2 < 0.0);
      CHECK(w.value > 0.0);
      CHECK(w.d1 > 0.0);
      CHECK(w.d2 < 0.0);
    }
  }
}

TEST_CASE("reaction rate families") {
  CHECK(reaction_rate_factor(log_model(), 2.0, 3.0, 1.0) == 1.0);
  const ModelFunctions srh{LogEntropy{1.0}, PowerWeight{1.0, 0.25},
                           SrhRate{1.0, 2.0, 3.0}};
  CHECK(reaction_rate_factor(srh, 1.0, 1.0, 1.0) == doctest::Approx(1.0 / 6.0));
  CHECK(rate_floor(srh, 10.0) == doctest::Approx(1.0 / 51.0));
  const ModelFunctions srh_k1{LogEntropy{1.0}, PowerWeight{1.0, 0.25},
                              SrhRate{1.0, 0.0, 0.0}};
  CHECK(rate_floor(srh_k1, 24.0) == doctest::Approx(1.0));
}

TEST_CASE("validate_model rejects bad parameters") {
  CHECK_THROWS(validate_model(
      ModelFunctions{LogEntropy{-1.0}, PowerWeight{1.0, 0.25}, ConstantRate{1.0}}));
  CHECK_THROWS(validate_model(
      ModelFunctions{PowerEntropy{1.0, 1.5}, PowerWeight{1.0, 0.25}, ConstantRate{1.0}}));
  CHECK_THROWS(validate_model(
      ModelFunctions{LogEntropy{1.0}, PowerWeight{1.0, 0.34}, ConstantRate{1.0}}));
  CHECK_THROWS(validate_model(
      ModelFunctions{LogEntropy{1.0}, PowerWeight{1.0, 0.25}, ConstantRate{0.0}}));
  CHECK_THROWS(validate_model(
      ModelFunctions{LogEntropy{1.0}, PowerWeight{1.0, 0.25}, SrhRate{1.0, -1.0, 0.0}}));
}
