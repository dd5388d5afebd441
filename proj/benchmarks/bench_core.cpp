#include <benchmark/benchmark.h>

#include "eerd/constants.hpp"
#include "eerd/equilibrium.hpp"
#include "eerd/functionals.hpp"
#include "eerd/poisson.hpp"
#include "eerd/simulator.hpp"
#include "eerd/verifier.hpp"

namespace {

using namespace eerd;

ModelFunctions reference_model() {
  return {LogEntropy{1.0}, PowerWeight{1.0, 0.25}, ConstantRate{1.0}};
}

struct Fixture {
  ModelFunctions model = reference_model();
  Grid grid;
  Bounds bounds{0.5, 2.0};
  Equilibrium eq;
  State state;
  explicit Fixture(int n)
      : grid(1.0, n),
        eq(compute_equilibrium(1.0, 0.0, grid, model)),
        state(random_admissible_state(7, grid, model, bounds, eq, 0.2)) {}
};

void BM_PoissonSolve(benchmark::State& bs) {
  Fixture fx(static_cast<int>(bs.range(0)));
  for (auto _ : bs)
    benchmark::DoNotOptimize(solve_poisson(fx.grid, fx.state.n, fx.state.p));
}
BENCHMARK(BM_PoissonSolve)->Arg(128)->Arg(512);

void BM_DeriveFields(benchmark::State& bs) {
  Fixture fx(static_cast<int>(bs.range(0)));
  DerivedFields d;
  for (auto _ : bs) {
    derive_fields_into(d, fx.state, fx.model, fx.grid, false);
    benchmark::DoNotOptimize(d.theta.data());
  }
}
BENCHMARK(BM_DeriveFields)->Arg(128)->Arg(512);

void BM_EntropyProduction(benchmark::State& bs) {
  Fixture fx(static_cast<int>(bs.range(0)));
  const DerivedFields d = derive_fields(fx.state, fx.model, fx.grid);
  for (auto _ : bs)
    benchmark::DoNotOptimize(entropy_production(fx.state, d, fx.model, fx.grid));
}
BENCHMARK(BM_EntropyProduction)->Arg(128)->Arg(512);

void BM_SimulatorStep(benchmark::State& bs) {
  Fixture fx(static_cast<int>(bs.range(0)));
  const double dt = 0.2 * fx.grid.h() * fx.grid.h();
  for (auto _ : bs) {
    auto result = step(fx.state, dt, fx.model, fx.grid, fx.bounds, 1e-12);
    benchmark::DoNotOptimize(result.state.n.data());
  }
}
BENCHMARK(BM_SimulatorStep)->Arg(128)->Arg(512);

void BM_RelativeEntropy(benchmark::State& bs) {
  Fixture fx(static_cast<int>(bs.range(0)));
  const DerivedFields d = derive_fields(fx.state, fx.model, fx.grid);
  for (auto _ : bs)
    benchmark::DoNotOptimize(
        relative_entropy_terms(fx.state, d, fx.eq, fx.model, fx.grid).total());
}
BENCHMARK(BM_RelativeEntropy)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
