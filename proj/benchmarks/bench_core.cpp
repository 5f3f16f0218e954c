#include <benchmark/benchmark.h>

#include "clevy/conv_process.hpp"
#include "clevy/eta.hpp"
#include "clevy/frac_ops.hpp"
#include "clevy/ito_verify.hpp"
#include "clevy/levy.hpp"

using namespace clevy;

namespace {

JumpMeasure atoms() { return JumpMeasure::from_atoms({{1.0, 2.0}, {-1.0, 0.5}}); }

}  // namespace

static void BM_SimulatePath(benchmark::State& state) {
  const JumpMeasure mu = atoms();
  const double len = static_cast<double>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_path(mu, {0.0, len}, {1, 2, i++, 0}));
  }
}
BENCHMARK(BM_SimulatePath)->Arg(1)->Arg(21);

static void BM_ConvDirect(benchmark::State& state) {
  const auto k = state.range(0) == 0 ? VolterraKernel::ornstein_uhlenbeck(0.5, 2.0)
                                     : VolterraKernel::fractional(0.25, 20.0);
  const JumpPath p = simulate_path(atoms(), {-20.0, 1.0}, {3, 4, 5, 0});
  for (auto _ : state) benchmark::DoNotOptimize(conv_value_direct(k, p, 1.0));
}
BENCHMARK(BM_ConvDirect)->Arg(0)->Arg(1);

static void BM_WickWeight(benchmark::State& state) {
  const JumpMeasure mu = atoms();
  const EtaTest e = EtaTest::builtin(0.5, 1.0, EtaFlavor::Odd);
  const WickWeight w(e, mu);
  const double r = e.time_support().hi;
  const JumpPath p = simulate_path(mu, {-r, r}, {6, 7, 8, 0});
  for (auto _ : state) benchmark::DoNotOptimize(w(p));
}
BENCHMARK(BM_WickWeight);

static void BM_FracIntMinus(benchmark::State& state) {
  const auto chi = SampledFunction::indicator(0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(frac_int_minus(chi, 0.25, -0.3));
}
BENCHMARK(BM_FracIntMinus);

static void BM_ItoEngineCharfn(benchmark::State& state) {
  const ItoEngine engine(VolterraKernel::fractional(0.25), atoms(),
                         EtaTest::builtin(0.5, 1.0, EtaFlavor::Even), GaussianG{1.0});
  for (auto _ : state) benchmark::DoNotOptimize(engine.charfn(1.0, 1.3));
}
BENCHMARK(BM_ItoEngineCharfn);

static void BM_ItoTerms(benchmark::State& state) {
  const auto k = state.range(0) == 0 ? VolterraKernel::ornstein_uhlenbeck(0.5, 2.0)
                                     : VolterraKernel::fractional(0.25);
  const ItoEngine engine(k, atoms(), EtaTest::builtin(0.5, 1.0, EtaFlavor::Even), GaussianG{1.0});
  for (auto _ : state) benchmark::DoNotOptimize(engine.terms(1.0));
}
BENCHMARK(BM_ItoTerms)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
