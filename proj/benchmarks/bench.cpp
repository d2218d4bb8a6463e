#include <benchmark/benchmark.h>

#include "lifshitz/entropy.hpp"
#include "lifshitz/oracle.hpp"

namespace {

using namespace lifshitz;

void BM_CorrelationMatrix(benchmark::State& state) {
  LatticeSpec spec;
  spec.n_sites = static_cast<int>(state.range(0));
  const auto sites = interval(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_correlation_matrix(spec, ThermalParams::at_beta(50.0), sites));
  }
}
BENCHMARK(BM_CorrelationMatrix)->Args({2000, 50})->Args({10000, 100})->Unit(benchmark::kMillisecond);

void BM_Entropy(benchmark::State& state) {
  LatticeSpec spec;
  spec.n_sites = static_cast<int>(state.range(0));
  spec.z = 3;
  const auto sites = interval(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(entropy_of(spec, ThermalParams::at_beta(50.0), sites).entropy);
  }
}
BENCHMARK(BM_Entropy)->Args({2000, 50})->Args({10000, 100})->Unit(benchmark::kMillisecond);

void BM_OracleState(benchmark::State& state) {
  LatticeSpec spec;
  spec.n_sites = static_cast<int>(state.range(0));
  spec.mass = 0.5;
  for (auto _ : state) {
    const FockState fock = many_body_state(spec, ThermalParams::at_beta(2.0));
    benchmark::DoNotOptimize(reduced_entropy(fock, interval(2)));
  }
}
BENCHMARK(BM_OracleState)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
