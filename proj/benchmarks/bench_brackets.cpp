#include <benchmark/benchmark.h>

#include "coulomb/partial_waves.hpp"
#include "coulomb/representations.hpp"
#include "coulomb/special_functions.hpp"

namespace {

using coulomb::Representation;

constexpr double kOmega = 1.7;

void BM_Bracket(benchmark::State& state, Representation rep, double gamma) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(coulomb::evaluate_bracket(rep, gamma, kOmega));
  }
}

BENCHMARK_CAPTURE(BM_Bracket, series_g1, Representation::series, 1.0);
BENCHMARK_CAPTURE(BM_Bracket, series_g0_37, Representation::series, 0.37);
BENCHMARK_CAPTURE(BM_Bracket, integral_g1, Representation::integral, 1.0);
BENCHMARK_CAPTURE(BM_Bracket, separated_g1, Representation::separated, 1.0);
BENCHMARK_CAPTURE(BM_Bracket, separated_g2_5, Representation::separated, 2.5);
BENCHMARK_CAPTURE(BM_Bracket, closed_g3, Representation::closed, 3.0);
BENCHMARK_CAPTURE(BM_Bracket, generalized_integral, Representation::generalized_integral, -1.0);
BENCHMARK_CAPTURE(BM_Bracket, generalized_closed, Representation::generalized_closed, -1.0);

void BM_Clausen(benchmark::State& state) {
  double theta = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(coulomb::clausen_cl2(theta));
    theta = theta < 3.0 ? theta + 0.01 : 0.1;
  }
}
BENCHMARK(BM_Clausen);

void BM_PartialWave(benchmark::State& state, Representation rep) {
  const auto ctx = coulomb::make_context({1.0, 1.0}, 1);
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(coulomb::project_partial_wave({l, 2.0, 1.0, ctx, rep, {}}));
  }
}

BENCHMARK_CAPTURE(BM_PartialWave, closed, Representation::closed)->Arg(0)->Arg(4)->Arg(16);
BENCHMARK_CAPTURE(BM_PartialWave, series, Representation::series)->Arg(0)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
