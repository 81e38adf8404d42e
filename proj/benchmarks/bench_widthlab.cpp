#include <benchmark/benchmark.h>

#include "widthlab/functionals.hpp"
#include "widthlab/verify.hpp"
#include "widthlab/width_addition.hpp"

namespace {

using namespace widthlab;

SupportBody square() {
  Eigen::VectorXd a(2), b(2), c(2), d(2);
  a << 1, 1;
  b << 1, -1;
  c << -1, 1;
  d << -1, -1;
  return SupportBody::polytope({a, b, c, d});
}

void BM_SolveLambda(benchmark::State& state) {
  const auto phi = OrliczFunction::power(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        solve_lambda({{phi, 1.0, 1.3}, {phi, 1.0, 0.7}}));
  }
}
BENCHMARK(BM_SolveLambda);

void BM_WidthIntegralSquare(benchmark::State& state) {
  const auto rule = build_rule(2, static_cast<int>(state.range(0)));
  const auto k = WidthProfile::from_body(square());
  for (auto _ : state) {
    benchmark::DoNotOptimize(width_integral(k, 0, rule));
  }
}
BENCHMARK(BM_WidthIntegralSquare)->Arg(1024)->Arg(16384)->Arg(65536);

void BM_OrliczSumIntegral(benchmark::State& state) {
  const auto rule = build_rule(2, static_cast<int>(state.range(0)));
  const auto phi = OrliczFunction::power(2.0);
  const auto k = WidthProfile::from_body(square());
  const auto l = WidthProfile::from_body(SupportBody::unit_ball(2));
  for (auto _ : state) {
    const auto sum = orlicz_width_sum(OrliczFunctionM::sum({phi, phi}), {k, l});
    benchmark::DoNotOptimize(width_integral(sum, 0, rule));
  }
}
BENCHMARK(BM_OrliczSumIntegral)->Arg(512)->Arg(4096);

void BM_CampaignTrialDim2(benchmark::State& state) {
  EnsembleConfig config;
  config.dim = 2;
  config.trials = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_campaign(config));
  }
}
BENCHMARK(BM_CampaignTrialDim2);

}  // namespace

BENCHMARK_MAIN();
