#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "maxstab/bootstrap.hpp"
#include "maxstab/fisher_info.hpp"
#include "maxstab/simulation.hpp"
#include "maxstab/stability_test.hpp"

using namespace maxstab;

namespace {

std::vector<double> draws(int n, const GevParams& p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& v : x) v = gev_sample(p, rng);
  return x;
}

FitOptions no_hessian() {
  FitOptions o;
  o.check_hessian = false;
  return o;
}

void BM_GevLogpdf(benchmark::State& state) {
  const auto x = draws(1024, {0, 1, 0.1}, 1);
  const GevParams p{0.05, 1.1, 0.12};
  for (auto _ : state) {
    double s = 0.0;
    for (double v : x) s += gev_logpdf(v, p);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}
BENCHMARK(BM_GevLogpdf);

void BM_CiLengthRatio(benchmark::State& state) {
  double xi = -0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ci_length_ratio(TargetReturnLevel{20.0}, xi, 12.0));
    xi = xi > 0.3 ? -0.3 : xi + 0.01;
  }
}
BENCHMARK(BM_CiLengthRatio);

void BM_LoglikJoint(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const GevParams p{0, 1, 0.1};
  const BlockFrame f(draws(100 * m, p, 2), m);
  const GevParams pm = max_stability_map(p, {static_cast<double>(m)});
  for (auto _ : state) benchmark::DoNotOptimize(loglik_joint(f, p, pm));
}
BENCHMARK(BM_LoglikJoint)->Arg(2)->Arg(10);

void BM_LoglikRoundedCensored(benchmark::State& state) {
  const GevParams p{0, 1, 0.1};
  auto x = draws(400, p, 3);
  for (double& v : x) v = std::round(v * 10.0) / 10.0;
  const BlockFrame f(x, 4, {0.1, -0.5});
  const GevParams pm = max_stability_map(p, {4.0});
  for (auto _ : state) benchmark::DoNotOptimize(loglik_censored_rounded(f, p, pm));
}
BENCHMARK(BM_LoglikRoundedCensored);

void BM_FitGev(benchmark::State& state) {
  const auto x = draws(static_cast<int>(state.range(0)), {0, 1, 0.1}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(fit_gev(x, {}, std::nullopt, no_hessian()));
}
BENCHMARK(BM_FitGev)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_LrTest(benchmark::State& state) {
  const BlockFrame f(draws(200, {0, 1, 0.1}, 5), 2);
  TestOptions o;
  o.fit = no_hessian();
  const auto kind = static_cast<AltKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lr_test(f, kind, o));
}
BENCHMARK(BM_LrTest)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_AlphaB(benchmark::State& state) {
  auto v = draws(100, {0, 1, 0}, 6);
  for (double& x : v) x = gev_cdf(x, {0, 1, 0});
  std::sort(v.begin(), v.end());
  const auto pos = default_positions(100);
  for (auto _ : state) benchmark::DoNotOptimize(alpha_b(v, pos));
}
BENCHMARK(BM_AlphaB);

void BM_ParametricBand(benchmark::State& state) {
  const auto x = draws(100, {0, 1, 0.1}, 7);
  const FitResult fit = fit_gev(x);
  BandOptions o;
  o.B = 100;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(parametric_band(x, {}, fit, o));
}
BENCHMARK(BM_ParametricBand)->Unit(benchmark::kMillisecond);

void BM_PowerCell(benchmark::State& state) {
  ScenarioSpec s;
  s.n = 50;
  s.m = 5;
  StudyOptions o;
  o.reps = 100;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(power_cell(s, {AltKind::A1, AltKind::A3}, o));
}
BENCHMARK(BM_PowerCell)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
