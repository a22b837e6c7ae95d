#include <benchmark/benchmark.h>

#include <cmath>

#include "reldecay/amplitudes.hpp"
#include "reldecay/analysis.hpp"
#include "reldecay/quadrature.hpp"
#include "reldecay/special.hpp"

using namespace reldecay;

namespace {

MassDistribution threshold_bw() { return normalize(MassDistribution::breit_wigner(1.0, 1e-3, 0.0)); }

void BM_FilonPlanBuild(benchmark::State& state) {
  const auto d = threshold_bw();
  const auto f = to_energy_representation(d, static_cast<double>(state.range(0)) / 10.0);
  for (auto _ : state) {
    FilonPlan plan(f);
    benchmark::DoNotOptimize(plan.panel_count());
  }
}
BENCHMARK(BM_FilonPlanBuild)->Arg(0)->Arg(17)->Unit(benchmark::kMicrosecond);

void BM_FilonEvaluate(benchmark::State& state) {
  const auto d = threshold_bw();
  const FilonPlan plan(to_energy_representation(d, 1.7320508075688772));
  const double t = static_cast<double>(state.range(0)) * d.lifetime();
  for (auto _ : state) benchmark::DoNotOptimize(plan.evaluate(t).value);
  state.counters["panels"] = static_cast<double>(plan.panel_count());
}
BENCHMARK(BM_FilonEvaluate)->Arg(1)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Oracle(benchmark::State& state) {
  const auto d = normalize(MassDistribution::breit_wigner(1.0, 0.1, 0.0));
  const auto f = to_energy_representation(d, 1.0, 1e-3);
  const double t = 5.0 * d.lifetime();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fourier_transform_oracle(f, t, n).value);
  state.SetItemsProcessed(static_cast<long long>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Oracle)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_RestSeries(benchmark::State& state) {
  const auto d = threshold_bw();
  const auto grid = TimeGrid::log(d.lifetime(), 0.01, 1000.0, 400, true);
  EvaluationOptions opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(survival_rest(d, grid, opt).probabilities.back());
}
BENCHMARK(BM_RestSeries)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_VelocityFrame(benchmark::State& state) {
  const auto d = normalize(MassDistribution::breit_wigner(1.0, 1e-4, 0.0));
  const auto grid = TimeGrid::linear(d.lifetime(), 5.0, 21);
  const auto model = static_cast<PhaseModel>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        survival_velocity_frame(d, {0.0, 1e-2}, 0.6, XRule::comoving(), model, grid).probabilities.back());
  }
}
BENCHMARK(BM_VelocityFrame)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_GaussHermite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(special::gauss_hermite(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_GaussHermite)->Arg(64)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_ConsistencyScan(benchmark::State& state) {
  std::vector<double> m, p, v;
  for (int i = 0; i < 20; ++i) {
    m.push_back(0.1 + 0.2 * i);
    p.push_back(-2.0 + 0.2 * i);
    v.push_back(0.05 * i);
  }
  for (auto _ : state) benchmark::DoNotOptimize(consistency_scan(m, p, v).front().r_identity);
}
BENCHMARK(BM_ConsistencyScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
