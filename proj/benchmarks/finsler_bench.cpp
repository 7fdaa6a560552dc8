#include <benchmark/benchmark.h>

#include "finsler/connections.hpp"
#include "finsler/geometry.hpp"
#include "finsler/metrics.hpp"
#include "finsler/verify.hpp"

namespace {

using namespace finsler;

TangentPoint point(int n) {
  std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = 0.1 * (i + 1);
    y[static_cast<std::size_t>(i)] = 1.0 - 0.3 * i;
  }
  return TangentPoint(std::move(x), std::move(y));
}

// state.range(0) = dimension, state.range(1) = order
void BM_EvalJet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto E = builtin_metric("randers", {}, n).energy;
  const auto p = point(n);
  for (auto _ : state) benchmark::DoNotOptimize(eval_jet(E, p, static_cast<int>(state.range(1))));
}
BENCHMARK(BM_EvalJet)->ArgsProduct({{2, 3}, {2, 4, 5}})->Unit(benchmark::kMicrosecond);

void BM_GeometryJets(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto E = builtin_metric("randers", {}, n).energy;
  const auto p = point(n);
  for (auto _ : state) {
    GeometryJets jets(E, p, static_cast<int>(state.range(1)));
    benchmark::DoNotOptimize(jets.R);
  }
}
BENCHMARK(BM_GeometryJets)->ArgsProduct({{2, 3}, {4, 6}})->Unit(benchmark::kMillisecond);

void BM_Curvature(benchmark::State& state) {
  const auto kind = kAllConnections[static_cast<std::size_t>(state.range(0))];
  const auto E = builtin_metric("randers", {}, 3).energy;
  const auto p = point(3);
  for (auto _ : state) benchmark::DoNotOptimize(curvature(kind, E, p));
  state.SetLabel(to_string(kind));
}
BENCHMARK(BM_Curvature)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_Suite(benchmark::State& state) {
  const auto m = builtin_metric("randers", {}, static_cast<int>(state.range(0)));
  const auto points = sample_points(m, 4, 7);
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(m, points, 7));
  state.counters["points/s"] = benchmark::Counter(4.0 * static_cast<double>(state.iterations()),
                                                  benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Suite)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
