#include "thetakit/scans.hpp"

#include <benchmark/benchmark.h>

using namespace thetakit;

namespace {

const Context<Real>& ctx() {
  static const auto c = make_context(Real(0.5));
  return c;
}

Execution exec_of(const benchmark::State& s) { return s.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_ThetaJet(benchmark::State& state) {
  const auto mp = nome_from_time(Real(0.5));
  for (auto _ : state) benchmark::DoNotOptimize(theta_jet(ThetaIndex::Two, Real(0.3), mp, 4));
}
BENCHMARK(BM_ThetaJet);

void BM_MapGridF2(benchmark::State& state) {
  const auto xs = linspace(1e-3, 0.5 - 1e-3, 256);
  for (auto _ : state) {
    auto v = map_grid<double>(
        xs.size(), [&](std::size_t i) { return to_double(F2(Real(xs[i]), ctx())); }, exec_of(state));
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_MapGridF2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SignScanG3(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(sign_scan_x<Real>("G3", "G3 < 0", ctx(), ClaimedSign::Negative, 0, 0.5, 512, 1e-3,
                                               exec_of(state)));
}
BENCHMARK(BM_SignScanG3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CmScan(benchmark::State& state) {
  const auto grid = logspace(0.05, 5, 50);
  for (auto _ : state)
    benchmark::DoNotOptimize(cm_scan<Real>(QuotientSpec{ThetaIndex::Three, 0.2, 0.8}, grid, 6, exec_of(state)));
}
BENCHMARK(BM_CmScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
