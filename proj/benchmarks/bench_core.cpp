#include <benchmark/benchmark.h>

#include "collfree/evolution.hpp"
#include "collfree/falsifier.hpp"
#include "collfree/geometry.hpp"
#include "collfree/lattice_flow.hpp"

using namespace collfree;

static void BM_ClosestApproach(benchmark::State& state) {
  Particle a{{0.25, -1.5}, {0.75, 0.5}}, b{{3.0, 2.0}, {-0.5, 0.125}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(closest_approach(a, b));
    a.position.x1 += 1e-9;
  }
}
BENCHMARK(BM_ClosestApproach);

static void BM_VerifyHardcore(benchmark::State& state) {
  const auto cfg = build_flow(MonotoneProfile::arctan(), Window::square(state.range(0)), 1.0).configuration();
  for (auto _ : state) benchmark::DoNotOptimize(verify_hardcore(cfg, 1.0, 1));
  const auto n = static_cast<std::int64_t>(cfg.particles.size());
  state.SetItemsProcessed(state.iterations() * n * (n - 1) / 2);
}
BENCHMARK(BM_VerifyHardcore)->Arg(5)->Arg(25)->Unit(benchmark::kMillisecond);

static void BM_VerifyFlowSampled(benchmark::State& state) {
  const auto flow = build_flow(MonotoneProfile::arctan(), Window::square(50), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_flow(flow, 1'000'000, {kDefaultSeed, 1, 0}));
}
BENCHMARK(BM_VerifyFlowSampled)->Unit(benchmark::kMillisecond);

static void BM_FalsifyRadial(benchmark::State& state) {
  const auto field = CandidateField::saturated_radial(1.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(falsify(field, 0.05, 1'000'000, {kDefaultSeed, 1, 1024.0}));
}
BENCHMARK(BM_FalsifyRadial)->Arg(1)->Arg(64);

BENCHMARK_MAIN();
