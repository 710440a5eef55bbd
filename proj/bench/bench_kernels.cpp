// Serial reference vs OpenMP paths of the batch kernels and the leaf census.
#include "qpc/kernels.hpp"
#include "qpc/sampling.hpp"
#include "qpc/tracer.hpp"

#include <benchmark/benchmark.h>

using namespace qpc;

namespace {

QuadricSpec q0_spec() {
  const double sq[] = {4, 3, 2, 1};
  return QuadricSpec::from_squares(Family::Q0, sq);
}

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_principal_data(benchmark::State& st) {
  const QuadricSpec s = q0_spec();
  const auto pts = sample_surface_box(s, static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(batch_principal_data(s, pts, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_dual_oracle(benchmark::State& st) {
  const QuadricSpec s = q0_spec();
  const auto cs = sample_chart(s, static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(dual_oracle_error(s, cs, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_roundtrip(benchmark::State& st) {
  const QuadricSpec s = q0_spec();
  const auto cs = sample_chart(s, static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(roundtrip_error(s, cs, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * st.range(0) * 16);
}

void BM_census(benchmark::State& st) {
  const QuadricSpec s = q0_spec();
  const auto seeds = census_seeds(s, static_cast<int>(st.range(0)), 42);
  const TraceConfig cfg = TraceConfig::defaults(s, 1);
  for (auto _ : st) benchmark::DoNotOptimize(leaf_census(s, seeds, cfg, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_principal_data)->ArgsProduct({{4096, 65536}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dual_oracle)->ArgsProduct({{4096}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_roundtrip)->ArgsProduct({{1024}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_census)->ArgsProduct({{32}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
