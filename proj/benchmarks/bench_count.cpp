#include <benchmark/benchmark.h>

#include "llab/counting.hpp"

using namespace llab;

static void BM_count_below(benchmark::State& state) {
  RealSpec a = RealSpec::sqrt_of(2);
  RealSpec b = RealSpec::sqrt_of(3);
  std::uint64_t big_n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    CountReport r = count_below(a, b, mpq_class(1, 10), big_n);
    benchmark::DoNotOptimize(r.count_strict);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(big_n));
}
BENCHMARK(BM_count_below)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

static void BM_running_min_trace(benchmark::State& state) {
  RealSpec a = RealSpec::sqrt_of(2);
  RealSpec b = RealSpec::sqrt_of(3);
  std::uint64_t big_n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    MinTrace t = running_min_trace(a, b, big_n, {big_n / 2, big_n});
    benchmark::DoNotOptimize(t.points.size());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(big_n));
}
BENCHMARK(BM_running_min_trace)->Arg(1 << 22)->Unit(benchmark::kMillisecond);
