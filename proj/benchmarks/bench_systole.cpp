#include <benchmark/benchmark.h>

#include "llab/lattice.hpp"

using namespace llab;

static void BM_systole(benchmark::State& state) {
  LatticeState base =
      tau_lattice(RealSpec::sqrt_of(2), RealSpec::sqrt_of(3));
  double s = 1.3, t = 2.1;
  for (auto _ : state) {
    LatticeState x = base.flowed(s, t);
    SystoleResult r = systole_at(x, 128);
    benchmark::DoNotOptimize(r.norm);
    s += 1e-4;  // avoid the cache; each iteration certifies a fresh point
  }
}
BENCHMARK(BM_systole)->Unit(benchmark::kMicrosecond);

static void BM_orbit_trace(benchmark::State& state) {
  LatticeState base =
      tau_lattice(RealSpec::sqrt_of(2), RealSpec::sqrt_of(3));
  for (auto _ : state) {
    auto tr = orbit_trace(base, 4.0, 0.25);
    benchmark::DoNotOptimize(tr.points.size());
  }
}
BENCHMARK(BM_orbit_trace)->Unit(benchmark::kMillisecond);
