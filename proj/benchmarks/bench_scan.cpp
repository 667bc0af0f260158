#include <benchmark/benchmark.h>

#include "angb/signals.hpp"
#include "angb/stft.hpp"
#include "angb/wavefront.hpp"

static void BM_estimate_wf(benchmark::State& state) {
  angb::Grid g(1, static_cast<int>(state.range(0)), 16.0);
  angb::Signal u = angb::make_poly_chirp(g, 1.0, 2, 6.0, 9.0);
  angb::Window w = angb::gaussian_window(g);
  angb::ScanConfig scan;
  scan.n_dirs = 360;
  for (auto _ : state) {
    auto ds = angb::estimate_wf(u, w, 1.0, scan);
    benchmark::DoNotOptimize(ds.entries.data());
  }
}
BENCHMARK(BM_estimate_wf)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
