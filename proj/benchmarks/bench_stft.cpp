#include <benchmark/benchmark.h>

#include "angb/signals.hpp"
#include "angb/stft.hpp"

static void BM_stft_slice(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  angb::Grid g(1, n, 12.0);
  angb::Signal u = angb::make_poly_chirp(g, 1.0, 2, 4.0, 6.0);
  angb::Window w = angb::gaussian_window(g);
  std::vector<angb::cdouble> out(n);
  for (auto _ : state) {
    angb::stft_slice(u, w, n / 2, out.data());
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_stft_slice)->Arg(1024)->Arg(4096)->Arg(16384);

static void BM_stft_dense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  angb::Grid g(1, n, 12.0);
  angb::Signal u = angb::make_gaussian(g);
  angb::Window w = angb::gaussian_window(g);
  for (auto _ : state) {
    auto f = angb::stft(u, w);
    benchmark::DoNotOptimize(f.values.data());
  }
}
BENCHMARK(BM_stft_dense)->Arg(256)->Arg(1024);
