#include <benchmark/benchmark.h>

#include <random>

#include "angb/geometry.hpp"

static void BM_lambda_s(benchmark::State& state) {
  const double s = state.range(0) / 4.0;
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  std::vector<angb::PhasePoint> pts;
  for (int i = 0; i < 1024; ++i) pts.emplace_back(std::vector{u(rng)}, std::vector{u(rng)});
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(angb::lambda_s(pts[i % pts.size()], angb::AnisotropyParam(s)));
    ++i;
  }
}
BENCHMARK(BM_lambda_s)->Arg(2)->Arg(4)->Arg(8);

static void BM_project_s(benchmark::State& state) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  std::vector<angb::PhasePoint> pts;
  for (int i = 0; i < 1024; ++i) pts.emplace_back(std::vector{u(rng)}, std::vector{u(rng)});
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(angb::project_s(pts[i % pts.size()], angb::AnisotropyParam(0.5)));
    ++i;
  }
}
BENCHMARK(BM_project_s);
