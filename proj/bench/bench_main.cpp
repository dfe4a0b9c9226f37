// Parallel kernels against the serial reference implementations.
#include <benchmark/benchmark.h>

#include <cmath>

#include "taupsd/fourier.hpp"
#include "taupsd/kernel.hpp"
#include "taupsd/phase.hpp"
#include "taupsd/reference.hpp"
#include "taupsd/schatten.hpp"

using namespace taupsd;

namespace {

Grid grid_for(const benchmark::State& state) { return Grid(1, static_cast<int>(state.range(0)), 10.0); }

PhaseSymbol gauss_phase(const Grid& g) {
  return sample_phase(g, [](const Point& x, const Point& p) {
    return std::exp(-x.squaredNorm() / 2 - p.squaredNorm() / 2) * std::exp(cplx(0, x[0]));
  });
}

void BM_KernelAb(benchmark::State& state) {
  const Grid g = grid_for(state);
  const Symbol a = bracket_power_symbol(-3.0), b = gaussian_symbol(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_ab(a, b, scalar_endo(1, 0.5), g));
}

void BM_KernelAbReference(benchmark::State& state) {
  const Grid g = grid_for(state);
  const Symbol a = bracket_power_symbol(-3.0), b = gaussian_symbol(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(reference::kernel_ab(a, b, scalar_endo(1, 0.5), g));
}

void BM_Quantize(benchmark::State& state) {
  const PhaseSymbol a = gauss_phase(grid_for(state));
  for (auto _ : state) benchmark::DoNotOptimize(quantize(a, scalar_endo(1, 0.5)));
}

void BM_QuantizeReference(benchmark::State& state) {
  const PhaseSymbol a = gauss_phase(grid_for(state));
  for (auto _ : state) benchmark::DoNotOptimize(reference::quantize(a, scalar_endo(1, 0.5)));
}

GridFunction bump(const Grid& g) {
  return sample(g, Side::Space, [](const Point& x) { return cplx(std::exp(-x.squaredNorm()), x[0]); });
}

void BM_Fft(benchmark::State& state) {
  const GridFunction f = bump(grid_for(state));
  for (auto _ : state) benchmark::DoNotOptimize(forward_fft(f));
}

void BM_DirectDft(benchmark::State& state) {
  const GridFunction f = bump(grid_for(state));
  for (auto _ : state) benchmark::DoNotOptimize(reference::direct_forward(f));
}

KernelMatrix svd_input(const benchmark::State& state) {
  return quantize(gauss_phase(grid_for(state)), scalar_endo(1, 0.5));
}

void BM_Svd(benchmark::State& state) {
  const KernelMatrix k = svd_input(state);
  for (auto _ : state) benchmark::DoNotOptimize(schatten(k, {1.0, 2.0}));
}

void BM_SvdJacobi(benchmark::State& state) {
  const KernelMatrix k = svd_input(state);
  for (auto _ : state) benchmark::DoNotOptimize(reference::singular_values(k));
}

}  // namespace

BENCHMARK(BM_KernelAb)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelAbReference)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Quantize)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuantizeReference)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fft)->Arg(256)->Arg(1024);
BENCHMARK(BM_DirectDft)->Arg(256)->Arg(1024);
BENCHMARK(BM_Svd)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SvdJacobi)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
