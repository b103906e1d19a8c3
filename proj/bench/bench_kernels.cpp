// Serial vs OpenMP direct transforms, the FFT path, and the permutation band.
//   ./bench_kernels --benchmark_filter=Dft
// Set EXSPEC_THREADS (or OMP_NUM_THREADS) to choose the OpenMP thread count.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "exspec/core.hpp"
#include "exspec/estimators.hpp"
#include "exspec/inference.hpp"
#include "exspec/kernels.hpp"
#include "exspec/simulate.hpp"

namespace {

using namespace exspec;

std::vector<double> random_indicators(std::size_t n) {
  std::mt19937_64 rng(n);
  std::bernoulli_distribution hit(0.02);
  std::vector<double> x(n);
  for (double& v : x) v = hit(rng) ? 0.98 : -0.02;
  return x;
}

std::vector<std::size_t> half_indices(std::size_t n) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 1; 2 * j < n; ++j) idx.push_back(j);
  return idx;
}

void DftFourier(benchmark::State& state, kernels::Backend backend) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_indicators(n);
  const auto idx = half_indices(n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::dft_fourier(x, idx, backend));
  state.SetComplexityN(state.range(0));
}

void DftArbitrary(benchmark::State& state, kernels::Backend backend) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_indicators(n);
  std::vector<double> freqs(512);
  for (std::size_t k = 0; k < freqs.size(); ++k) freqs[k] = kPi * (static_cast<double>(k) + 0.5) / 512.0;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::dft_at(x, freqs, backend));
}

void LaggedProducts(benchmark::State& state, kernels::Backend backend) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_indicators(n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::lagged_products(x, 200, backend));
}

void PowerSpectrumFft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_indicators(n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::power_spectrum_fft(x));
  state.SetComplexityN(state.range(0));
}

void PermutationBand(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TimeSeries x = sample_noise(NoiseSpec{StudentT{3.0}}, n, 7);
  const auto window = daniell_window(50);
  const FrequencyGrid grid = smoothable_fourier_grid(n, 50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(permutation_band(x, EstimatorConfig{}, TailSet::upper(), window, grid, 99, 1, 0.05));
  }
}

}  // namespace

BENCHMARK_CAPTURE(DftFourier, serial, kernels::Backend::Serial)->RangeMultiplier(4)->Range(1 << 8, 1 << 12);
BENCHMARK_CAPTURE(DftFourier, openmp, kernels::Backend::OpenMP)->RangeMultiplier(4)->Range(1 << 8, 1 << 12);
BENCHMARK_CAPTURE(DftArbitrary, serial, kernels::Backend::Serial)->Arg(1 << 14);
BENCHMARK_CAPTURE(DftArbitrary, openmp, kernels::Backend::OpenMP)->Arg(1 << 14);
BENCHMARK_CAPTURE(LaggedProducts, serial, kernels::Backend::Serial)->Arg(1 << 15);
BENCHMARK_CAPTURE(LaggedProducts, openmp, kernels::Backend::OpenMP)->Arg(1 << 15);
BENCHMARK(PowerSpectrumFft)->RangeMultiplier(4)->Range(1 << 8, 1 << 16);
BENCHMARK(PermutationBand)->Arg(1 << 15)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
