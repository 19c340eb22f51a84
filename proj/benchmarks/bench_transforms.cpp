#include <benchmark/benchmark.h>

#include "iplab/numerics/ops.hpp"
#include "iplab/transforms/convolution.hpp"
#include "iplab/transforms/fft.hpp"
#include "iplab/transforms/wavelet.hpp"

using namespace iplab;

namespace {

numerics::Tensor signal(std::size_t n, std::uint64_t seed) {
  numerics::SeededRng rng(seed);
  return numerics::normal_init(rng, {n}, 1.0);
}

void BM_DirectConvolution(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = signal(n, 1), h = signal(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(transforms::direct_convolution(x, h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DirectConvolution)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

void BM_FftConvolution(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = signal(n, 1), h = signal(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(transforms::fft_convolution(x, h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FftConvolution)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

// Non-power-of-two lengths take the direct DFT path.
void BM_Dft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const numerics::ComplexTensor x(signal(n, 3), numerics::Tensor({n}));
  for (auto _ : state) benchmark::DoNotOptimize(transforms::dft(x, transforms::Direction::forward));
}
BENCHMARK(BM_Dft)->Arg(100)->Arg(128)->Arg(784)->Arg(1024);

void BM_Daubechies4Rows(benchmark::State& state) {
  numerics::SeededRng rng(4);
  const auto x = numerics::normal_init(rng, {32, static_cast<std::size_t>(state.range(0))}, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(transforms::dwt_rows(x));
}
BENCHMARK(BM_Daubechies4Rows)->Arg(100)->Arg(784);

void BM_MorletCwt(benchmark::State& state) {
  const auto x = signal(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(transforms::morlet_cwt(x, {}));
}
BENCHMARK(BM_MorletCwt)->Arg(100)->Arg(784);

}  // namespace

BENCHMARK_MAIN();
