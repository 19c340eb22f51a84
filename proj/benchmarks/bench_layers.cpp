// One SGD step (forward, backward, update) of each preset on a batch of 32
// rows of width d.

#include <benchmark/benchmark.h>

#include <vector>

#include "iplab/nn/model.hpp"
#include "iplab/numerics/ops.hpp"

using namespace iplab;

namespace {

void preset_step(benchmark::State& state, nn::Preset preset) {
  const auto d = static_cast<std::size_t>(state.range(0));
  numerics::SeededRng rng(9);
  nn::Model model(nn::make_preset(preset, static_cast<int>(d), nn::OutputHead::binary_sigmoid));
  model.initialize(rng, 0.05);
  const auto x = numerics::normal_init(rng, {32, d}, 1.0);
  std::vector<int> labels(32);
  for (auto& y : labels) y = static_cast<int>(rng.below(2));
  const auto targets = nn::make_targets(labels, nn::OutputHead::binary_sigmoid);
  auto grads = model.zero_gradients();
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.loss_and_gradients(x, targets, grads));
    model.apply_sgd(grads, 1e-3);
  }
  state.SetItemsProcessed(state.iterations() * 32);
}

void BM_StepFc(benchmark::State& s) { preset_step(s, nn::Preset::fc); }
void BM_StepCnn(benchmark::State& s) { preset_step(s, nn::Preset::cnn); }
void BM_StepFourier(benchmark::State& s) { preset_step(s, nn::Preset::fourier); }
void BM_StepWavelet(benchmark::State& s) { preset_step(s, nn::Preset::wavelet); }

BENCHMARK(BM_StepFc)->Arg(100)->Arg(784)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_StepCnn)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StepFourier)->Arg(100)->Arg(784)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_StepWavelet)->Arg(100)->Arg(784)->Unit(benchmark::kMicrosecond);

void BM_PredictFc(benchmark::State& state) {
  numerics::SeededRng rng(10);
  nn::Model model(nn::make_preset(nn::Preset::fc, 784, nn::OutputHead::softmax10));
  model.initialize(rng, 0.05);
  const auto x = numerics::normal_init(rng, {512, 784}, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(model.predict(x));
  state.SetItemsProcessed(state.iterations() * 512);
}
BENCHMARK(BM_PredictFc)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
