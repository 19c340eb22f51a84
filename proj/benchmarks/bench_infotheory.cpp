#include <benchmark/benchmark.h>

#include <vector>

#include "iplab/infotheory/estimators.hpp"
#include "iplab/numerics/ops.hpp"

using namespace iplab;
namespace it = iplab::infotheory;

namespace {

it::ActivationSample sample(std::size_t n, std::size_t units) {
  numerics::SeededRng rng(11);
  std::vector<int> labels(n);
  for (auto& y : labels) y = static_cast<int>(rng.below(2));
  return {numerics::normal_init(rng, {n, units}, 1.0), std::move(labels)};
}

void BM_KtEntropyUpper(benchmark::State& state) {
  const auto acts = sample(static_cast<std::size_t>(state.range(0)), 128);
  for (auto _ : state) benchmark::DoNotOptimize(it::kt_entropy_upper(acts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KtEntropyUpper)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_KtLabelInformation(benchmark::State& state) {
  const auto acts = sample(512, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(it::kt_mutual_information_labels(acts));
}
BENCHMARK(BM_KtLabelInformation)->Arg(16)->Arg(128)->Arg(256);

void BM_BinnedMi(benchmark::State& state) {
  const auto acts = sample(512, static_cast<std::size_t>(state.range(0)));
  std::vector<it::Symbol> ids(acts.samples());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<it::Symbol>(i);
  for (auto _ : state) benchmark::DoNotOptimize(it::binned_mi(acts, ids));
}
BENCHMARK(BM_BinnedMi)->Arg(16)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
