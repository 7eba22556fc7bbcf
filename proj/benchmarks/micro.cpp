// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "dynatok/apportion.hpp"
#include "dynatok/pipeline.hpp"
#include "dynatok/spatial.hpp"
#include "dynatok/synth.hpp"

namespace {

dynatok::VideoTokens make_clip(std::size_t frames, std::size_t tokens, std::size_t dim) {
  dynatok::SynthSpec spec;
  spec.frames = frames;
  spec.tokens_per_frame = tokens;
  spec.dim = dim;
  spec.redundancy_schedule.assign(frames, 0.7);
  spec.seed = 7;
  return dynatok::synth_video(spec);
}

void BM_CompressBatch(benchmark::State& state) {
  const auto video = make_clip(static_cast<std::size_t>(state.range(0)), 196, 32);
  dynatok::CompressionConfig cfg;
  cfg.retention_ratio = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dynatok::compress_batch(video, cfg));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_CompressBatch)->Arg(8)->Arg(32)->Arg(64);

void BM_ActivationMap(benchmark::State& state) {
  const auto video = make_clip(1, static_cast<std::size_t>(state.range(0)), 64);
  const auto frame = video.frame(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dynatok::activation_map(frame));
  }
}
BENCHMARK(BM_ActivationMap)->Arg(196)->Arg(576);

void BM_Apportion(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<double> quotas(n);
  std::vector<std::int64_t> lower(n, 0);
  std::vector<std::int64_t> upper(n, 100);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    quotas[i] = 0.37 * static_cast<double>((i * 2654435761u) % 97);
    total += static_cast<std::int64_t>(quotas[i]) / 2;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(dynatok::bounded_largest_remainder(quotas, total, lower, upper));
  }
}
BENCHMARK(BM_Apportion)->Arg(64)->Arg(576);

}  // namespace

BENCHMARK_MAIN();
