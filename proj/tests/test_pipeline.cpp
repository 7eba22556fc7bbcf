// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "reference_impl.hpp"
#include "dynatok/errors.hpp"
#include "dynatok/ops.hpp"
#include "dynatok/pipeline.hpp"
#include "dynatok/video_tokens.hpp"

using namespace dynatok;

namespace {

double unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

VideoTokens random_video(std::mt19937_64& gen, std::size_t t, std::size_t n, std::size_t d) {
  std::vector<double> data(t * n * d);
  for (double& v : data) v = 2.0 * unit(gen) - 1.0;
  return VideoTokens(t, n, d, std::move(data));
}

std::int64_t retained(const CompressionResult& result) {
  std::int64_t count = 0;
  for (const auto& mask : result.masks) count += mask.selected_count;
  return count;
}

// Uniform per-frame activation top-k: the no-TBA no-SBA baseline.
std::vector<std::vector<std::uint8_t>> uniform_topk(const VideoTokens& video, double ratio) {
  auto budget = static_cast<std::int64_t>(
      std::llround(static_cast<double>(video.tokens_per_frame()) * ratio));
  if (budget == 0) budget = 1;
  std::vector<std::vector<std::uint8_t>> masks;
  for (std::size_t t = 0; t < video.frames(); ++t) {
    std::vector<double> raw(video.tokens_per_frame(), 0.0);
    for (std::size_t n = 0; n < raw.size(); ++n) {
      for (double v : video.token(t, n)) raw[n] += std::abs(v);
    }
    const auto act = minmax_normalize(raw);
    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (act[a] != act[b]) return act[a] > act[b];
      return a < b;
    });
    std::vector<std::uint8_t> mask(raw.size(), 0);
    for (std::int64_t i = 0; i < budget; ++i) mask[order[static_cast<std::size_t>(i)]] = 1;
    masks.push_back(std::move(mask));
  }
  return masks;
}

}  // namespace

TEST_CASE("full retention is lossless") {
  std::mt19937_64 gen(51);
  const VideoTokens video = random_video(gen, 3, 20, 5);
  CompressionConfig cfg;
  cfg.retention_ratio = 1.0;
  const CompressionResult result = compress_batch(video, cfg);
  CHECK(retained(result) == 60);
  for (const auto& mask : result.masks) {
    CHECK(mask.selected_count == 20);
    for (auto bit : mask.mask) CHECK(bit == 1);
  }
  CHECK(result.compressed == video.data());
}

TEST_CASE("retained count equals the rounded clip budget") {
  std::mt19937_64 gen(52);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t t = 1 + gen() % 12;
    const std::size_t n = 14 + gen() % 50;
    const std::size_t d = 4 + gen() % 12;
    const double ratio = std::max(1e-3, unit(gen));
    const VideoTokens video = random_video(gen, t, n, d);
    CompressionConfig cfg;
    cfg.retention_ratio = ratio;
    const CompressionResult result = compress_batch(video, cfg);
    const auto expected = static_cast<std::int64_t>(
        std::llround(static_cast<double>(t) * static_cast<double>(n) * ratio));
    CHECK(retained(result) == expected);
    CHECK(result.budgets.total == expected);
    CHECK(static_cast<std::int64_t>(result.provenance.size()) == expected);
  }
}

TEST_CASE("masks agree with the straight-line reference") {
  std::mt19937_64 gen(53);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t t = 1 + gen() % 4;
    const VideoTokens video = random_video(gen, t, 28, 8);
    CompressionConfig cfg;
    cfg.retention_ratio = 0.25;
    const CompressionResult result = compress_batch(video, cfg);

    refimpl::Params params;
    params.retention = 0.25;
    const auto expected = refimpl::reference_masks(video.data(), t, 28, 8, params);
    REQUIRE(result.masks.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(result.masks[i].mask == expected[i]);
    }
  }
}

TEST_CASE("double ablation is uniform per-frame activation top-k") {
  std::mt19937_64 gen(54);
  for (int rep = 0; rep < 10; ++rep) {
    const VideoTokens video = random_video(gen, 4, 30, 6);
    CompressionConfig cfg;
    cfg.retention_ratio = 0.3;
    cfg.enable_tba = false;
    cfg.enable_sba = false;
    const CompressionResult result = compress_batch(video, cfg);
    const auto expected = uniform_topk(video, 0.3);
    for (std::size_t t = 0; t < 4; ++t) CHECK(result.masks[t].mask == expected[t]);
  }
}

TEST_CASE("budgets react to frame order") {
  std::mt19937_64 gen(55);
  const VideoTokens base = random_video(gen, 1, 16, 4);
  const VideoTokens other = random_video(gen, 1, 16, 4);
  std::vector<double> early, late;
  for (int i = 0; i < 4; ++i) {
    const auto& src = (i == 1) ? other : base;
    early.insert(early.end(), src.data().begin(), src.data().end());
  }
  for (int i = 0; i < 4; ++i) {
    const auto& src = (i == 3) ? other : base;
    late.insert(late.end(), src.data().begin(), src.data().end());
  }
  CompressionConfig cfg;
  cfg.retention_ratio = 0.25;
  const auto a = compress_batch(VideoTokens(4, 16, 4, std::move(early)), cfg);
  const auto b = compress_batch(VideoTokens(4, 16, 4, std::move(late)), cfg);
  CHECK(a.budgets.budgets != b.budgets.budgets);
}

TEST_CASE("compression is deterministic") {
  std::mt19937_64 gen(56);
  const VideoTokens video = random_video(gen, 5, 28, 6);
  CompressionConfig cfg;
  cfg.retention_ratio = 0.2;
  const CompressionResult a = compress_batch(video, cfg);
  const CompressionResult b = compress_batch(video, cfg);
  CHECK(a.compressed == b.compressed);
  CHECK(a.profile.deltas == b.profile.deltas);
  CHECK(a.budgets.budgets == b.budgets.budgets);
  for (std::size_t t = 0; t < 5; ++t) CHECK(a.masks[t].mask == b.masks[t].mask);
}

TEST_CASE("provenance rows point back into the video") {
  std::mt19937_64 gen(57);
  const VideoTokens video = random_video(gen, 4, 20, 3);
  CompressionConfig cfg;
  cfg.retention_ratio = 0.35;
  const CompressionResult result = compress_batch(video, cfg);
  REQUIRE(result.dim == 3);
  std::size_t last_frame = 0;
  std::size_t last_pos = 0;
  for (std::size_t i = 0; i < result.provenance.size(); ++i) {
    const TokenRef ref = result.provenance[i];
    if (i > 0) {
      const bool advances = ref.frame > last_frame ||
                            (ref.frame == last_frame && ref.position > last_pos);
      CHECK(advances);
    }
    const auto src = video.token(ref.frame, ref.position);
    for (std::size_t d = 0; d < 3; ++d) CHECK(result.compressed[i * 3 + d] == src[d]);
    last_frame = ref.frame;
    last_pos = ref.position;
  }
}

TEST_CASE("reconstruct zero-fills everything outside the mask") {
  std::mt19937_64 gen(58);
  const VideoTokens video = random_video(gen, 3, 15, 4);
  CompressionConfig cfg;
  cfg.retention_ratio = 0.4;
  const CompressionResult result = compress_batch(video, cfg);
  const VideoTokens rebuilt = reconstruct(result, video);
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t n = 0; n < 15; ++n) {
      for (std::size_t d = 0; d < 4; ++d) {
        if (result.masks[t].mask[n]) {
          CHECK(rebuilt.at(t, n, d) == video.at(t, n, d));
        } else {
          CHECK(rebuilt.at(t, n, d) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("reconstruct at full retention returns the input") {
  std::mt19937_64 gen(59);
  const VideoTokens video = random_video(gen, 2, 10, 3);
  CompressionConfig cfg;
  cfg.retention_ratio = 1.0;
  const CompressionResult result = compress_batch(video, cfg);
  CHECK(reconstruct(result, video).data() == video.data());
  const VideoTokens other = random_video(gen, 3, 10, 3);
  CHECK_THROWS_AS(reconstruct(result, other), DimensionError);
}

TEST_CASE("config validation covers every field") {
  CompressionConfig cfg;
  cfg.retention_ratio = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = CompressionConfig{};
  cfg.alpha = 1.2;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = CompressionConfig{};
  cfg.beta = -0.1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = CompressionConfig{};
  cfg.patch_size = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = CompressionConfig{};
  cfg.stream_window = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_NOTHROW(CompressionConfig{}.validate());
}

TEST_CASE("a constant stream falls back to the uniform budget") {
  const std::size_t n = 20, d = 4;
  const VideoTokens frame(1, n, d, std::vector<double>(n * d, 0.25));
  CompressionConfig cfg;
  cfg.retention_ratio = 0.25;
  StreamSession session(cfg);
  for (int t = 0; t < 6; ++t) {
    const StreamStep step = session.step(frame.frame(0));
    CHECK(step.frame_index == static_cast<std::size_t>(t));
    CHECK(step.delta == 0.0);
    CHECK(step.weight == 1.0);
    CHECK(step.budget == 5);
    CHECK(step.mask.selected_count == 5);
  }
  CHECK(session.frames_seen() == 6);
}

TEST_CASE("a window of one self-normalizes to the base budget") {
  std::mt19937_64 gen(61);
  const VideoTokens video = random_video(gen, 8, 20, 4);
  CompressionConfig cfg;
  cfg.retention_ratio = 0.25;
  cfg.stream_window = 1;
  StreamSession session(cfg);
  for (std::size_t t = 0; t < 8; ++t) {
    CHECK(session.step(video.frame(t)).budget == 5);
  }
}

TEST_CASE("streaming retention tracks the configured ratio") {
  std::mt19937_64 gen(62);
  const VideoTokens video = random_video(gen, 256, 24, 4);
  CompressionConfig cfg;
  cfg.retention_ratio = 0.25;
  StreamSession session(cfg);
  std::int64_t total = 0;
  for (std::size_t t = 0; t < 256; ++t) total += session.step(video.frame(t)).budget;
  const double empirical = static_cast<double>(total) / (256.0 * 24.0);
  CHECK(std::abs(empirical - 0.25) / 0.25 <= 0.1);
}

TEST_CASE("alternating frames keep streaming retention near the target") {
  std::mt19937_64 gen(63);
  const VideoTokens a = random_video(gen, 1, 20, 4);
  const VideoTokens b = random_video(gen, 1, 20, 4);
  CompressionConfig cfg;
  cfg.retention_ratio = 0.25;
  StreamSession session(cfg);
  std::int64_t total = 0;
  for (int t = 0; t < 64; ++t) {
    total += session.step((t % 2 == 0 ? a : b).frame(0)).budget;
  }
  const double empirical = static_cast<double>(total) / (64.0 * 20.0);
  CHECK(std::abs(empirical - 0.25) / 0.25 <= 0.1);
}

TEST_CASE("mid-stream shape changes are rejected") {
  std::mt19937_64 gen(64);
  const VideoTokens first = random_video(gen, 1, 12, 4);
  const VideoTokens narrower = random_video(gen, 1, 10, 4);
  const VideoTokens shallower = random_video(gen, 1, 12, 3);
  StreamSession session(CompressionConfig{});
  session.step(first.frame(0));
  CHECK_THROWS_AS(session.step(narrower.frame(0)), SessionError);
  CHECK_THROWS_AS(session.step(shallower.frame(0)), SessionError);
}

TEST_CASE("streaming with TBA disabled pins every budget to the base") {
  std::mt19937_64 gen(65);
  const VideoTokens video = random_video(gen, 10, 20, 4);
  CompressionConfig cfg;
  cfg.retention_ratio = 0.25;
  cfg.enable_tba = false;
  StreamSession session(cfg);
  for (std::size_t t = 0; t < 10; ++t) {
    CHECK(session.step(video.frame(t)).budget == 5);
  }
}
