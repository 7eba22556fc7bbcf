// SPDX-License-Identifier: Apache-2.0
#include "dynatok/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "dynatok/errors.hpp"
#include "dynatok/ops.hpp"

namespace dynatok {

namespace detail {

PatchPartition make_partition(std::size_t tokens, const CompressionConfig& cfg) {
  return PatchPartition::build(tokens, cfg.enable_sba ? cfg.patch_size : tokens);
}

SelectionMask select_frame(const FrameView& frame, const PatchPartition& part,
                           SpatialMemory& memory, std::int64_t frame_budget,
                           const CompressionConfig& cfg) {
  const ActivationMap activation = activation_map(frame);
  const std::vector<double> scores = patch_scores(activation, part);
  std::vector<std::int64_t> capacities(part.patch_count);
  for (std::size_t i = 0; i < part.patch_count; ++i) {
    capacities[i] = static_cast<std::int64_t>(part.size(i));
  }
  const std::vector<std::int64_t> counts = patch_apportion(scores, frame_budget, capacities);

  std::vector<double> red;
  double beta = 0.0;
  if (cfg.enable_sba) {
    red = redundancy(frame, memory);
    beta = cfg.beta;
  } else {
    red.assign(frame.tokens(), 0.0);
  }
  const std::vector<double> ranked = token_scores(activation, red, beta);
  SelectionMask mask = select_topk_per_patch(ranked, part, counts);
  if (cfg.enable_sba) {
    memory_update(memory, frame, mask);
  }
  return mask;
}

}  // namespace detail

void CompressionConfig::validate() const {
  if (!(retention_ratio > 0.0 && retention_ratio <= 1.0)) {
    throw ConfigError("CompressionConfig: retention_ratio must lie in (0, 1]");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("CompressionConfig: alpha must lie in (0, 1]");
  }
  if (!(beta >= 0.0)) {
    throw ConfigError("CompressionConfig: beta must be non-negative");
  }
  if (patch_size == 0) {
    throw ConfigError("CompressionConfig: patch_size must be positive");
  }
  if (stream_window == 0) {
    throw ConfigError("CompressionConfig: stream_window must be positive");
  }
}

CompressionResult compress_batch(const VideoTokens& video, const CompressionConfig& cfg) {
  cfg.validate();
  const std::size_t t_count = video.frames();
  const std::size_t n_tokens = video.tokens_per_frame();

  CompressionResult result;
  result.dim = video.dim();
  result.profile = build_profile(clip_deltas(video, cfg.alpha));

  if (cfg.enable_tba) {
    result.budgets = apportion(result.profile, n_tokens, cfg.retention_ratio,
                               cfg.min_one_token_floor);
  } else {
    std::int64_t per_frame =
        std::llround(static_cast<double>(n_tokens) * cfg.retention_ratio);
    if (cfg.min_one_token_floor && per_frame == 0) {
      per_frame = 1;
    }
    result.budgets.budgets.assign(t_count, per_frame);
    result.budgets.retention_ratio = cfg.retention_ratio;
    result.budgets.total = per_frame * static_cast<std::int64_t>(t_count);
  }

  const PatchPartition part = detail::make_partition(n_tokens, cfg);
  SpatialMemory memory(n_tokens, video.dim(), cfg.alpha);

  result.masks.reserve(t_count);
  result.provenance.reserve(static_cast<std::size_t>(result.budgets.total));
  result.compressed.reserve(static_cast<std::size_t>(result.budgets.total) * video.dim());
  for (std::size_t t = 0; t < t_count; ++t) {
    const FrameView frame = video.frame(t);
    SelectionMask mask =
        detail::select_frame(frame, part, memory, result.budgets.budgets[t], cfg);
    for (std::size_t n : mask.indices()) {
      const auto tok = frame.token(n);
      result.compressed.insert(result.compressed.end(), tok.begin(), tok.end());
      result.provenance.push_back(TokenRef{t, n});
    }
    result.masks.push_back(std::move(mask));
  }
  return result;
}

VideoTokens reconstruct(const CompressionResult& result, const VideoTokens& video) {
  if (result.masks.size() != video.frames()) {
    throw DimensionError("reconstruct: mask count does not match frame count");
  }
  VideoTokens out =
      VideoTokens::zeros(video.frames(), video.tokens_per_frame(), video.dim());
  for (std::size_t t = 0; t < video.frames(); ++t) {
    const SelectionMask& mask = result.masks[t];
    if (mask.mask.size() != video.tokens_per_frame()) {
      throw DimensionError("reconstruct: mask length does not match token count");
    }
    for (std::size_t n = 0; n < mask.mask.size(); ++n) {
      if (mask.mask[n] == 0) {
        continue;
      }
      const auto src = video.frame(t).token(n);
      std::copy(src.begin(), src.end(), out.mutable_token(t, n).begin());
    }
  }
  return out;
}

}  // namespace dynatok
