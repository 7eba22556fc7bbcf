// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "dynatok/pipeline.hpp"
#include "dynatok/video_tokens.hpp"

namespace dynatok {

/// How often a fixed token position keeps getting selected over time.
struct BiasCurve {
  /// cumulative_selections[t] = number of frames among 0..t whose mask
  /// includes the watched position. Non-decreasing, at most t + 1.
  std::vector<std::int64_t> cumulative_selections;
  /// Final count divided by the frame count.
  double final_rate = 0.0;
};

/// Compresses the video under `cfg` and tallies how often `bias_position`
/// survives selection.
BiasCurve bias_curve(const VideoTokens& video, const CompressionConfig& cfg,
                     std::size_t bias_position);

/// Mean over frames of each position's activation value: the heat profile
/// a consistently favored position stands out in.
std::vector<double> accumulated_activation(const VideoTokens& video);

}  // namespace dynatok
