// SPDX-License-Identifier: Apache-2.0
#include "dynatok/bias.hpp"

#include "dynatok/errors.hpp"
#include "dynatok/spatial.hpp"

namespace dynatok {

BiasCurve bias_curve(const VideoTokens& video, const CompressionConfig& cfg,
                     std::size_t bias_position) {
  if (bias_position >= video.tokens_per_frame()) {
    throw DimensionError("bias_curve: bias_position out of range");
  }
  const CompressionResult result = compress_batch(video, cfg);
  BiasCurve curve;
  curve.cumulative_selections.reserve(video.frames());
  std::int64_t count = 0;
  for (const SelectionMask& mask : result.masks) {
    if (mask.mask[bias_position] != 0) {
      count += 1;
    }
    curve.cumulative_selections.push_back(count);
  }
  curve.final_rate = static_cast<double>(count) / static_cast<double>(video.frames());
  return curve;
}

std::vector<double> accumulated_activation(const VideoTokens& video) {
  std::vector<double> heat(video.tokens_per_frame(), 0.0);
  for (std::size_t t = 0; t < video.frames(); ++t) {
    const ActivationMap activation = activation_map(video.frame(t));
    for (std::size_t n = 0; n < heat.size(); ++n) {
      heat[n] += activation.values[n];
    }
  }
  const double inv = 1.0 / static_cast<double>(video.frames());
  for (double& v : heat) {
    v *= inv;
  }
  return heat;
}

}  // namespace dynatok
