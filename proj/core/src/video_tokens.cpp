// SPDX-License-Identifier: Apache-2.0
#include "dynatok/video_tokens.hpp"

#include <cmath>
#include <string>

#include "dynatok/errors.hpp"

namespace dynatok {

FrameView::FrameView(std::span<const double> data, std::size_t tokens, std::size_t dim)
    : data_(data), tokens_(tokens), dim_(dim) {
  if (tokens == 0 || dim == 0) {
    throw DimensionError("FrameView: tokens and dim must be positive");
  }
  if (data.size() != tokens * dim) {
    throw DimensionError("FrameView: data length " + std::to_string(data.size()) +
                         " != tokens*dim " + std::to_string(tokens * dim));
  }
}

VideoTokens::VideoTokens(std::size_t frames, std::size_t tokens_per_frame, std::size_t dim,
                         std::vector<double> data)
    : frames_(frames), tokens_per_frame_(tokens_per_frame), dim_(dim), data_(std::move(data)) {
  if (frames == 0 || tokens_per_frame == 0 || dim == 0) {
    throw DimensionError("VideoTokens: T, N, D must all be positive");
  }
  const std::size_t expected = frames * tokens_per_frame * dim;
  if (data_.size() != expected) {
    throw DimensionError("VideoTokens: data length " + std::to_string(data_.size()) +
                         " != T*N*D " + std::to_string(expected));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw DimensionError("VideoTokens: non-finite value in data");
    }
  }
}

FrameView VideoTokens::frame(std::size_t t) const {
  if (t >= frames_) {
    throw DimensionError("VideoTokens::frame: index " + std::to_string(t) + " out of range");
  }
  const std::size_t stride = tokens_per_frame_ * dim_;
  return FrameView(std::span<const double>(data_).subspan(t * stride, stride),
                   tokens_per_frame_, dim_);
}

VideoTokens VideoTokens::zeros(std::size_t frames, std::size_t tokens_per_frame, std::size_t dim) {
  return VideoTokens(frames, tokens_per_frame, dim,
                     std::vector<double>(frames * tokens_per_frame * dim, 0.0));
}

}  // namespace dynatok
