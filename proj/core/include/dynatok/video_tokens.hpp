// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dynatok {

/// Read-only view of one frame inside a token tensor: N tokens of dimension
/// D, contiguous in memory. Does not own its data.
class FrameView {
 public:
  FrameView(std::span<const double> data, std::size_t tokens, std::size_t dim);

  std::size_t tokens() const { return tokens_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> data() const { return data_; }

  /// One token as a D-long span.
  std::span<const double> token(std::size_t n) const {
    return data_.subspan(n * dim_, dim_);
  }

  double at(std::size_t n, std::size_t d) const { return data_[n * dim_ + d]; }

 private:
  std::span<const double> data_;
  std::size_t tokens_;
  std::size_t dim_;
};

/// Dense video token tensor X with shape T x N x D, frame-major layout
/// (element (t, n, d) lives at t*N*D + n*D + d). All values are finite;
/// construction rejects NaN/Inf and shape/length mismatches.
///
/// Storage is 64-bit; the on-disk format is 32-bit (see token_file.hpp).
class VideoTokens {
 public:
  VideoTokens(std::size_t frames, std::size_t tokens_per_frame, std::size_t dim,
              std::vector<double> data);

  std::size_t frames() const { return frames_; }
  std::size_t tokens_per_frame() const { return tokens_per_frame_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return data_.size(); }
  const std::vector<double>& data() const { return data_; }

  FrameView frame(std::size_t t) const;

  double at(std::size_t t, std::size_t n, std::size_t d) const {
    return data_[(t * tokens_per_frame_ + n) * dim_ + d];
  }

  std::span<const double> token(std::size_t t, std::size_t n) const {
    return std::span<const double>(data_).subspan((t * tokens_per_frame_ + n) * dim_, dim_);
  }

  std::span<double> mutable_token(std::size_t t, std::size_t n) {
    return std::span<double>(data_).subspan((t * tokens_per_frame_ + n) * dim_, dim_);
  }

  /// All-zero tensor of the given shape.
  static VideoTokens zeros(std::size_t frames, std::size_t tokens_per_frame, std::size_t dim);

 private:
  std::size_t frames_;
  std::size_t tokens_per_frame_;
  std::size_t dim_;
  std::vector<double> data_;
};

}  // namespace dynatok
