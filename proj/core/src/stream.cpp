// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "dynatok/errors.hpp"
#include "dynatok/ops.hpp"
#include "dynatok/pipeline.hpp"

namespace dynatok {

StreamSession::StreamSession(const CompressionConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
}

StreamStep StreamSession::step(const FrameView& frame) {
  if (frames_seen_ == 0) {
    tokens_ = frame.tokens();
    dim_ = frame.dim();
    spatial_.emplace(tokens_, dim_, cfg_.alpha);
    partition_.emplace(detail::make_partition(tokens_, cfg_));
  } else if (frame.tokens() != tokens_ || frame.dim() != dim_) {
    throw SessionError("StreamSession: frame shape changed mid-stream");
  }

  StreamStep out;
  out.frame_index = frames_seen_;

  const std::vector<double> pooled = global_pool(frame);
  if (frames_seen_ == 0) {
    // No history: delta is reported as 0 and kept out of the window so it
    // cannot drag the normalizing mean down.
    temporal_ = memory_init(pooled, cfg_.alpha);
  } else {
    out.delta = novelty_step(temporal_, pooled);
    window_.push_back(out.delta);
    if (window_.size() > cfg_.stream_window) {
      window_.pop_front();
    }
  }

  const double base = static_cast<double>(tokens_) * cfg_.retention_ratio;
  double ratio = 1.0;
  if (cfg_.enable_tba && !window_.empty()) {
    double mean = 0.0;
    for (double d : window_) {
      mean += d;
    }
    mean /= static_cast<double>(window_.size());
    if (mean > 0.0) {
      ratio = out.delta / mean;
    }
  }
  out.weight = ratio;
  const std::int64_t lo = cfg_.min_one_token_floor ? 1 : 0;
  out.budget = std::clamp(static_cast<std::int64_t>(std::llround(base * ratio)), lo,
                          static_cast<std::int64_t>(tokens_));

  out.mask = detail::select_frame(frame, *partition_, *spatial_, out.budget, cfg_);
  frames_seen_ += 1;
  return out;
}

}  // namespace dynatok
