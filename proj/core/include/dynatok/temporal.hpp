// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dynatok/video_tokens.hpp"

namespace dynatok {

/// EMA state over pooled frame descriptors.
struct TemporalMemory {
  std::vector<double> state;
  double alpha = 0.9;
  bool initialized = false;
};

/// Seeds the memory with the first pooled descriptor. Requires 0 < alpha <= 1.
TemporalMemory memory_init(std::span<const double> pooled, double alpha);

/// Returns the L2 distance between `pooled` and the current memory, then
/// folds `pooled` in as memory <- (1 - alpha) * memory + alpha * pooled.
/// The distance is taken before the update so a frame is scored against
/// history only. Each updated component is clamped to the closed interval
/// spanned by its two inputs, keeping the convex-combination invariant
/// exact under floating point.
double novelty_step(TemporalMemory& memory, std::span<const double> pooled);

/// Runs the pooled EMA over the whole clip and returns one delta per frame.
/// Frame 0 has no history, so its delta is defined as the maximum of the
/// later deltas (1.0 for a single frame).
std::vector<double> clip_deltas(const VideoTokens& video, double alpha);

/// Per-frame novelty and its normalization.
struct NoveltyProfile {
  std::vector<double> deltas;
  std::vector<double> weights;
};

/// Normalizes deltas into weights summing to one. A clip whose deltas are
/// all zero gets uniform weights. Deltas must be non-negative.
NoveltyProfile build_profile(std::span<const double> deltas);

/// Integer token budgets per frame.
struct FrameBudgets {
  std::vector<std::int64_t> budgets;
  double retention_ratio = 0.0;
  std::int64_t total = 0;
  /// Set when the clip budget is smaller than the frame count while the
  /// one-token floor is on; the floor is then waived for the lowest-weight
  /// frames and only the `total` highest-weight frames keep a token.
  bool floor_unmet = false;
};

/// Splits round(T * N * retention) tokens across frames proportionally to
/// the novelty weights, via bounded largest-remainder rounding. Each frame
/// is capped at N tokens; with `min_one_token_floor` every frame gets at
/// least one when the total allows it. Requires retention in (0, 1].
FrameBudgets apportion(const NoveltyProfile& profile, std::size_t tokens_per_frame,
                       double retention, bool min_one_token_floor);

}  // namespace dynatok
