// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dynatok/video_tokens.hpp"

namespace dynatok {

/// Per-token saliency A in [0, 1] for one frame.
struct ActivationMap {
  std::vector<double> values;
};

/// Contiguous split of a frame's N token slots into P = ceil(N / k) patches.
/// The last patch may hold fewer than k tokens.
struct PatchPartition {
  std::size_t patch_size = 0;
  std::size_t patch_count = 0;
  /// patch_count + 1 indices; patch i spans [boundaries[i], boundaries[i+1]).
  std::vector<std::size_t> boundaries;

  static PatchPartition build(std::size_t token_count, std::size_t patch_size);

  std::size_t begin(std::size_t i) const { return boundaries[i]; }
  std::size_t end(std::size_t i) const { return boundaries[i + 1]; }
  std::size_t size(std::size_t i) const { return boundaries[i + 1] - boundaries[i]; }
};

/// Per-token-position EMA memory of previously selected tokens. Rows start
/// at exactly zero and stay zero until the position first appears in a
/// selection mask.
class SpatialMemory {
 public:
  SpatialMemory(std::size_t tokens, std::size_t dim, double alpha);

  std::size_t tokens() const { return tokens_; }
  std::size_t dim() const { return dim_; }
  double alpha() const { return alpha_; }
  bool touched(std::size_t n) const { return touched_[n] != 0; }

  std::span<const double> row(std::size_t n) const;
  std::span<double> row(std::size_t n);
  void mark_touched(std::size_t n) { touched_[n] = 1; }

 private:
  std::size_t tokens_;
  std::size_t dim_;
  double alpha_;
  std::vector<double> state_;
  std::vector<std::uint8_t> touched_;
};

/// Boolean token mask with its popcount.
struct SelectionMask {
  std::vector<std::uint8_t> mask;
  std::int64_t selected_count = 0;

  /// Positions with the bit set, ascending.
  std::vector<std::size_t> indices() const;
};

/// A[n] = minmax_normalize over n of sum_d |X[n, d]|.
ActivationMap activation_map(const FrameView& frame);

/// s_i = mean of A over patch i's index range.
std::vector<double> patch_scores(const ActivationMap& activation, const PatchPartition& part);

/// Splits the frame budget across patches proportionally to patch scores
/// via bounded largest-remainder rounding; each patch is capped at its
/// capacity and overflow spills to non-full patches. All-zero scores fall
/// back to uniform quotas. Throws BudgetError when frame_budget exceeds the
/// total capacity.
std::vector<std::int64_t> patch_apportion(std::span<const double> scores,
                                          std::int64_t frame_budget,
                                          std::span<const std::int64_t> capacities);

/// Per position n, the cosine similarity of the frame's token n to the
/// memory row n. Positions never touched yield exactly 0.
std::vector<double> redundancy(const FrameView& frame, const SpatialMemory& memory);

/// score = A - beta * red, elementwise. Scores may go negative; only the
/// relative order within a patch matters.
std::vector<double> token_scores(const ActivationMap& activation,
                                 std::span<const double> red, double beta);

/// Marks, within each patch, the counts[i] highest-scoring token positions.
/// Score ties break toward the lower token index.
SelectionMask select_topk_per_patch(std::span<const double> scores,
                                    const PatchPartition& part,
                                    std::span<const std::int64_t> counts);

/// EMA-folds the frame's tokens into the memory at masked positions only:
/// row <- (1 - alpha) * row + alpha * token, each component clamped to the
/// interval spanned by its two inputs. Untouched rows are left bit-identical.
void memory_update(SpatialMemory& memory, const FrameView& frame, const SelectionMask& mask);

}  // namespace dynatok
