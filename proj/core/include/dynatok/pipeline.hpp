// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "dynatok/spatial.hpp"
#include "dynatok/temporal.hpp"
#include "dynatok/video_tokens.hpp"

namespace dynatok {

struct CompressionConfig {
  double retention_ratio = 0.25;
  double alpha = 0.9;
  double beta = 0.1;
  std::size_t patch_size = 14;
  bool enable_tba = true;
  bool enable_sba = true;
  bool min_one_token_floor = true;
  /// Streaming only: deltas averaged over this many recent frames when
  /// normalizing the causal budget. 1 degenerates to a fixed per-frame
  /// budget of round(N * R).
  std::size_t stream_window = 8;

  /// Throws ConfigError on any out-of-range field.
  void validate() const;
};

/// One retained token's original location.
struct TokenRef {
  std::size_t frame = 0;
  std::size_t position = 0;
};

struct CompressionResult {
  std::vector<SelectionMask> masks;
  FrameBudgets budgets;
  NoveltyProfile profile;
  /// Retained token vectors, frame-major, positions ascending within each
  /// frame; row i is dim doubles starting at compressed[i * dim].
  std::vector<double> compressed;
  std::vector<TokenRef> provenance;
  std::size_t dim = 0;
};

/// Runs the full two-stage pass: per-frame novelty budgets over the whole
/// clip, then per-frame patch-wise selection in temporal order with the
/// spatial memory carried across frames.
///
/// With enable_tba off, every frame gets a uniform budget of round(N * R)
/// (raised to 1 when the floor is on and the rounding hits zero). With
/// enable_sba off, the frame is treated as a single patch and the
/// redundancy penalty is dropped, so selection is plain activation top-k.
/// The novelty profile is computed either way; stats consumers rely on it.
CompressionResult compress_batch(const VideoTokens& video, const CompressionConfig& cfg);

/// Re-embeds retained tokens at their original positions, zeros elsewhere.
VideoTokens reconstruct(const CompressionResult& result, const VideoTokens& video);

/// Per-frame output of a streaming step. `weight` is the causal budget
/// ratio actually applied (delta over the windowed mean; 1 when there is
/// no usable history), the streaming stand-in for a batch novelty weight.
struct StreamStep {
  std::size_t frame_index = 0;
  double delta = 0.0;
  double weight = 1.0;
  std::int64_t budget = 0;
  SelectionMask mask;
};

/// One frame at a time. Batch TBA normalizes novelty over the whole clip,
/// which a live stream cannot do, so the session uses a causal stand-in:
/// each frame's budget is round(N * R) scaled by the frame's delta relative
/// to the mean delta over the last `stream_window` frames (current frame
/// included), clamped to [floor, N]. Long-run retention tracks R; this
/// policy is a streaming extension, not part of the reference batch
/// behavior. Both memories persist across calls. Frames define their order
/// by arrival; the first frame fixes N and D and later mismatches throw
/// SessionError.
class StreamSession {
 public:
  explicit StreamSession(const CompressionConfig& cfg);

  StreamStep step(const FrameView& frame);

  std::size_t frames_seen() const { return frames_seen_; }

 private:
  CompressionConfig cfg_;
  std::size_t frames_seen_ = 0;
  std::size_t tokens_ = 0;
  std::size_t dim_ = 0;
  TemporalMemory temporal_;
  std::optional<SpatialMemory> spatial_;
  std::optional<PatchPartition> partition_;
  std::deque<double> window_;
};

}  // namespace dynatok
