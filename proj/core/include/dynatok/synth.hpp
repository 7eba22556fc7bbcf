// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "dynatok/video_tokens.hpp"

namespace dynatok {

/// Recipe for a deterministic synthetic token tensor standing in for real
/// encoder features.
struct SynthSpec {
  std::size_t frames = 32;
  std::size_t tokens_per_frame = 196;
  std::size_t dim = 32;
  /// Per-frame similarity to the previous frame, each in [0, 1]:
  /// frame_t = r_t * frame_{t-1} + (1 - r_t) * fresh. Entry 0 is ignored
  /// (frame 0 has no predecessor). Empty means fully independent frames.
  std::vector<double> redundancy_schedule;
  /// Center of a persistent activation hotspot; see synth_video.
  std::size_t bias_position = 0;
  double bias_strength = 0.0;
  std::uint64_t seed = 0;
};

/// Generates the tensor described by `spec`. Fully deterministic given the
/// seed, including across platforms (no std:: distributions involved).
///
/// Fresh frames are a smooth low-frequency spatial envelope times iid noise
/// in [-1, 1), so activation varies gently inside a patch and strongly
/// across the frame, the way pooled encoder features do. When bias_strength
/// is positive, a hotspot is stamped on every frame after the recurrence:
/// each component of the token at bias_position grows in magnitude by
/// exactly bias_strength, and nearby tokens by a Gaussian falloff of it, so
/// the hotspot reads as a small salient region rather than an isolated
/// spike.
VideoTokens synth_video(const SynthSpec& spec);

}  // namespace dynatok
