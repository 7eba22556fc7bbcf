// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "dynatok/video_tokens.hpp"

namespace dynatok {

/// Arithmetic mean over the frame's N token vectors. Output length D.
std::vector<double> global_pool(const FrameView& frame);

/// Euclidean norm of a - b. Zero iff a == b.
double l2_distance(std::span<const double> a, std::span<const double> b);

/// Cosine similarity a.b / (|a||b|), clamped to [-1, 1]. Returns exactly 0
/// when either norm is below 1e-12: a zero vector carries no redundancy
/// evidence, so never-updated memory rows must not penalize anything.
double cosine_sim(std::span<const double> a, std::span<const double> b);

/// Min-max normalization to [0, 1]. An all-equal input maps every entry to
/// 0.5 so downstream scores stay uniform instead of collapsing to zero.
std::vector<double> minmax_normalize(std::span<const double> values);

}  // namespace dynatok
