// SPDX-License-Identifier: Apache-2.0
#include "dynatok/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dynatok/apportion.hpp"
#include "dynatok/errors.hpp"
#include "dynatok/ops.hpp"

namespace dynatok {

PatchPartition PatchPartition::build(std::size_t token_count, std::size_t patch_size) {
  if (token_count == 0) {
    throw DimensionError("PatchPartition: token count must be positive");
  }
  if (patch_size == 0) {
    throw ConfigError("PatchPartition: patch size must be positive");
  }
  PatchPartition part;
  part.patch_size = patch_size;
  part.patch_count = (token_count + patch_size - 1) / patch_size;
  part.boundaries.reserve(part.patch_count + 1);
  for (std::size_t i = 0; i < part.patch_count; ++i) {
    part.boundaries.push_back(i * patch_size);
  }
  part.boundaries.push_back(token_count);
  return part;
}

SpatialMemory::SpatialMemory(std::size_t tokens, std::size_t dim, double alpha)
    : tokens_(tokens),
      dim_(dim),
      alpha_(alpha),
      state_(tokens * dim, 0.0),
      touched_(tokens, 0) {
  if (tokens == 0 || dim == 0) {
    throw DimensionError("SpatialMemory: tokens and dim must be positive");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("SpatialMemory: alpha must lie in (0, 1]");
  }
}

std::span<const double> SpatialMemory::row(std::size_t n) const {
  return std::span<const double>(state_).subspan(n * dim_, dim_);
}

std::span<double> SpatialMemory::row(std::size_t n) {
  return std::span<double>(state_).subspan(n * dim_, dim_);
}

std::vector<std::size_t> SelectionMask::indices() const {
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(selected_count));
  for (std::size_t n = 0; n < mask.size(); ++n) {
    if (mask[n] != 0) {
      out.push_back(n);
    }
  }
  return out;
}

ActivationMap activation_map(const FrameView& frame) {
  std::vector<double> raw(frame.tokens(), 0.0);
  for (std::size_t n = 0; n < frame.tokens(); ++n) {
    const auto tok = frame.token(n);
    double acc = 0.0;
    for (double v : tok) {
      acc += std::abs(v);
    }
    raw[n] = acc;
  }
  return ActivationMap{minmax_normalize(raw)};
}

std::vector<double> patch_scores(const ActivationMap& activation, const PatchPartition& part) {
  if (part.boundaries.empty() || part.boundaries.back() != activation.values.size()) {
    throw DimensionError("patch_scores: partition does not cover the activation map");
  }
  std::vector<double> scores(part.patch_count, 0.0);
  for (std::size_t i = 0; i < part.patch_count; ++i) {
    double acc = 0.0;
    for (std::size_t n = part.begin(i); n < part.end(i); ++n) {
      acc += activation.values[n];
    }
    scores[i] = acc / static_cast<double>(part.size(i));
  }
  return scores;
}

std::vector<std::int64_t> patch_apportion(std::span<const double> scores,
                                          std::int64_t frame_budget,
                                          std::span<const std::int64_t> capacities) {
  if (scores.size() != capacities.size() || scores.empty()) {
    throw DimensionError("patch_apportion: scores and capacities must match");
  }
  const std::int64_t capacity_sum =
      std::accumulate(capacities.begin(), capacities.end(), std::int64_t{0});
  if (frame_budget > capacity_sum) {
    throw BudgetError("patch_apportion: frame budget exceeds total patch capacity");
  }
  const double sum = std::accumulate(scores.begin(), scores.end(), 0.0);
  std::vector<double> quotas(scores.size());
  if (sum <= 0.0) {
    const double uniform =
        static_cast<double>(frame_budget) / static_cast<double>(scores.size());
    std::fill(quotas.begin(), quotas.end(), uniform);
  } else {
    for (std::size_t i = 0; i < scores.size(); ++i) {
      quotas[i] = scores[i] * static_cast<double>(frame_budget) / sum;
    }
  }
  const std::vector<std::int64_t> lower(scores.size(), 0);
  return bounded_largest_remainder(quotas, frame_budget, lower, capacities);
}

std::vector<double> redundancy(const FrameView& frame, const SpatialMemory& memory) {
  if (frame.tokens() != memory.tokens() || frame.dim() != memory.dim()) {
    throw DimensionError("redundancy: frame and memory shapes differ");
  }
  std::vector<double> out(frame.tokens(), 0.0);
  for (std::size_t n = 0; n < frame.tokens(); ++n) {
    if (memory.touched(n)) {
      out[n] = cosine_sim(frame.token(n), memory.row(n));
    }
  }
  return out;
}

std::vector<double> token_scores(const ActivationMap& activation,
                                 std::span<const double> red, double beta) {
  if (activation.values.size() != red.size()) {
    throw DimensionError("token_scores: length mismatch");
  }
  if (beta < 0.0) {
    throw ConfigError("token_scores: beta must be non-negative");
  }
  std::vector<double> out(red.size());
  for (std::size_t n = 0; n < red.size(); ++n) {
    out[n] = activation.values[n] - beta * red[n];
  }
  return out;
}

SelectionMask select_topk_per_patch(std::span<const double> scores,
                                    const PatchPartition& part,
                                    std::span<const std::int64_t> counts) {
  if (part.boundaries.empty() || part.boundaries.back() != scores.size()) {
    throw DimensionError("select_topk_per_patch: partition does not cover the scores");
  }
  if (counts.size() != part.patch_count) {
    throw DimensionError("select_topk_per_patch: one count per patch required");
  }
  SelectionMask out;
  out.mask.assign(scores.size(), 0);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < part.patch_count; ++i) {
    const auto want = counts[i];
    if (want < 0 || static_cast<std::size_t>(want) > part.size(i)) {
      throw BudgetError("select_topk_per_patch: count exceeds patch capacity");
    }
    if (want == 0) {
      continue;
    }
    order.resize(part.size(i));
    std::iota(order.begin(), order.end(), part.begin(i));
    // Stable sort over ascending positions: equal scores keep index order.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    for (std::int64_t j = 0; j < want; ++j) {
      out.mask[order[static_cast<std::size_t>(j)]] = 1;
    }
    out.selected_count += want;
  }
  return out;
}

void memory_update(SpatialMemory& memory, const FrameView& frame, const SelectionMask& mask) {
  if (frame.tokens() != memory.tokens() || frame.dim() != memory.dim() ||
      mask.mask.size() != memory.tokens()) {
    throw DimensionError("memory_update: frame, memory, and mask shapes differ");
  }
  const double alpha = memory.alpha();
  const double keep = 1.0 - alpha;
  for (std::size_t n = 0; n < memory.tokens(); ++n) {
    if (mask.mask[n] == 0) {
      continue;
    }
    const auto tok = frame.token(n);
    auto row = memory.row(n);
    for (std::size_t d = 0; d < row.size(); ++d) {
      const double prev = row[d];
      const double next = keep * prev + alpha * tok[d];
      row[d] = std::clamp(next, std::min(prev, tok[d]), std::max(prev, tok[d]));
    }
    memory.mark_touched(n);
  }
}

}  // namespace dynatok
