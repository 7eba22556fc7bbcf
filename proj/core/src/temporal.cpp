// SPDX-License-Identifier: Apache-2.0
#include "dynatok/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dynatok/apportion.hpp"
#include "dynatok/errors.hpp"
#include "dynatok/ops.hpp"

namespace dynatok {

TemporalMemory memory_init(std::span<const double> pooled, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("memory_init: alpha must lie in (0, 1]");
  }
  if (pooled.empty()) {
    throw DimensionError("memory_init: empty descriptor");
  }
  TemporalMemory memory;
  memory.state.assign(pooled.begin(), pooled.end());
  memory.alpha = alpha;
  memory.initialized = true;
  return memory;
}

double novelty_step(TemporalMemory& memory, std::span<const double> pooled) {
  if (!memory.initialized) {
    throw SessionError("novelty_step: memory not initialized");
  }
  if (pooled.size() != memory.state.size()) {
    throw DimensionError("novelty_step: descriptor length mismatch");
  }
  const double delta = l2_distance(pooled, memory.state);
  const double keep = 1.0 - memory.alpha;
  for (std::size_t j = 0; j < pooled.size(); ++j) {
    const double prev = memory.state[j];
    const double next = keep * prev + memory.alpha * pooled[j];
    memory.state[j] = std::clamp(next, std::min(prev, pooled[j]), std::max(prev, pooled[j]));
  }
  return delta;
}

std::vector<double> clip_deltas(const VideoTokens& video, double alpha) {
  const std::size_t t_count = video.frames();
  std::vector<double> deltas(t_count, 0.0);
  if (t_count == 1) {
    deltas[0] = 1.0;
    return deltas;
  }
  TemporalMemory memory = memory_init(global_pool(video.frame(0)), alpha);
  for (std::size_t t = 1; t < t_count; ++t) {
    deltas[t] = novelty_step(memory, global_pool(video.frame(t)));
  }
  deltas[0] = *std::max_element(deltas.begin() + 1, deltas.end());
  return deltas;
}

NoveltyProfile build_profile(std::span<const double> deltas) {
  if (deltas.empty()) {
    throw DimensionError("build_profile: at least one delta required");
  }
  for (double d : deltas) {
    if (!(d >= 0.0)) {
      throw ConfigError("build_profile: deltas must be non-negative");
    }
  }
  NoveltyProfile profile;
  profile.deltas.assign(deltas.begin(), deltas.end());
  profile.weights.assign(deltas.size(), 0.0);
  const double sum = std::accumulate(deltas.begin(), deltas.end(), 0.0);
  if (sum <= 0.0) {
    std::fill(profile.weights.begin(), profile.weights.end(),
              1.0 / static_cast<double>(deltas.size()));
  } else {
    for (std::size_t t = 0; t < deltas.size(); ++t) {
      profile.weights[t] = deltas[t] / sum;
    }
  }
  return profile;
}

FrameBudgets apportion(const NoveltyProfile& profile, std::size_t tokens_per_frame,
                       double retention, bool min_one_token_floor) {
  if (!(retention > 0.0 && retention <= 1.0)) {
    throw ConfigError("apportion: retention must lie in (0, 1]");
  }
  const std::size_t t_count = profile.weights.size();
  if (t_count == 0 || profile.deltas.size() != t_count) {
    throw DimensionError("apportion: malformed profile");
  }
  const double clip_quota =
      static_cast<double>(t_count) * static_cast<double>(tokens_per_frame) * retention;

  FrameBudgets out;
  out.retention_ratio = retention;
  out.total = std::llround(clip_quota);
  out.budgets.assign(t_count, 0);

  if (min_one_token_floor && out.total < static_cast<std::int64_t>(t_count)) {
    // Not enough tokens to honor the floor everywhere: keep only the
    // highest-weight frames, one token each.
    std::vector<std::size_t> order(t_count);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return profile.weights[a] > profile.weights[b];
    });
    for (std::int64_t i = 0; i < out.total; ++i) {
      out.budgets[order[static_cast<std::size_t>(i)]] = 1;
    }
    out.floor_unmet = true;
    return out;
  }

  std::vector<double> quotas(t_count);
  for (std::size_t t = 0; t < t_count; ++t) {
    quotas[t] = profile.weights[t] * clip_quota;
  }
  const std::vector<std::int64_t> lower(t_count, min_one_token_floor ? 1 : 0);
  const std::vector<std::int64_t> upper(t_count,
                                        static_cast<std::int64_t>(tokens_per_frame));
  out.budgets = bounded_largest_remainder(quotas, out.total, lower, upper);
  return out;
}

}  // namespace dynatok
