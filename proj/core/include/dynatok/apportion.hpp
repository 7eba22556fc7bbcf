// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dynatok {

/// Rounds fractional quotas to integers that sum exactly to `total` while
/// respecting per-index [lower, upper] bounds.
///
/// Starts from clamp(floor(q_i), lo_i, hi_i) and then moves single units:
/// surplus units go to the index with headroom and the largest remaining
/// fractional part, deficits are taken from the index with slack and the
/// smallest. Ties break toward the lower index when giving and toward the
/// higher index when taking, so smaller indices keep their units. Each move
/// adjusts the stored remainder by +-1 so repeated moves stay ordered by
/// true fractional priority.
///
/// Throws BudgetError when `total` lies outside [sum(lower), sum(upper)],
/// and DimensionError on mismatched spans. Deterministic, and weakly
/// monotone: with equal bounds, a strictly larger quota never receives
/// fewer units.
std::vector<std::int64_t> bounded_largest_remainder(std::span<const double> quotas,
                                                    std::int64_t total,
                                                    std::span<const std::int64_t> lower,
                                                    std::span<const std::int64_t> upper);

}  // namespace dynatok
