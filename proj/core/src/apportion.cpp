// SPDX-License-Identifier: Apache-2.0
#include "dynatok/apportion.hpp"

#include <cmath>
#include <numeric>

#include "dynatok/errors.hpp"

namespace dynatok {

std::vector<std::int64_t> bounded_largest_remainder(std::span<const double> quotas,
                                                    std::int64_t total,
                                                    std::span<const std::int64_t> lower,
                                                    std::span<const std::int64_t> upper) {
  const std::size_t n = quotas.size();
  if (lower.size() != n || upper.size() != n) {
    throw DimensionError("bounded_largest_remainder: bounds length mismatch");
  }
  std::int64_t lo_sum = 0;
  std::int64_t hi_sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (lower[i] > upper[i]) {
      throw BudgetError("bounded_largest_remainder: lower bound exceeds upper bound");
    }
    lo_sum += lower[i];
    hi_sum += upper[i];
  }
  if (total < lo_sum || total > hi_sum) {
    throw BudgetError("bounded_largest_remainder: total outside feasible range");
  }

  std::vector<std::int64_t> alloc(n);
  std::vector<double> residual(n);
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto base = static_cast<std::int64_t>(std::floor(quotas[i]));
    alloc[i] = std::clamp(base, lower[i], upper[i]);
    residual[i] = quotas[i] - static_cast<double>(alloc[i]);
    assigned += alloc[i];
  }

  while (assigned < total) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (alloc[i] >= upper[i]) {
        continue;
      }
      if (best == n || residual[i] > residual[best]) {
        best = i;
      }
    }
    alloc[best] += 1;
    residual[best] -= 1.0;
    assigned += 1;
  }
  while (assigned > total) {
    std::size_t worst = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (alloc[i] <= lower[i]) {
        continue;
      }
      if (worst == n || residual[i] <= residual[worst]) {
        worst = i;
      }
    }
    alloc[worst] -= 1;
    residual[worst] += 1.0;
    assigned -= 1;
  }
  return alloc;
}

}  // namespace dynatok
