// SPDX-License-Identifier: Apache-2.0
#include "dynatok/ops.hpp"

#include <algorithm>
#include <cmath>

#include "dynatok/errors.hpp"

namespace dynatok {

std::vector<double> global_pool(const FrameView& frame) {
  const std::size_t n = frame.tokens();
  const std::size_t d = frame.dim();
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto tok = frame.token(i);
    for (std::size_t j = 0; j < d; ++j) {
      mean[j] += tok[j];
    }
  }
  const double inv = 1.0 / static_cast<double>(n);
  for (double& v : mean) {
    v *= inv;
  }
  return mean;
}

double l2_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("l2_distance: length mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

double cosine_sim(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("cosine_sim: length mismatch");
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  constexpr double kEps = 1e-12;
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  if (na < kEps || nb < kEps) {
    return 0.0;
  }
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

std::vector<double> minmax_normalize(std::span<const double> values) {
  if (values.empty()) {
    throw DimensionError("minmax_normalize: empty input");
  }
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *min_it;
  const double hi = *max_it;
  std::vector<double> out(values.size());
  if (hi == lo) {
    std::fill(out.begin(), out.end(), 0.5);
    return out;
  }
  // Divide rather than multiply by a reciprocal: the extremes then map to
  // exactly 0 and 1 and nothing can round past the ends of the interval.
  const double range = hi - lo;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = (values[i] - lo) / range;
  }
  return out;
}

}  // namespace dynatok
