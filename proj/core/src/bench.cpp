// SPDX-License-Identifier: Apache-2.0
#include "dynatok/bench.hpp"

#include <chrono>
#include <cmath>

#include "dynatok/errors.hpp"

namespace dynatok {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Pairwise interaction over one key per retained token: M^2 additions.
double downstream_pass(const CompressionResult& result) {
  const std::size_t count = result.provenance.size();
  const std::size_t dim = result.dim;
  std::vector<double> keys(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    double acc = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      acc += result.compressed[i * dim + d];
    }
    keys[i] = acc / static_cast<double>(dim);
  }
  double score = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      score += keys[i] * keys[j];
    }
  }
  return score;
}

struct Series {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    count += 1;
  }
  double mean() const { return sum / static_cast<double>(count); }
  double stddev() const {
    const double m = mean();
    const double var = sum_sq / static_cast<double>(count) - m * m;
    return var > 0.0 ? std::sqrt(var) : 0.0;
  }
};

}  // namespace

std::vector<BenchRow> run_bench(const VideoTokens& video, const CompressionConfig& base,
                                std::span<const double> retentions, std::size_t repeats) {
  if (retentions.empty()) {
    throw ConfigError("run_bench: at least one retention level required");
  }
  if (repeats == 0) {
    throw ConfigError("run_bench: repeats must be positive");
  }
  volatile double sink = 0.0;
  std::vector<BenchRow> rows;
  rows.reserve(retentions.size());
  for (double retention : retentions) {
    CompressionConfig cfg = base;
    cfg.retention_ratio = retention;
    cfg.validate();

    Series compress_ms;
    Series downstream_ms;
    Series total_ms;
    std::int64_t retained = 0;
    for (std::size_t rep = 0; rep < repeats; ++rep) {
      const auto t0 = Clock::now();
      const CompressionResult result = compress_batch(video, cfg);
      const double c_ms = ms_since(t0);

      const auto t1 = Clock::now();
      sink = sink + downstream_pass(result);
      const double d_ms = ms_since(t1);

      compress_ms.add(c_ms);
      downstream_ms.add(d_ms);
      total_ms.add(c_ms + d_ms);
      retained = static_cast<std::int64_t>(result.provenance.size());
    }

    BenchRow row;
    row.retention = retention;
    row.retained_tokens = retained;
    row.compress_ms_mean = compress_ms.mean();
    row.compress_ms_stddev = compress_ms.stddev();
    row.downstream_ms_mean = downstream_ms.mean();
    row.downstream_ms_stddev = downstream_ms.stddev();
    row.total_ms_mean = total_ms.mean();
    row.total_ms_stddev = total_ms.stddev();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dynatok
