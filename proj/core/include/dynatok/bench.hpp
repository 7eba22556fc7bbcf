// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dynatok/pipeline.hpp"
#include "dynatok/video_tokens.hpp"

namespace dynatok {

struct BenchRow {
  double retention = 0.0;
  std::int64_t retained_tokens = 0;
  double compress_ms_mean = 0.0;
  double compress_ms_stddev = 0.0;
  double downstream_ms_mean = 0.0;
  double downstream_ms_stddev = 0.0;
  double total_ms_mean = 0.0;
  double total_ms_stddev = 0.0;
};

/// Times compression plus a simulated downstream consumer at each retention
/// level. The consumer stands in for an attention prefill: cost quadratic
/// in the retained token count (a literal M x M accumulation that the
/// optimizer cannot collapse, floating-point addition being
/// non-associative). Fewer retained tokens means a cheaper downstream pass,
/// so total cost falls as retention drops.
std::vector<BenchRow> run_bench(const VideoTokens& video, const CompressionConfig& base,
                                std::span<const double> retentions, std::size_t repeats);

}  // namespace dynatok
