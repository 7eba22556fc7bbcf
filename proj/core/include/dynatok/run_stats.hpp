// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dynatok/pipeline.hpp"
#include "dynatok/spatial.hpp"

namespace dynatok {

/// Everything needed to rerun a compression bit-identically: the input
/// path plus the full flag set. Echoed as the first stats record.
struct StatsConfig {
  std::string input;
  double retention_ratio = 0.25;
  double alpha = 0.9;
  double beta = 0.1;
  std::size_t patch_size = 14;
  bool enable_tba = true;
  bool enable_sba = true;
  bool min_one_token_floor = true;
  bool stream = false;
  std::size_t stream_window = 8;
  /// Wall-clock timing records are opt-in: they are nondeterministic by
  /// nature, and leaving them out keeps stats byte-reproducible.
  bool timings = false;

  CompressionConfig to_compression_config() const;
};

/// One line per frame. `weight` is the batch novelty weight or, in stream
/// mode, the causal budget ratio. Indices are ascending.
struct FrameRecord {
  std::size_t t = 0;
  double delta = 0.0;
  double weight = 0.0;
  std::int64_t budget = 0;
  std::vector<std::size_t> indices;
};

struct TimingRecord {
  std::string stage;
  double ms = 0.0;
};

/// JSON-lines run log: a config echo, one frame record per frame, and
/// optional timing records. Line-oriented so long streams append cheaply.
struct RunStats {
  StatsConfig config;
  std::vector<FrameRecord> frames;
  std::vector<TimingRecord> timings;
};

RunStats stats_from_batch(const StatsConfig& cfg, const CompressionResult& result);
RunStats stats_from_stream(const StatsConfig& cfg, std::span<const StreamStep> steps);

void write_stats_jsonl(const RunStats& stats, std::ostream& out);

/// Parses a stats stream written by write_stats_jsonl. Malformed input
/// throws (json parse errors propagate; structural problems raise
/// std::runtime_error).
RunStats read_stats_jsonl(std::istream& in);

/// Mask file schema: {"frames":[{"t":int,"indices":[int,...]}]}.
void write_mask_json(std::span<const SelectionMask> masks, std::ostream& out);

/// Selected indices per frame, in file order.
std::vector<std::vector<std::size_t>> read_mask_json(std::istream& in);

}  // namespace dynatok
