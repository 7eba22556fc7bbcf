// SPDX-License-Identifier: Apache-2.0
#include "dynatok/run_stats.hpp"

#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace dynatok {

using nlohmann::json;

CompressionConfig StatsConfig::to_compression_config() const {
  CompressionConfig cfg;
  cfg.retention_ratio = retention_ratio;
  cfg.alpha = alpha;
  cfg.beta = beta;
  cfg.patch_size = patch_size;
  cfg.enable_tba = enable_tba;
  cfg.enable_sba = enable_sba;
  cfg.min_one_token_floor = min_one_token_floor;
  cfg.stream_window = stream_window;
  return cfg;
}

RunStats stats_from_batch(const StatsConfig& cfg, const CompressionResult& result) {
  RunStats stats;
  stats.config = cfg;
  stats.frames.reserve(result.masks.size());
  for (std::size_t t = 0; t < result.masks.size(); ++t) {
    FrameRecord rec;
    rec.t = t;
    rec.delta = result.profile.deltas[t];
    rec.weight = result.profile.weights[t];
    rec.budget = result.budgets.budgets[t];
    rec.indices = result.masks[t].indices();
    stats.frames.push_back(std::move(rec));
  }
  return stats;
}

RunStats stats_from_stream(const StatsConfig& cfg, std::span<const StreamStep> steps) {
  RunStats stats;
  stats.config = cfg;
  stats.frames.reserve(steps.size());
  for (const StreamStep& step : steps) {
    FrameRecord rec;
    rec.t = step.frame_index;
    rec.delta = step.delta;
    rec.weight = step.weight;
    rec.budget = step.budget;
    rec.indices = step.mask.indices();
    stats.frames.push_back(std::move(rec));
  }
  return stats;
}

void write_stats_jsonl(const RunStats& stats, std::ostream& out) {
  json cfg{{"type", "config"},
           {"input", stats.config.input},
           {"retention", stats.config.retention_ratio},
           {"alpha", stats.config.alpha},
           {"beta", stats.config.beta},
           {"patch_size", stats.config.patch_size},
           {"tba", stats.config.enable_tba},
           {"sba", stats.config.enable_sba},
           {"floor", stats.config.min_one_token_floor},
           {"stream", stats.config.stream},
           {"window", stats.config.stream_window},
           {"timings", stats.config.timings}};
  out << cfg.dump() << '\n';
  for (const FrameRecord& rec : stats.frames) {
    json line{{"type", "frame"}, {"t", rec.t},           {"delta", rec.delta},
              {"weight", rec.weight}, {"budget", rec.budget}, {"indices", rec.indices}};
    out << line.dump() << '\n';
  }
  for (const TimingRecord& rec : stats.timings) {
    json line{{"type", "timing"}, {"stage", rec.stage}, {"ms", rec.ms}};
    out << line.dump() << '\n';
  }
}

RunStats read_stats_jsonl(std::istream& in) {
  RunStats stats;
  bool saw_config = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const json rec = json::parse(line);
    const std::string type = rec.at("type").get<std::string>();
    if (type == "config") {
      stats.config.input = rec.at("input").get<std::string>();
      stats.config.retention_ratio = rec.at("retention").get<double>();
      stats.config.alpha = rec.at("alpha").get<double>();
      stats.config.beta = rec.at("beta").get<double>();
      stats.config.patch_size = rec.at("patch_size").get<std::size_t>();
      stats.config.enable_tba = rec.at("tba").get<bool>();
      stats.config.enable_sba = rec.at("sba").get<bool>();
      stats.config.min_one_token_floor = rec.at("floor").get<bool>();
      stats.config.stream = rec.at("stream").get<bool>();
      stats.config.stream_window = rec.at("window").get<std::size_t>();
      stats.config.timings = rec.at("timings").get<bool>();
      saw_config = true;
    } else if (type == "frame") {
      FrameRecord frame;
      frame.t = rec.at("t").get<std::size_t>();
      frame.delta = rec.at("delta").get<double>();
      frame.weight = rec.at("weight").get<double>();
      frame.budget = rec.at("budget").get<std::int64_t>();
      frame.indices = rec.at("indices").get<std::vector<std::size_t>>();
      stats.frames.push_back(std::move(frame));
    } else if (type == "timing") {
      TimingRecord timing;
      timing.stage = rec.at("stage").get<std::string>();
      timing.ms = rec.at("ms").get<double>();
      stats.timings.push_back(std::move(timing));
    } else {
      throw std::runtime_error("run stats: unknown record type " + type);
    }
  }
  if (!saw_config) {
    throw std::runtime_error("run stats: missing config record");
  }
  return stats;
}

void write_mask_json(std::span<const SelectionMask> masks, std::ostream& out) {
  json frames = json::array();
  for (std::size_t t = 0; t < masks.size(); ++t) {
    frames.push_back(json{{"t", t}, {"indices", masks[t].indices()}});
  }
  out << json{{"frames", frames}}.dump() << '\n';
}

std::vector<std::vector<std::size_t>> read_mask_json(std::istream& in) {
  const json doc = json::parse(in);
  std::vector<std::vector<std::size_t>> out;
  for (const json& frame : doc.at("frames")) {
    out.push_back(frame.at("indices").get<std::vector<std::size_t>>());
  }
  return out;
}

}  // namespace dynatok
