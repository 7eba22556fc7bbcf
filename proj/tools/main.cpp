// SPDX-License-Identifier: Apache-2.0
//
// dynatok CLI: compress token tensors, generate synthetic inputs, run the
// positional-bias experiment, and benchmark retention levels.
//
// Exit codes: 0 success, 2 bad flags, 3 unreadable or corrupt input,
// 4 internal invariant violation.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dynatok/bench.hpp"
#include "dynatok/bias.hpp"
#include "dynatok/errors.hpp"
#include "dynatok/pipeline.hpp"
#include "dynatok/run_stats.hpp"
#include "dynatok/synth.hpp"
#include "dynatok/token_file.hpp"

namespace {

using namespace dynatok;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void require_range(double v, double lo, double hi, bool lo_open, const char* flag) {
  const bool ok = (lo_open ? v > lo : v >= lo) && v <= hi;
  if (!ok) {
    std::ostringstream msg;
    msg << flag << ": value " << v << " must lie in " << (lo_open ? "(" : "[") << lo
        << ", " << hi << "]";
    throw ConfigError(msg.str());
  }
}

std::ofstream open_output(const std::string& path, const char* flag) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ConfigError(std::string(flag) + ": cannot open " + path + " for writing");
  }
  return out;
}

struct CompressArgs {
  std::string input;
  double retention = 0.25;
  double alpha = 0.9;
  double beta = 0.1;
  std::size_t patch_size = 14;
  bool no_tba = false;
  bool no_sba = false;
  bool no_floor = false;
  bool stream = false;
  std::size_t window = 8;
  bool timings = false;
  std::string out_mask;
  std::string out_stats;
};

void run_compress(const CompressArgs& args) {
  require_range(args.retention, 0.0, 1.0, true, "--retention");
  require_range(args.alpha, 0.0, 1.0, true, "--alpha");
  if (args.beta < 0.0) {
    throw ConfigError("--beta: value must be non-negative");
  }
  if (args.patch_size == 0) {
    throw ConfigError("--patch-size: value must be positive");
  }
  if (args.window == 0) {
    throw ConfigError("--window: value must be positive");
  }

  StatsConfig echo;
  echo.input = args.input;
  echo.retention_ratio = args.retention;
  echo.alpha = args.alpha;
  echo.beta = args.beta;
  echo.patch_size = args.patch_size;
  echo.enable_tba = !args.no_tba;
  echo.enable_sba = !args.no_sba;
  echo.min_one_token_floor = !args.no_floor;
  echo.stream = args.stream;
  echo.stream_window = args.window;
  echo.timings = args.timings;
  const CompressionConfig cfg = echo.to_compression_config();

  const auto t_read = Clock::now();
  const VideoTokens video = read_tokens(args.input);
  const double read_ms = ms_since(t_read);

  const auto t_compress = Clock::now();
  RunStats stats;
  std::vector<SelectionMask> masks;
  std::int64_t retained = 0;
  if (args.stream) {
    StreamSession session(cfg);
    std::vector<StreamStep> steps;
    steps.reserve(video.frames());
    for (std::size_t t = 0; t < video.frames(); ++t) {
      steps.push_back(session.step(video.frame(t)));
    }
    for (const StreamStep& step : steps) {
      retained += step.budget;
      masks.push_back(step.mask);
    }
    stats = stats_from_stream(echo, steps);
  } else {
    CompressionResult result = compress_batch(video, cfg);
    retained = result.budgets.total;
    std::int64_t recount = 0;
    for (const SelectionMask& mask : result.masks) {
      recount += mask.selected_count;
    }
    if (recount != result.budgets.total) {
      throw BudgetError("compress: retained count diverged from the frame budgets");
    }
    stats = stats_from_batch(echo, result);
    masks = std::move(result.masks);
  }
  const double compress_ms = ms_since(t_compress);

  const auto t_write = Clock::now();
  if (!args.out_mask.empty()) {
    std::ofstream out = open_output(args.out_mask, "--out-mask");
    write_mask_json(masks, out);
  }
  if (!args.out_stats.empty()) {
    if (args.timings) {
      stats.timings.push_back(TimingRecord{"read_input", read_ms});
      stats.timings.push_back(TimingRecord{"compress", compress_ms});
      stats.timings.push_back(TimingRecord{"write_outputs", ms_since(t_write)});
    }
    std::ofstream out = open_output(args.out_stats, "--out-stats");
    write_stats_jsonl(stats, out);
  }

  std::cout << "frames=" << video.frames() << " tokens=" << video.tokens_per_frame()
            << " dim=" << video.dim() << " retained=" << retained << " of "
            << video.frames() * video.tokens_per_frame() << '\n';
}

struct SynthArgs {
  std::string out;
  std::size_t frames = 32;
  std::size_t tokens = 196;
  std::size_t dim = 32;
  double redundancy = 0.0;
  std::vector<double> schedule;
  std::int64_t bias_position = -1;
  double bias_strength = 0.0;
  std::uint64_t seed = 0;
};

void run_synth(const SynthArgs& args) {
  SynthSpec spec;
  spec.frames = args.frames;
  spec.tokens_per_frame = args.tokens;
  spec.dim = args.dim;
  if (!args.schedule.empty()) {
    spec.redundancy_schedule = args.schedule;
  } else {
    spec.redundancy_schedule.assign(args.frames, args.redundancy);
  }
  if (args.bias_position >= 0) {
    spec.bias_position = static_cast<std::size_t>(args.bias_position);
    spec.bias_strength = args.bias_strength;
  }
  spec.seed = args.seed;

  const VideoTokens video = synth_video(spec);
  write_tokens(video, args.out);
  std::cout << "wrote " << args.out << ": frames=" << video.frames()
            << " tokens=" << video.tokens_per_frame() << " dim=" << video.dim() << '\n';
}

struct BiasArgs {
  std::string input;
  std::size_t position = 0;
  double retention = 0.25;
  double alpha = 0.9;
  double beta = 0.1;
  std::size_t patch_size = 14;
  std::string out_curves;
  std::string out_heat;
};

void run_bias(const BiasArgs& args) {
  require_range(args.retention, 0.0, 1.0, true, "--retention");
  const VideoTokens video = read_tokens(args.input);
  if (args.position >= video.tokens_per_frame()) {
    throw ConfigError("--position: index exceeds the token count of the input");
  }

  CompressionConfig full;
  full.retention_ratio = args.retention;
  full.alpha = args.alpha;
  full.beta = args.beta;
  full.patch_size = args.patch_size;

  CompressionConfig ablation = full;
  ablation.enable_tba = false;
  ablation.enable_sba = false;

  const BiasCurve ours = bias_curve(video, full, args.position);
  const BiasCurve base = bias_curve(video, ablation, args.position);

  std::ostringstream curves;
  curves << "frame_index,cumulative_count,variant\n";
  for (std::size_t t = 0; t < video.frames(); ++t) {
    curves << t << ',' << ours.cumulative_selections[t] << ",dynatok\n";
  }
  for (std::size_t t = 0; t < video.frames(); ++t) {
    curves << t << ',' << base.cumulative_selections[t] << ",ablation\n";
  }
  if (!args.out_curves.empty()) {
    open_output(args.out_curves, "--out-curves") << curves.str();
  } else {
    std::cout << curves.str();
  }

  if (!args.out_heat.empty()) {
    const std::vector<double> heat = accumulated_activation(video);
    std::ofstream out = open_output(args.out_heat, "--out-heat");
    out << "token_index,value\n";
    for (std::size_t n = 0; n < heat.size(); ++n) {
      out << n << ',' << heat[n] << '\n';
    }
  }

  std::cout << "final counts: dynatok="
            << ours.cumulative_selections[video.frames() - 1]
            << " ablation=" << base.cumulative_selections[video.frames() - 1] << '\n';
}

struct BenchArgs {
  std::string input;
  std::vector<double> retentions = {1.0, 0.25, 0.1};
  std::size_t repeats = 20;
  std::uint64_t seed = 42;
  std::string out_csv;
};

void run_bench_cmd(const BenchArgs& args) {
  for (double r : args.retentions) {
    require_range(r, 0.0, 1.0, true, "--retentions");
  }
  if (args.repeats == 0) {
    throw ConfigError("--repeats: value must be positive");
  }

  VideoTokens video = [&] {
    if (!args.input.empty()) {
      return read_tokens(args.input);
    }
    SynthSpec spec;
    spec.redundancy_schedule.assign(spec.frames, 0.7);
    spec.seed = args.seed;
    return synth_video(spec);
  }();

  const CompressionConfig base;
  const std::vector<BenchRow> rows =
      run_bench(video, base, args.retentions, args.repeats);

  std::ostringstream csv;
  csv << "retention,retained_tokens,compress_ms_mean,compress_ms_stddev,"
         "downstream_ms_mean,downstream_ms_stddev,total_ms_mean,total_ms_stddev\n";
  std::cout << "retention  retained  compress_ms  downstream_ms  total_ms\n";
  for (const BenchRow& row : rows) {
    csv << row.retention << ',' << row.retained_tokens << ',' << row.compress_ms_mean
        << ',' << row.compress_ms_stddev << ',' << row.downstream_ms_mean << ','
        << row.downstream_ms_stddev << ',' << row.total_ms_mean << ','
        << row.total_ms_stddev << '\n';
    std::printf("%9.3f  %8lld  %11.3f  %13.3f  %8.3f\n", row.retention,
                static_cast<long long>(row.retained_tokens), row.compress_ms_mean,
                row.downstream_ms_mean, row.total_ms_mean);
  }
  if (!args.out_csv.empty()) {
    open_output(args.out_csv, "--out-csv") << csv.str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynatok: training-free video token compression"};
  app.require_subcommand(1);

  CompressArgs compress_args;
  CLI::App* compress = app.add_subcommand("compress", "Compress a DTOK tensor");
  compress->add_option("--input", compress_args.input, "Input .dtok file")->required();
  compress->add_option("--retention", compress_args.retention, "Retention ratio R in (0, 1]")
      ->required();
  compress->add_option("--alpha", compress_args.alpha, "EMA decay, (0, 1]");
  compress->add_option("--beta", compress_args.beta, "Redundancy penalty weight");
  compress->add_option("--patch-size", compress_args.patch_size, "Tokens per patch");
  compress->add_flag("--no-tba", compress_args.no_tba, "Uniform per-frame budgets");
  compress->add_flag("--no-sba", compress_args.no_sba, "Plain activation top-k per frame");
  compress->add_flag("--no-floor", compress_args.no_floor, "Allow zero-token frames");
  compress->add_flag("--stream", compress_args.stream, "Causal one-frame-at-a-time mode");
  compress->add_option("--window", compress_args.window, "Streaming delta window");
  compress->add_flag("--timings", compress_args.timings,
                     "Record wall-clock timings in stats (nondeterministic)");
  compress->add_option("--out-mask", compress_args.out_mask, "Selected-indices JSON");
  compress->add_option("--out-stats", compress_args.out_stats, "Run stats JSON-lines");
  compress->callback([&] { run_compress(compress_args); });

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic DTOK tensor");
  synth->add_option("--out", synth_args.out, "Output .dtok file")->required();
  synth->add_option("--frames", synth_args.frames, "Frame count T");
  synth->add_option("--tokens", synth_args.tokens, "Tokens per frame N");
  synth->add_option("--dim", synth_args.dim, "Feature dimension D");
  synth->add_option("--redundancy", synth_args.redundancy,
                    "Similarity of each frame to its predecessor, [0, 1]");
  synth->add_option("--schedule", synth_args.schedule,
                    "Per-frame redundancy list (overrides --redundancy)")
      ->delimiter(',');
  synth->add_option("--bias-position", synth_args.bias_position,
                    "Token index of the activation hotspot");
  synth->add_option("--bias-strength", synth_args.bias_strength, "Hotspot magnitude");
  synth->add_option("--seed", synth_args.seed, "RNG seed");
  synth->callback([&] { run_synth(synth_args); });

  BiasArgs bias_args;
  CLI::App* bias = app.add_subcommand("bias", "Positional-bias experiment");
  bias->add_option("--input", bias_args.input, "Input .dtok file")->required();
  bias->add_option("--position", bias_args.position, "Watched token index")->required();
  bias->add_option("--retention", bias_args.retention, "Retention ratio R in (0, 1]");
  bias->add_option("--alpha", bias_args.alpha, "EMA decay, (0, 1]");
  bias->add_option("--beta", bias_args.beta, "Redundancy penalty weight");
  bias->add_option("--patch-size", bias_args.patch_size, "Tokens per patch");
  bias->add_option("--out-curves", bias_args.out_curves, "Cumulative-selection CSV");
  bias->add_option("--out-heat", bias_args.out_heat, "Accumulated-activation CSV");
  bias->callback([&] { run_bias(bias_args); });

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Latency benchmark across retentions");
  bench->add_option("--input", bench_args.input, "Input .dtok file (default: synthetic)");
  bench->add_option("--retentions", bench_args.retentions, "Retention levels")
      ->delimiter(',');
  bench->add_option("--repeats", bench_args.repeats, "Repeats per level");
  bench->add_option("--seed", bench_args.seed, "Seed for the synthetic fallback input");
  bench->add_option("--out-csv", bench_args.out_csv, "Result table CSV");
  bench->callback([&] { run_bench_cmd(bench_args); });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const TokenFileError& e) {
    std::cerr << "error: " << e.what() << " (byte offset " << e.offset() << ")\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
