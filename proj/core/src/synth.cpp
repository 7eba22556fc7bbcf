// SPDX-License-Identifier: Apache-2.0
#include "dynatok/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dynatok/errors.hpp"
#include "dynatok/ops.hpp"

namespace dynatok {
namespace {

constexpr double kTau = 6.283185307179586476925286766559;
// Hotspot neighborhood width, in tokens. About two-thirds of the default
// patch size, wide enough that the hotspot's patch-mates stay competitive.
constexpr double kHotspotSigma = 10.0;
constexpr double kEnvelopeLo = 0.25;

// Top 53 bits of the engine output as a double in [0, 1). Deterministic on
// every platform, unlike std::uniform_real_distribution.
double unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double signed_unit(std::mt19937_64& gen) { return 2.0 * unit(gen) - 1.0; }

// Sum of three random harmonics, affine-mapped to [kEnvelopeLo, 1].
std::vector<double> envelope(std::mt19937_64& gen, std::size_t tokens) {
  double amp[3];
  double freq[3];
  double phase[3];
  for (int h = 0; h < 3; ++h) {
    amp[h] = unit(gen);
    freq[h] = 1.0 + std::floor(unit(gen) * 4.0);
    phase[h] = unit(gen) * kTau;
  }
  std::vector<double> env(tokens);
  for (std::size_t n = 0; n < tokens; ++n) {
    double v = 0.0;
    for (int h = 0; h < 3; ++h) {
      v += amp[h] * std::cos(kTau * freq[h] * static_cast<double>(n) /
                                 static_cast<double>(tokens) +
                             phase[h]);
    }
    env[n] = v;
  }
  const std::vector<double> norm = minmax_normalize(env);
  for (std::size_t n = 0; n < tokens; ++n) {
    env[n] = kEnvelopeLo + (1.0 - kEnvelopeLo) * norm[n];
  }
  return env;
}

}  // namespace

VideoTokens synth_video(const SynthSpec& spec) {
  const std::size_t t_count = spec.frames;
  const std::size_t n_tokens = spec.tokens_per_frame;
  const std::size_t d = spec.dim;
  if (t_count == 0 || n_tokens == 0 || d == 0) {
    throw ConfigError("synth_video: frames, tokens, dim must be positive");
  }
  if (!spec.redundancy_schedule.empty() && spec.redundancy_schedule.size() != t_count) {
    throw ConfigError("synth_video: redundancy schedule must have one entry per frame");
  }
  for (double r : spec.redundancy_schedule) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw ConfigError("synth_video: redundancy coefficients must lie in [0, 1]");
    }
  }
  if (spec.bias_position >= n_tokens) {
    throw ConfigError("synth_video: bias_position out of range");
  }
  if (!(spec.bias_strength >= 0.0)) {
    throw ConfigError("synth_video: bias_strength must be non-negative");
  }

  std::mt19937_64 gen(spec.seed);
  const std::size_t frame_len = n_tokens * d;
  std::vector<double> data(t_count * frame_len);
  std::vector<double> fresh(frame_len);
  // The recurrence runs on the unbiased base; the hotspot is stamped on the
  // output copy so it does not compound through redundant frames.
  std::vector<double> base(frame_len);
  std::vector<double> prev_base(frame_len);

  for (std::size_t t = 0; t < t_count; ++t) {
    const std::vector<double> env = envelope(gen, n_tokens);
    for (std::size_t n = 0; n < n_tokens; ++n) {
      for (std::size_t j = 0; j < d; ++j) {
        fresh[n * d + j] = env[n] * signed_unit(gen);
      }
    }
    if (t == 0) {
      base = fresh;
    } else {
      const double r = spec.redundancy_schedule.empty() ? 0.0 : spec.redundancy_schedule[t];
      for (std::size_t i = 0; i < frame_len; ++i) {
        base[i] = r * prev_base[i] + (1.0 - r) * fresh[i];
      }
    }
    double* frame = data.data() + t * frame_len;
    std::copy(base.begin(), base.end(), frame);
    if (spec.bias_strength > 0.0) {
      for (std::size_t n = 0; n < n_tokens; ++n) {
        const double dist = static_cast<double>(n) - static_cast<double>(spec.bias_position);
        const double bump =
            spec.bias_strength * std::exp(-0.5 * (dist / kHotspotSigma) * (dist / kHotspotSigma));
        for (std::size_t j = 0; j < d; ++j) {
          double& x = frame[n * d + j];
          x += (x >= 0.0 ? bump : -bump);
        }
      }
    }
    std::swap(base, prev_base);
  }
  return VideoTokens(t_count, n_tokens, d, std::move(data));
}

}  // namespace dynatok
