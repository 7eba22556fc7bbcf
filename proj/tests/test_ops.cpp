// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dynatok/errors.hpp"
#include "dynatok/ops.hpp"
#include "dynatok/video_tokens.hpp"

using namespace dynatok;

namespace {

double unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

VideoTokens random_video(std::mt19937_64& gen, std::size_t t, std::size_t n, std::size_t d) {
  std::vector<double> data(t * n * d);
  for (double& v : data) v = 2.0 * unit(gen) - 1.0;
  return VideoTokens(t, n, d, std::move(data));
}

}  // namespace

TEST_CASE("global_pool averages token vectors") {
  const VideoTokens video(1, 2, 2, {1.0, 3.0, 3.0, 1.0});
  const auto mean = global_pool(video.frame(0));
  CHECK(mean == std::vector<double>{2.0, 2.0});
}

TEST_CASE("global_pool is the identity on a single token") {
  const VideoTokens video(1, 1, 2, {5.0, -2.0});
  CHECK(global_pool(video.frame(0)) == std::vector<double>{5.0, -2.0});
}

TEST_CASE("global_pool matches per-component summation on random frames") {
  std::mt19937_64 gen(7);
  const VideoTokens video = random_video(gen, 1, 4, 3);
  const auto mean = global_pool(video.frame(0));
  for (std::size_t j = 0; j < 3; ++j) {
    double acc = 0.0;
    for (std::size_t n = 0; n < 4; ++n) acc += video.at(0, n, j);
    CHECK(mean[j] == doctest::Approx(acc / 4.0).epsilon(1e-15));
  }
}

TEST_CASE("global_pool is linear in the frame") {
  std::mt19937_64 gen(8);
  const VideoTokens video = random_video(gen, 1, 5, 4);
  std::vector<double> scaled = video.data();
  for (double& v : scaled) v *= 3.0;
  const VideoTokens video3(1, 5, 4, std::move(scaled));
  const auto a = global_pool(video.frame(0));
  const auto b = global_pool(video3.frame(0));
  for (std::size_t j = 0; j < 4; ++j) CHECK(b[j] == doctest::Approx(3.0 * a[j]).epsilon(1e-12));
}

TEST_CASE("l2_distance basics") {
  const std::vector<double> a{1.0, 2.0, 3.0};
  CHECK(l2_distance(a, a) == 0.0);
  CHECK(l2_distance(std::vector<double>{0.0, 0.0}, std::vector<double>{3.0, 4.0}) == 5.0);
  CHECK_THROWS_AS(l2_distance(a, std::vector<double>{1.0}), DimensionError);
}

TEST_CASE("l2_distance matches the sum-of-squares form and is a metric") {
  std::mt19937_64 gen(9);
  std::vector<double> a(8), b(8), c(8);
  for (int rep = 0; rep < 20; ++rep) {
    for (std::size_t i = 0; i < 8; ++i) {
      a[i] = 2.0 * unit(gen) - 1.0;
      b[i] = 2.0 * unit(gen) - 1.0;
      c[i] = 2.0 * unit(gen) - 1.0;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < 8; ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    CHECK(l2_distance(a, b) == doctest::Approx(std::sqrt(acc)).epsilon(1e-14));
    CHECK(l2_distance(a, b) == l2_distance(b, a));
    CHECK(l2_distance(a, c) <= l2_distance(a, b) + l2_distance(b, c) + 1e-12);
  }
}

TEST_CASE("cosine_sim conventions") {
  CHECK(cosine_sim(std::vector<double>{1.0, 0.0}, std::vector<double>{2.0, 0.0}) == 1.0);
  CHECK(cosine_sim(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 0.0}) == 0.0);
  CHECK(cosine_sim(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, -1.0}) == 0.0);
  CHECK_THROWS_AS(cosine_sim(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
                  DimensionError);
}

TEST_CASE("cosine_sim hits +-1 on scaled copies and stays in range") {
  std::mt19937_64 gen(10);
  std::vector<double> a(6), b(6);
  for (int rep = 0; rep < 50; ++rep) {
    for (std::size_t i = 0; i < 6; ++i) {
      a[i] = 2.0 * unit(gen) - 1.0;
      b[i] = 2.0 * unit(gen) - 1.0;
    }
    std::vector<double> pos = a;
    std::vector<double> neg = a;
    for (std::size_t i = 0; i < 6; ++i) {
      pos[i] *= 2.5;
      neg[i] *= -0.3;
    }
    CHECK(cosine_sim(a, pos) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cosine_sim(a, neg) == doctest::Approx(-1.0).epsilon(1e-9));
    const double s = cosine_sim(a, b);
    CHECK(s >= -1.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("minmax_normalize endpoints and conventions") {
  CHECK(minmax_normalize(std::vector<double>{2.0, 4.0}) == std::vector<double>{0.0, 1.0});
  CHECK(minmax_normalize(std::vector<double>{7.0, 7.0, 7.0}) ==
        std::vector<double>{0.5, 0.5, 0.5});
  const auto out = minmax_normalize(std::vector<double>{1.0, 2.0, 5.0});
  CHECK(out[0] == 0.0);
  CHECK(out[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(out[2] == 1.0);
  CHECK_THROWS_AS(minmax_normalize(std::vector<double>{}), DimensionError);
}

TEST_CASE("minmax_normalize preserves range and extrema positions") {
  std::mt19937_64 gen(11);
  std::vector<double> v(40);
  for (int rep = 0; rep < 20; ++rep) {
    for (double& x : v) x = 10.0 * unit(gen) - 5.0;
    const auto out = minmax_normalize(v);
    std::size_t raw_max = 0, raw_min = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] > v[raw_max]) raw_max = i;
      if (v[i] < v[raw_min]) raw_min = i;
      CHECK(out[i] >= 0.0);
      CHECK(out[i] <= 1.0);
    }
    CHECK(out[raw_max] == 1.0);
    CHECK(out[raw_min] == 0.0);
  }
}
