// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <random>
#include <vector>

#include "dynatok/token_file.hpp"
#include "dynatok/video_tokens.hpp"

using namespace dynatok;

namespace {

// Values that survive the 32-bit round trip exactly.
VideoTokens random_f32_video(std::mt19937_64& gen, std::size_t t, std::size_t n,
                             std::size_t d) {
  std::vector<double> data(t * n * d);
  for (double& v : data) {
    const auto f = static_cast<float>(static_cast<double>(gen() >> 11) * 0x1.0p-53 * 4.0 - 2.0);
    v = static_cast<double>(f);
  }
  return VideoTokens(t, n, d, std::move(data));
}

void put_u32(std::vector<std::uint8_t>& bytes, std::size_t at, std::uint32_t v) {
  bytes[at] = static_cast<std::uint8_t>(v & 0xff);
  bytes[at + 1] = static_cast<std::uint8_t>((v >> 8) & 0xff);
  bytes[at + 2] = static_cast<std::uint8_t>((v >> 16) & 0xff);
  bytes[at + 3] = static_cast<std::uint8_t>((v >> 24) & 0xff);
}

TokenFileErrorKind kind_of(const std::vector<std::uint8_t>& bytes, std::size_t* offset) {
  try {
    decode_tokens(bytes);
  } catch (const TokenFileError& e) {
    *offset = e.offset();
    return e.kind();
  }
  FAIL("decode accepted a corrupt image");
  return TokenFileErrorKind::io;
}

}  // namespace

TEST_CASE("encode and decode round-trip byte for byte") {
  std::mt19937_64 gen(71);
  const VideoTokens video = random_f32_video(gen, 4, 28, 8);
  const auto bytes = encode_tokens(video);
  CHECK(bytes.size() == kTokenFileHeaderSize + 4ull * 28 * 8 * 4);
  CHECK(bytes[0] == 'D');
  CHECK(bytes[1] == 'T');
  CHECK(bytes[2] == 'O');
  CHECK(bytes[3] == 'K');
  const VideoTokens decoded = decode_tokens(bytes);
  CHECK(decoded.data() == video.data());
  CHECK(encode_tokens(decoded) == bytes);
}

TEST_CASE("file round-trip preserves the image") {
  std::mt19937_64 gen(72);
  const VideoTokens video = random_f32_video(gen, 2, 10, 5);
  const auto path = std::filesystem::temp_directory_path() / "dynatok_roundtrip.dtok";
  write_tokens(video, path);
  const VideoTokens loaded = read_tokens(path);
  CHECK(loaded.frames() == 2);
  CHECK(loaded.tokens_per_frame() == 10);
  CHECK(loaded.dim() == 5);
  CHECK(loaded.data() == video.data());
  std::filesystem::remove(path);
}

TEST_CASE("a wrong magic fails at offset zero") {
  std::mt19937_64 gen(73);
  auto bytes = encode_tokens(random_f32_video(gen, 1, 4, 2));
  bytes[0] = 'X';
  std::size_t offset = 0;
  CHECK(kind_of(bytes, &offset) == TokenFileErrorKind::bad_magic);
  CHECK(offset == 0);
}

TEST_CASE("an unsupported version fails at its header slot") {
  std::mt19937_64 gen(74);
  auto bytes = encode_tokens(random_f32_video(gen, 1, 4, 2));
  bytes[4] = 2;
  std::size_t offset = 0;
  CHECK(kind_of(bytes, &offset) == TokenFileErrorKind::bad_version);
  CHECK(offset == 4);
}

TEST_CASE("zero dims are rejected as bad dimensions") {
  std::mt19937_64 gen(75);
  auto bytes = encode_tokens(random_f32_video(gen, 1, 4, 2));
  put_u32(bytes, 10, 0);
  std::size_t offset = 0;
  CHECK(kind_of(bytes, &offset) == TokenFileErrorKind::bad_dims);
  CHECK(offset == 10);
}

TEST_CASE("a payload shorter than the header claims is a truncation") {
  std::mt19937_64 gen(76);
  auto bytes = encode_tokens(random_f32_video(gen, 1, 4, 2));
  bytes.resize(bytes.size() - 5);
  std::size_t offset = 0;
  CHECK(kind_of(bytes, &offset) == TokenFileErrorKind::truncated);
  CHECK(offset == bytes.size());
}

TEST_CASE("a file too short for the header is a truncation") {
  const std::vector<std::uint8_t> tiny{'D', 'T', 'O', 'K', 1, 0, 3};
  std::size_t offset = 0;
  CHECK(kind_of(tiny, &offset) == TokenFileErrorKind::truncated);
  CHECK(offset == tiny.size());
}

TEST_CASE("trailing bytes after the payload are bad dimensions") {
  std::mt19937_64 gen(77);
  auto bytes = encode_tokens(random_f32_video(gen, 1, 4, 2));
  const std::size_t expected = bytes.size();
  bytes.push_back(0);
  std::size_t offset = 0;
  CHECK(kind_of(bytes, &offset) == TokenFileErrorKind::bad_dims);
  CHECK(offset == expected);
}

TEST_CASE("dims whose product overflows are bad dimensions") {
  std::mt19937_64 gen(78);
  auto bytes = encode_tokens(random_f32_video(gen, 1, 4, 2));
  put_u32(bytes, 6, 0xffffffffu);
  put_u32(bytes, 10, 0xffffffffu);
  put_u32(bytes, 14, 0xffffffffu);
  std::size_t offset = 0;
  CHECK(kind_of(bytes, &offset) == TokenFileErrorKind::bad_dims);
}

TEST_CASE("non-finite payload values are called out by offset") {
  std::mt19937_64 gen(79);
  auto bytes = encode_tokens(random_f32_video(gen, 1, 4, 2));
  // 0x7fc00000 is a quiet NaN; element 3 starts 12 bytes into the payload.
  const std::size_t at = kTokenFileHeaderSize + 3 * 4;
  bytes[at] = 0x00;
  bytes[at + 1] = 0x00;
  bytes[at + 2] = 0xc0;
  bytes[at + 3] = 0x7f;
  std::size_t offset = 0;
  CHECK(kind_of(bytes, &offset) == TokenFileErrorKind::non_finite_payload);
  CHECK(offset == at);
}

TEST_CASE("values that overflow binary32 refuse to encode") {
  const VideoTokens video(1, 1, 2, {1e300, 0.0});
  CHECK_THROWS_AS(encode_tokens(video), TokenFileError);
}

TEST_CASE("missing files surface as io errors") {
  try {
    read_tokens("/nonexistent/dynatok/tokens.dtok");
    FAIL("read_tokens accepted a missing path");
  } catch (const TokenFileError& e) {
    CHECK(e.kind() == TokenFileErrorKind::io);
  }
}
