// SPDX-License-Identifier: Apache-2.0
#include "dynatok/token_file.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

namespace dynatok {
namespace {

constexpr char kMagic[4] = {'D', 'T', 'O', 'K'};

constexpr std::size_t kVersionOffset = 4;
constexpr std::size_t kDimsOffset = 6;

std::uint16_t load_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (std::uint16_t{p[1]} << 8));
}

std::uint32_t load_u32(const std::uint8_t* p) {
  return p[0] | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}

void store_u16(std::uint16_t v, std::vector<std::uint8_t>& out) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void store_u32(std::uint32_t v, std::vector<std::uint8_t>& out) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
  }
}

}  // namespace

VideoTokens decode_tokens(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) {
    throw TokenFileError(TokenFileErrorKind::truncated, bytes.size(),
                         "token file: shorter than the magic");
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw TokenFileError(TokenFileErrorKind::bad_magic, 0,
                         "token file: magic is not DTOK");
  }
  if (bytes.size() < kTokenFileHeaderSize) {
    throw TokenFileError(TokenFileErrorKind::truncated, bytes.size(),
                         "token file: truncated header");
  }
  const std::uint16_t version = load_u16(bytes.data() + kVersionOffset);
  if (version != kTokenFileVersion) {
    throw TokenFileError(TokenFileErrorKind::bad_version, kVersionOffset,
                         "token file: unsupported version " + std::to_string(version));
  }
  const std::uint64_t dims[3] = {load_u32(bytes.data() + kDimsOffset),
                                 load_u32(bytes.data() + kDimsOffset + 4),
                                 load_u32(bytes.data() + kDimsOffset + 8)};
  for (int i = 0; i < 3; ++i) {
    if (dims[i] == 0) {
      throw TokenFileError(TokenFileErrorKind::bad_dims, kDimsOffset + 4 * i,
                           "token file: zero dimension");
    }
  }
  // u32 * u32 * u32 * 4 fits in u128 territory; guard the u64 products.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
  if (dims[0] > limit / dims[1] || dims[0] * dims[1] > limit / dims[2] ||
      dims[0] * dims[1] * dims[2] > (limit - kTokenFileHeaderSize) / 4) {
    throw TokenFileError(TokenFileErrorKind::bad_dims, kDimsOffset,
                         "token file: dimensions overflow the addressable payload");
  }
  const std::uint64_t count = dims[0] * dims[1] * dims[2];
  const std::uint64_t expected = kTokenFileHeaderSize + count * 4;
  if (bytes.size() < expected) {
    throw TokenFileError(TokenFileErrorKind::truncated, bytes.size(),
                         "token file: payload ends at " + std::to_string(bytes.size()) +
                             " of " + std::to_string(expected) + " bytes");
  }
  if (bytes.size() > expected) {
    throw TokenFileError(TokenFileErrorKind::bad_dims, expected,
                         "token file: trailing bytes after payload");
  }

  std::vector<double> data(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::size_t off = kTokenFileHeaderSize + i * 4;
    const float f = std::bit_cast<float>(load_u32(bytes.data() + off));
    if (!std::isfinite(f)) {
      throw TokenFileError(TokenFileErrorKind::non_finite_payload, off,
                           "token file: non-finite payload value");
    }
    data[i] = static_cast<double>(f);
  }
  return VideoTokens(dims[0], dims[1], dims[2], std::move(data));
}

std::vector<std::uint8_t> encode_tokens(const VideoTokens& video) {
  constexpr std::size_t kDimMax = std::numeric_limits<std::uint32_t>::max();
  if (video.frames() > kDimMax || video.tokens_per_frame() > kDimMax ||
      video.dim() > kDimMax) {
    throw TokenFileError(TokenFileErrorKind::bad_dims, kDimsOffset,
                         "token file: dimension exceeds the u32 header field");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kTokenFileHeaderSize + video.size() * 4);
  out.insert(out.end(), kMagic, kMagic + 4);
  store_u16(kTokenFileVersion, out);
  store_u32(static_cast<std::uint32_t>(video.frames()), out);
  store_u32(static_cast<std::uint32_t>(video.tokens_per_frame()), out);
  store_u32(static_cast<std::uint32_t>(video.dim()), out);
  const std::vector<double>& data = video.data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const float f = static_cast<float>(data[i]);
    if (!std::isfinite(f)) {
      throw TokenFileError(TokenFileErrorKind::non_finite_payload,
                           kTokenFileHeaderSize + i * 4,
                           "token file: value does not fit in binary32");
    }
    store_u32(std::bit_cast<std::uint32_t>(f), out);
  }
  return out;
}

VideoTokens read_tokens(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw TokenFileError(TokenFileErrorKind::io, 0,
                         "token file: cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw TokenFileError(TokenFileErrorKind::io, bytes.size(),
                         "token file: read failed for " + path.string());
  }
  return decode_tokens(bytes);
}

void write_tokens(const VideoTokens& video, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = encode_tokens(video);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw TokenFileError(TokenFileErrorKind::io, 0,
                         "token file: cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw TokenFileError(TokenFileErrorKind::io, 0,
                         "token file: write failed for " + path.string());
  }
}

}  // namespace dynatok
