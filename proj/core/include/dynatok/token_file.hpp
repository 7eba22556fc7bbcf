// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynatok/video_tokens.hpp"

namespace dynatok {

/// DTOK container, version 1. Little-endian throughout:
///   offset 0  magic "DTOK" (4 bytes)
///   offset 4  version  u16
///   offset 6  frames   u32
///   offset 10 tokens   u32
///   offset 14 dim      u32
///   offset 18 payload  frames*tokens*dim IEEE-754 binary32, frame-major
///
/// Storage is 32-bit; in-memory math runs in 64-bit. Round-trips are
/// byte-exact: encode(decode(bytes)) == bytes for any valid file.
inline constexpr std::uint16_t kTokenFileVersion = 1;
inline constexpr std::size_t kTokenFileHeaderSize = 18;

enum class TokenFileErrorKind {
  io,
  bad_magic,
  bad_version,
  bad_dims,
  truncated,
  non_finite_payload,
};

/// Parse or I/O failure; offset() is the byte position of the problem.
/// Nothing partial is ever returned.
class TokenFileError : public std::runtime_error {
 public:
  TokenFileError(TokenFileErrorKind kind, std::size_t offset, const std::string& what)
      : std::runtime_error(what), kind_(kind), offset_(offset) {}

  TokenFileErrorKind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  TokenFileErrorKind kind_;
  std::size_t offset_;
};

/// Parses a complete DTOK byte image. Throws TokenFileError on any defect:
/// bad magic (offset 0), unsupported version (offset 4), zero or oversized
/// dims and trailing bytes (bad_dims), short payloads (truncated), and
/// NaN/Inf payload values (non_finite_payload, offset of the bad value).
VideoTokens decode_tokens(std::span<const std::uint8_t> bytes);

/// Serializes to a DTOK byte image. Values must fit in binary32; a value
/// that would overflow to infinity throws non_finite_payload.
std::vector<std::uint8_t> encode_tokens(const VideoTokens& video);

VideoTokens read_tokens(const std::filesystem::path& path);
void write_tokens(const VideoTokens& video, const std::filesystem::path& path);

}  // namespace dynatok
