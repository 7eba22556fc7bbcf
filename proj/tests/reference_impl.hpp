// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Plain-loop reference implementation of the full two-stage selection,
// written independently of the library so tests can cross-check masks.
// Everything lives in one straight-line pass over raw arrays: no library
// headers, no shared helpers.
namespace refimpl {

struct Params {
  double retention = 0.25;
  double alpha = 0.9;
  double beta = 0.1;
  std::size_t patch_size = 14;
  bool floor_one = true;
};

// data is frame-major, length frames * tokens * dim. Returns one 0/1 row
// per frame, length `tokens`.
std::vector<std::vector<std::uint8_t>> reference_masks(const std::vector<double>& data,
                                                       std::size_t frames,
                                                       std::size_t tokens,
                                                       std::size_t dim,
                                                       const Params& params);

}  // namespace refimpl
