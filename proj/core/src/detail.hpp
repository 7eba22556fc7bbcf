// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "dynatok/pipeline.hpp"
#include "dynatok/spatial.hpp"

namespace dynatok::detail {

/// Patch layout used by both execution modes: k-token patches, or one
/// whole-frame patch when SBA is disabled.
PatchPartition make_partition(std::size_t tokens, const CompressionConfig& cfg);

/// One frame of Stage 2: activation, patch apportionment, redundancy-aware
/// ranking, selection, and (SBA on) the memory update.
SelectionMask select_frame(const FrameView& frame, const PatchPartition& part,
                           SpatialMemory& memory, std::int64_t frame_budget,
                           const CompressionConfig& cfg);

}  // namespace dynatok::detail
