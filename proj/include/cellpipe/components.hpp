#pragma once

#include <cstdint>
#include <vector>

#include "cellpipe/grid.hpp"

namespace cellpipe {

enum class Connectivity { C6, C26 };

// Labels the connected components of a boolean mask. Components are numbered
// 1..K in scan order of their first voxel; zero marks mask-off voxels.
// Returns the component grid and writes K to out_count if non-null.
std::vector<std::uint32_t> label_mask_components(const std::vector<std::uint8_t>& mask,
                                                 const GridDims& dims, Connectivity conn,
                                                 std::uint32_t* out_count = nullptr);

// Number of connected components formed by the voxels carrying `label`.
std::size_t count_label_components(const LabelGrid& labels, std::uint32_t label,
                                   Connectivity conn);

// Labels the constant-value plateaus of a scalar field (components of equal
// value under the given connectivity). Used for regional-minima detection.
std::vector<std::uint32_t> label_plateaus(const GridF32& field, Connectivity conn,
                                          std::uint32_t* out_count = nullptr);

}  // namespace cellpipe
