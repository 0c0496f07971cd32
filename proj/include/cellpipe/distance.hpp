#pragma once

#include <cstdint>
#include <vector>

#include "cellpipe/grid.hpp"

namespace cellpipe {

// Exact squared Euclidean distance transform (voxel units) of a seed mask:
// out[i] = min over seed voxels s of |p_i - p_s|^2, +inf encoded as a large
// finite float when the mask is empty. Three separable lower-envelope passes.
std::vector<float> squared_edt(const std::vector<std::uint8_t>& seeds, const GridDims& dims);
std::vector<float> squared_edt_serial(const std::vector<std::uint8_t>& seeds,
                                      const GridDims& dims);

// Boundary mask under 6-connectivity: voxel is boundary iff some in-grid
// face neighbor carries a different label.
std::vector<std::uint8_t> boundary_mask(const LabelGrid& labels);

}  // namespace cellpipe
