#pragma once

#include <cstdint>

#include "cellpipe/grid.hpp"

namespace cellpipe {

struct SeedParams {
    double smooth_sigma = 2.0;        // Gaussian sigma in voxels
    double h_min = 0.1;               // minima suppression depth (probability)
    double border_bg_threshold = 0.3; // low-probability border components -> background

    void validate() const;
};

// Seed label reserved for the background; resolved to 0 after the flood.
inline constexpr std::uint32_t kBackgroundSeed = 0xffffffffu;

// Grayscale reconstruction by erosion of `marker` over `mask` (marker >= mask
// pointwise), 26-connectivity. Two raster sweeps plus a FIFO propagation.
GridF32 reconstruct_by_erosion(const GridF32& marker, const GridF32& mask);

// Regional minima: 26-connected plateaus all of whose outer neighbors are
// strictly greater. A plateau covering the whole grid does not count.
// Returns minima component labels 1..K (0 elsewhere).
LabelGrid regional_minima(const GridF32& field, std::uint32_t* out_count = nullptr);

// Smooth, suppress shallow minima at depth h_min, then label each remaining
// 26-connected regional minimum as one seed. Low-probability components
// touching the stack border become the background seed; minima inside them
// are not emitted as cells. Throws NoSeedsFound when no cell seed remains.
LabelGrid generate_seeds(const ProbabilityMap& prob, const SeedParams& p);

// Priority flood from the seeds, ascending probability, ties popped in
// lexicographic (z,y,x) order. A popped voxel takes the label of its already
// labeled 26-neighbor with minimal (probability, index). Deterministic;
// the background seed resolves to label 0 in the result.
LabelGrid run_watershed(const ProbabilityMap& prob, const LabelGrid& seeds);

// Quadratic reference flood: rescans for the global minimum frontier voxel
// every step. Used by tests to pin the optimized queue's behavior.
LabelGrid run_watershed_reference(const ProbabilityMap& prob, const LabelGrid& seeds);

}  // namespace cellpipe
