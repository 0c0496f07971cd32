#pragma once

#include "cellpipe/grid.hpp"

namespace cellpipe {

// Separable Gaussian blur, sigma in voxels, kernel truncated at 3*sigma and
// renormalized, reflect boundary handling. sigma == 0 returns the input.
//
// The OpenMP variant parallelizes over independent output lines; each output
// voxel is a sequential sum over fixed taps, so results are bitwise identical
// to the serial variant for every thread count.
GridF32 gaussian_blur(const GridF32& in, double sigma);
GridF32 gaussian_blur_serial(const GridF32& in, double sigma);

// One truncated-Gaussian pass along a single axis (0=x, 1=y, 2=z) with
// zero padding. Building block of the CRF message filtering.
void gaussian_pass_zero(const float* in, float* out, const GridDims& dims, int axis,
                        const std::vector<float>& taps, bool parallel);

// Normalized taps for exp(-d^2 / (2 sigma^2)), d = -r..r, r = ceil(3 sigma).
std::vector<float> gaussian_taps(double sigma, bool normalized);

}  // namespace cellpipe
