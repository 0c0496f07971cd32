#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cellpipe/grid.hpp"

namespace cellpipe {

// One of the 24 orientation-preserving symmetries of the cube: a signed
// permutation matrix with determinant +1. Index 0 is the identity.
struct Rotation {
    int index = 0;
    std::array<std::array<int, 3>, 3> matrix{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    std::array<int, 3> apply(const std::array<int, 3>& p) const {
        std::array<int, 3> q{};
        for (int r = 0; r < 3; ++r)
            q[r] = matrix[r][0] * p[0] + matrix[r][1] * p[1] + matrix[r][2] * p[2];
        return q;
    }
    bool operator==(const Rotation& o) const { return matrix == o.matrix; }
};

inline constexpr int kGroupSize = 24;

// All 24 rotations in a fixed, deterministic order (identity first).
const std::vector<Rotation>& octahedral_group();

// Cayley table: multiply(g, h) = index of R_g * R_h.
int group_multiply(int g, int h);
int group_inverse(int g);

// Moves the voxel at position p to g*p about the grid center. Pure index
// arithmetic, no interpolation, hence exact for every dtype. Output dims are
// the input dims permuted by the rotation axes; pass require_same_dims to get
// NonCubicGrid instead of a permuted-dims result.
template <typename T>
Grid3<T> rotate_grid(const Grid3<T>& in, const Rotation& g, bool require_same_dims = false);

// Same action on a bare k*k*k cube (used for kernel rotation).
void rotate_cube(std::span<const float> in, std::span<float> out, int k, const Rotation& g);

}  // namespace cellpipe
