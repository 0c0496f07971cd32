#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "cellpipe/grid.hpp"

namespace cellpipe {

enum class Dtype : std::uint8_t { U8 = 0, U16 = 1, F32 = 2, U32 = 3 };

// Dynamically typed stack as stored on disk. Image stacks are u8/u16/f32;
// u32 is reserved for label grids.
struct VoxelGrid {
    GridDims dims;
    Spacing spacing;
    Dtype dtype = Dtype::U8;
    std::variant<std::vector<std::uint8_t>, std::vector<std::uint16_t>, std::vector<float>,
                 std::vector<std::uint32_t>>
        data;

    std::size_t voxel_count() const { return dims.count(); }

    template <typename T>
    const std::vector<T>& as() const {
        return std::get<std::vector<T>>(data);
    }

    template <typename T>
    static VoxelGrid from(const Grid3<T>& g);
};

template <>
inline VoxelGrid VoxelGrid::from<std::uint8_t>(const GridU8& g) {
    return {g.dims, g.spacing, Dtype::U8, g.data};
}
template <>
inline VoxelGrid VoxelGrid::from<std::uint16_t>(const GridU16& g) {
    return {g.dims, g.spacing, Dtype::U16, g.data};
}
template <>
inline VoxelGrid VoxelGrid::from<float>(const GridF32& g) {
    return {g.dims, g.spacing, Dtype::F32, g.data};
}
template <>
inline VoxelGrid VoxelGrid::from<std::uint32_t>(const LabelGrid& g) {
    return {g.dims, g.spacing, Dtype::U32, g.data};
}

// VXG1 container, little-endian throughout:
//   bytes 0-3   magic "VXG1"
//   byte  4     dtype code (0=u8, 1=u16, 2=f32, 3=u32)
//   bytes 5-7   zero
//   bytes 8-19  u32 nx, ny, nz
//   bytes 20-31 f32 sx, sy, sz (micrometers)
//   payload     raw voxels, x-fastest
inline constexpr std::size_t kVxgHeaderSize = 32;

VoxelGrid read_stack(const std::string& path);
void write_stack(const VoxelGrid& grid, const std::string& path);

// Typed conveniences for the common cases.
LabelGrid read_labels(const std::string& path);
void write_labels(const LabelGrid& labels, const std::string& path);
GridF32 read_f32(const std::string& path);

// Classical segmentation frontend: min-max rescale of the intensity stack to
// [0,1] (optionally inverted). A constant-valued stack maps to all 0.5 so the
// downstream watershed stays well-defined.
ProbabilityMap intensity_to_probability(const VoxelGrid& grid, bool invert);

// Checks the label-grid invariants: contiguous label set {0} u 1..L and one
// 26-connected component per nonzero label. Throws on violation.
void validate_label_grid(const LabelGrid& labels);

}  // namespace cellpipe
