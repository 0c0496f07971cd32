#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cellpipe/errors.hpp"

namespace cellpipe {

struct GridDims {
    int nx = 0, ny = 0, nz = 0;

    std::size_t count() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
               static_cast<std::size_t>(nz);
    }
    bool operator==(const GridDims&) const = default;
};

// Physical voxel pitch in micrometers per axis.
struct Spacing {
    float sx = 1.0f, sy = 1.0f, sz = 1.0f;

    double voxel_volume() const {
        return static_cast<double>(sx) * static_cast<double>(sy) * static_cast<double>(sz);
    }
    bool positive() const { return sx > 0.0f && sy > 0.0f && sz > 0.0f; }
    bool operator==(const Spacing&) const = default;
};

// Dense 3D scalar field. Memory order is x-fastest, then y, then z:
// index(x,y,z) = x + nx*(y + ny*z). Immutable after construction by
// convention, so grids are safe to share read-only across threads.
template <typename T>
struct Grid3 {
    GridDims dims;
    Spacing spacing;
    std::vector<T> data;

    Grid3() = default;
    Grid3(GridDims d, Spacing s, T fill = T{}) : dims(d), spacing(s), data(d.count(), fill) {}

    std::size_t index(int x, int y, int z) const {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(dims.nx) *
                   (static_cast<std::size_t>(y) +
                    static_cast<std::size_t>(dims.ny) * static_cast<std::size_t>(z));
    }
    T& at(int x, int y, int z) { return data[index(x, y, z)]; }
    const T& at(int x, int y, int z) const { return data[index(x, y, z)]; }

    bool in_bounds(int x, int y, int z) const {
        return x >= 0 && x < dims.nx && y >= 0 && y < dims.ny && z >= 0 && z < dims.nz;
    }
    std::size_t size() const { return data.size(); }

    bool same_geometry(const Grid3& other) const {
        return dims == other.dims && spacing == other.spacing;
    }
    bool operator==(const Grid3&) const = default;
};

using GridU8 = Grid3<std::uint8_t>;
using GridU16 = Grid3<std::uint16_t>;
using GridF32 = Grid3<float>;

// Per-voxel probability of being a cell wall; values constrained to [0,1].
using ProbabilityMap = Grid3<float>;

// Cell labels, 0 = background, 1..L cells. After compaction the nonzero
// label set is contiguous and every label is one 26-connected component.
using LabelGrid = Grid3<std::uint32_t>;

inline void require_same_geometry(const GridDims& a, const GridDims& b, const char* what) {
    if (!(a == b)) throw GeometryMismatch(what);
}

inline void validate_probability_map(const ProbabilityMap& p) {
    for (float v : p.data) {
        if (!(v >= 0.0f && v <= 1.0f)) throw NonFiniteData("probability value outside [0,1]");
    }
}

// Largest label value present (0 when the grid is all background).
inline std::uint32_t max_label(const LabelGrid& g) {
    std::uint32_t m = 0;
    for (std::uint32_t v : g.data) m = std::max(m, v);
    return m;
}

// 26-neighborhood offsets (all |d|inf == 1), fixed scan order.
inline const std::array<std::array<int, 3>, 26>& neighbors26() {
    static const auto offs = [] {
        std::array<std::array<int, 3>, 26> o{};
        int n = 0;
        for (int dz = -1; dz <= 1; ++dz)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0 && dz == 0) continue;
                    o[n++] = {dx, dy, dz};
                }
        return o;
    }();
    return offs;
}

// 6-neighborhood (face) offsets.
inline const std::array<std::array<int, 3>, 6>& neighbors6() {
    static const std::array<std::array<int, 3>, 6> o = {
        {{-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}}};
    return o;
}

struct Vec3d {
    double x = 0, y = 0, z = 0;

    Vec3d operator-(const Vec3d& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3d operator+(const Vec3d& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3d operator*(double k) const { return {x * k, y * k, z * k}; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    bool operator==(const Vec3d&) const = default;
};

inline double distance(const Vec3d& a, const Vec3d& b, bool planar = false) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = planar ? 0.0 : a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace cellpipe
