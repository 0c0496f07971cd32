#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cellpipe/cell_graph.hpp"
#include "cellpipe/grid.hpp"

namespace cellpipe {

// Meeting point of three cell walls. The location is the centroid of the
// 26-connected cluster of junction voxels, so fractional coordinates are
// normal; one junction is reported even when the triple line spans many z.
struct Junction {
    std::array<std::uint32_t, 3> cells;  // sorted ascending
    Vec3d location;                      // voxel coordinates
};

// Anticlinal wall segment between two cells: ordered 3D point sequence in
// voxel coordinates, physical length in micrometers.
struct Polyline {
    std::uint32_t cell_a = 0, cell_b = 0;
    std::vector<Vec3d> points;
    double length_um = 0.0;
};

// 2D shape of the maximum-area z-plane of a cell.
struct ShapeDescriptors {
    int z_plane = 0;
    double area = 0.0;       // um^2
    double perimeter = 0.0;  // um, exposed 4-neighbor pixel edges
    double circularity = 0.0;
    double aspect_ratio = 1.0;
    double solidity = 1.0;
};

struct CellVolume {
    std::size_t voxels = 0;
    double um3 = 0.0;
};

CellVolume cell_volume(const LabelGrid& labels, std::uint32_t label);

// Arithmetic mean of member voxel coordinates, in voxel units.
Vec3d cell_center(const LabelGrid& labels, std::uint32_t label);

// Member voxels with at least one of their 6 face neighbors outside the cell
// (out-of-grid counts as outside), sorted by (z, y, x).
std::vector<std::array<int, 3>> cell_surface(const LabelGrid& labels, std::uint32_t label);

// A voxel is a junction voxel for the triple (i,j,k) when its 26-neighborhood
// including itself contains all three labels and the triple is pairwise
// weight-1 adjacent in the graph. Voxels cluster by 26-connectivity; each
// cluster reports its centroid.
std::vector<Junction> detect_junctions(const LabelGrid& labels, const AdjacencyGraph& g);

// Shared i/j wall reduced to a single chain: wall voxels are collapsed per
// xy column (mean z), then chained greedily between the bounding junctions.
// Wall voxels forming more than one component raise DisconnectedWall with
// the components attached.
Polyline extract_segment(const LabelGrid& labels, std::uint32_t i, std::uint32_t j,
                         const std::vector<Junction>& junctions);

class DisconnectedWall : public PipelineError {
public:
    DisconnectedWall(std::string msg, std::vector<std::vector<std::array<int, 3>>> comps)
        : PipelineError("DisconnectedWall: " + std::move(msg)), components(std::move(comps)) {}
    std::vector<std::vector<std::array<int, 3>>> components;
};

ShapeDescriptors max_area_shape(const LabelGrid& labels, std::uint32_t label);

}  // namespace cellpipe
