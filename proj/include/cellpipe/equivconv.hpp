#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cellpipe/grid.hpp"
#include "cellpipe/rotation.hpp"

namespace cellpipe {

// Feature map with one bank of 24 group slots per filter. The group axis
// tracks which rotation each slot's response corresponds to.
struct GroupFeatureMap {
    GridDims dims;
    Spacing spacing;
    int filters = 0;
    std::vector<float> data;  // [filter][slot][z][y][x]

    GroupFeatureMap() = default;
    GroupFeatureMap(GridDims d, Spacing s, int f)
        : dims(d), spacing(s), filters(f),
          data(static_cast<std::size_t>(f) * kGroupSize * d.count(), 0.0f) {}

    std::size_t plane() const { return dims.count(); }
    std::size_t index(int f, int slot, int x, int y, int z) const {
        return (static_cast<std::size_t>(f) * kGroupSize + slot) * plane() +
               static_cast<std::size_t>(x) +
               static_cast<std::size_t>(dims.nx) *
                   (static_cast<std::size_t>(y) + static_cast<std::size_t>(dims.ny) * z);
    }
    float& at(int f, int slot, int x, int y, int z) { return data[index(f, slot, x, y, z)]; }
    float at(int f, int slot, int x, int y, int z) const { return data[index(f, slot, x, y, z)]; }
};

// Plain multi-channel map (group axis reduced away).
struct ChannelMap {
    GridDims dims;
    Spacing spacing;
    int channels = 0;
    std::vector<float> data;  // [channel][z][y][x]

    ChannelMap() = default;
    ChannelMap(GridDims d, Spacing s, int c)
        : dims(d), spacing(s), channels(c), data(static_cast<std::size_t>(c) * d.count(), 0.0f) {}
};

enum class LayerKind : std::uint8_t { Lift = 0, Group = 1 };

struct ConvLayer {
    LayerKind kind = LayerKind::Lift;
    int in_filters = 1;
    int out_filters = 1;
    int k = 3;
    // lift:  [out_filter][kz][ky][kx]
    // group: [out_filter][in_filter][slot][kz][ky][kx]
    std::vector<float> kernels;
    std::vector<float> biases;  // [out_filter]

    std::size_t kernel_count() const {
        const std::size_t k3 = static_cast<std::size_t>(k) * k * k;
        return kind == LayerKind::Lift
                   ? static_cast<std::size_t>(out_filters) * k3
                   : static_cast<std::size_t>(out_filters) * in_filters * kGroupSize * k3;
    }
};

struct ConvWeights {
    std::vector<ConvLayer> layers;
};

// Slot g of filter f = valid 3D correlation of the input with the g-rotated
// kernel of f, plus the filter bias.
GroupFeatureMap lift_conv(const GridF32& input, const ConvLayer& w);
GroupFeatureMap lift_conv_serial(const GridF32& input, const ConvLayer& w);

// Output slot g sums, over input slots h, valid correlations with kernels
// spatially rotated by g and slot-indexed by g^-1 * h.
GroupFeatureMap group_conv(const GroupFeatureMap& input, const ConvLayer& w);
GroupFeatureMap group_conv_serial(const GroupFeatureMap& input, const ConvLayer& w);

enum class PoolMode { Max, Mean };

// Per-filter reduction over the 24 group slots.
ChannelMap group_pool(const GroupFeatureMap& input, PoolMode mode);

// Forward pass of the equivariant stack: lift, rectified group convolutions,
// group max-pool, logistic squashing. The final layer must have one filter.
// Deterministic for fixed weights regardless of thread count.
ProbabilityMap forward_network(const GridF32& input, const ConvWeights& w);

// Pre-squash logits (pooled single channel); exposed for equivariance tests.
ChannelMap forward_logits(const GridF32& input, const ConvWeights& w);

// Weights container: magic "EQW1", u32 layer count, then one 16-byte record
// per layer (u8 kind, 3 zero bytes, u32 in, u32 out, u32 k), then per layer
// the f32 kernel block followed by the f32 bias block. Little-endian.
ConvWeights read_weights(const std::string& path);
void write_weights(const ConvWeights& w, const std::string& path);

}  // namespace cellpipe
