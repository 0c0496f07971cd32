#include "cellpipe/equivconv.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "cellpipe/errors.hpp"

namespace cellpipe {

namespace {

void check_layer(const ConvLayer& w) {
    if (w.k <= 0 || w.k % 2 == 0) throw BadWeightsFile("kernel size must be odd and positive");
    if (w.in_filters <= 0 || w.out_filters <= 0) throw BadWeightsFile("filter counts must be positive");
    if (w.kernels.size() != w.kernel_count()) throw BadWeightsFile("kernel payload size mismatch");
    if (w.biases.size() != static_cast<std::size_t>(w.out_filters))
        throw BadWeightsFile("bias payload size mismatch");
    for (float v : w.kernels)
        if (!std::isfinite(v)) throw BadWeightsFile("non-finite kernel value");
    for (float v : w.biases)
        if (!std::isfinite(v)) throw BadWeightsFile("non-finite bias value");
}

GridDims valid_out_dims(const GridDims& in, int k) {
    if (k > in.nx || k > in.ny || k > in.nz) throw KernelTooLarge("kernel exceeds input extent");
    return {in.nx - k + 1, in.ny - k + 1, in.nz - k + 1};
}

// All 24 spatial rotations of each kernel cube, indexed [cube][g].
std::vector<float> rotate_kernel_bank(const std::vector<float>& kernels, int k,
                                      std::size_t cubes) {
    const std::size_t k3 = static_cast<std::size_t>(k) * k * k;
    const auto& group = octahedral_group();
    std::vector<float> out(cubes * kGroupSize * k3);
    for (std::size_t c = 0; c < cubes; ++c)
        for (int g = 0; g < kGroupSize; ++g)
            rotate_cube({kernels.data() + c * k3, k3},
                        {out.data() + (c * kGroupSize + g) * k3, k3}, k, group[g]);
    return out;
}

GroupFeatureMap lift_impl(const GridF32& in, const ConvLayer& w, bool parallel) {
    check_layer(w);
    if (w.kind != LayerKind::Lift || w.in_filters != 1)
        throw ShapeMismatch("lift layer expects single-channel input");
    const GridDims od = valid_out_dims(in.dims, w.k);
    const int k = w.k;
    const std::size_t k3 = static_cast<std::size_t>(k) * k * k;
    const auto rot = rotate_kernel_bank(w.kernels, k, w.out_filters);

    GroupFeatureMap out(od, in.spacing, w.out_filters);
    const int jobs = w.out_filters * kGroupSize;
#pragma omp parallel for schedule(static) if (parallel)
    for (int job = 0; job < jobs; ++job) {
        const int f = job / kGroupSize;
        const int g = job % kGroupSize;
        const float* kern = rot.data() + (static_cast<std::size_t>(f) * kGroupSize + g) * k3;
        const float bias = w.biases[f];
        for (int z = 0; z < od.nz; ++z)
            for (int y = 0; y < od.ny; ++y)
                for (int x = 0; x < od.nx; ++x) {
                    float acc = bias;
                    std::size_t t = 0;
                    for (int oz = 0; oz < k; ++oz)
                        for (int oy = 0; oy < k; ++oy) {
                            const float* row = &in.at(x, y + oy, z + oz);
                            for (int ox = 0; ox < k; ++ox, ++t) acc += row[ox] * kern[t];
                        }
                    out.at(f, g, x, y, z) = acc;
                }
    }
    return out;
}

GroupFeatureMap group_impl(const GroupFeatureMap& in, const ConvLayer& w, bool parallel) {
    check_layer(w);
    if (w.kind != LayerKind::Group) throw ShapeMismatch("group layer expected");
    if (w.in_filters != in.filters)
        throw ShapeMismatch("group layer input filter count mismatch");
    const GridDims od = valid_out_dims(in.dims, w.k);
    const int k = w.k;
    const std::size_t k3 = static_cast<std::size_t>(k) * k * k;
    // rot[(fo*in + fi)*24 + m][g] = kernel (fo, fi, slot m) spatially rotated by g
    const auto rot = rotate_kernel_bank(
        w.kernels, k, static_cast<std::size_t>(w.out_filters) * w.in_filters * kGroupSize);

    GroupFeatureMap out(od, in.spacing, w.out_filters);
    const std::size_t in_plane = in.plane();
    const int jobs = w.out_filters * kGroupSize;
#pragma omp parallel for schedule(static) if (parallel)
    for (int job = 0; job < jobs; ++job) {
        const int fo = job / kGroupSize;
        const int g = job % kGroupSize;
        const int ginv = group_inverse(g);
        const float bias = w.biases[fo];
        for (int z = 0; z < od.nz; ++z)
            for (int y = 0; y < od.ny; ++y)
                for (int x = 0; x < od.nx; ++x) {
                    float acc = bias;
                    for (int fi = 0; fi < w.in_filters; ++fi)
                        for (int h = 0; h < kGroupSize; ++h) {
                            const int m = group_multiply(ginv, h);
                            const float* kern =
                                rot.data() +
                                (((static_cast<std::size_t>(fo) * w.in_filters + fi) * kGroupSize + m) *
                                     kGroupSize +
                                 g) * k3;
                            const float* slot =
                                in.data.data() + (static_cast<std::size_t>(fi) * kGroupSize + h) * in_plane;
                            std::size_t t = 0;
                            for (int oz = 0; oz < k; ++oz)
                                for (int oy = 0; oy < k; ++oy) {
                                    const float* row =
                                        slot + static_cast<std::size_t>(x) +
                                        static_cast<std::size_t>(in.dims.nx) *
                                            (static_cast<std::size_t>(y + oy) +
                                             static_cast<std::size_t>(in.dims.ny) * (z + oz));
                                    for (int ox = 0; ox < k; ++ox, ++t) acc += row[ox] * kern[t];
                                }
                        }
                    out.at(fo, g, x, y, z) = acc;
                }
    }
    return out;
}

void relu_inplace(GroupFeatureMap& m) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m.data.size()); ++i)
        m.data[i] = std::max(0.0f, m.data[i]);
}

}  // namespace

GroupFeatureMap lift_conv(const GridF32& input, const ConvLayer& w) {
    return lift_impl(input, w, true);
}
GroupFeatureMap lift_conv_serial(const GridF32& input, const ConvLayer& w) {
    return lift_impl(input, w, false);
}
GroupFeatureMap group_conv(const GroupFeatureMap& input, const ConvLayer& w) {
    return group_impl(input, w, true);
}
GroupFeatureMap group_conv_serial(const GroupFeatureMap& input, const ConvLayer& w) {
    return group_impl(input, w, false);
}

ChannelMap group_pool(const GroupFeatureMap& in, PoolMode mode) {
    ChannelMap out(in.dims, in.spacing, in.filters);
    const std::size_t plane = in.plane();
#pragma omp parallel for schedule(static)
    for (int f = 0; f < in.filters; ++f) {
        float* dst = out.data.data() + static_cast<std::size_t>(f) * plane;
        for (std::size_t p = 0; p < plane; ++p) {
            if (mode == PoolMode::Max) {
                float m = in.data[(static_cast<std::size_t>(f) * kGroupSize) * plane + p];
                for (int s = 1; s < kGroupSize; ++s)
                    m = std::max(m, in.data[(static_cast<std::size_t>(f) * kGroupSize + s) * plane + p]);
                dst[p] = m;
            } else {
                float acc = 0.0f;
                for (int s = 0; s < kGroupSize; ++s)
                    acc += in.data[(static_cast<std::size_t>(f) * kGroupSize + s) * plane + p];
                dst[p] = acc / static_cast<float>(kGroupSize);
            }
        }
    }
    return out;
}

ChannelMap forward_logits(const GridF32& input, const ConvWeights& w) {
    if (w.layers.empty()) throw BadWeightsFile("no layers");
    if (w.layers.front().kind != LayerKind::Lift)
        throw ShapeMismatch("first layer must be a lift layer");
    if (w.layers.back().out_filters != 1)
        throw ShapeMismatch("final layer must have one filter");

    GroupFeatureMap fm = lift_conv(input, w.layers.front());
    for (std::size_t li = 1; li < w.layers.size(); ++li) {
        if (w.layers[li].kind != LayerKind::Group)
            throw ShapeMismatch("only the first layer may be a lift layer");
        relu_inplace(fm);  // rectifier on hidden activations only
        fm = group_conv(fm, w.layers[li]);
    }
    return group_pool(fm, PoolMode::Max);
}

ProbabilityMap forward_network(const GridF32& input, const ConvWeights& w) {
    ChannelMap logits = forward_logits(input, w);
    ProbabilityMap out(logits.dims, logits.spacing);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.data.size()); ++i)
        out.data[i] = 1.0f / (1.0f + std::exp(-logits.data[i]));
    return out;
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

ConvWeights read_weights(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < 8) throw BadWeightsFile(path + ": header incomplete");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    if (std::memcmp(p, "EQW1", 4) != 0) throw BadWeightsFile(path + ": bad magic");
    const std::uint32_t n_layers = get_u32(p + 4);
    std::size_t off = 8;

    ConvWeights w;
    for (std::uint32_t i = 0; i < n_layers; ++i) {
        if (off + 16 > bytes.size()) throw BadWeightsFile(path + ": layer table truncated");
        ConvLayer layer;
        const std::uint8_t kind = p[off];
        if (kind > 1) throw BadWeightsFile(path + ": unknown layer kind");
        layer.kind = static_cast<LayerKind>(kind);
        layer.in_filters = static_cast<int>(get_u32(p + off + 4));
        layer.out_filters = static_cast<int>(get_u32(p + off + 8));
        layer.k = static_cast<int>(get_u32(p + off + 12));
        off += 16;
        w.layers.push_back(std::move(layer));
    }
    for (auto& layer : w.layers) {
        if (layer.k <= 0 || layer.k % 2 == 0 || layer.in_filters <= 0 || layer.out_filters <= 0)
            throw BadWeightsFile(path + ": invalid layer geometry");
        const std::size_t nk = layer.kernel_count();
        const std::size_t nb = static_cast<std::size_t>(layer.out_filters);
        if (off + 4 * (nk + nb) > bytes.size()) throw BadWeightsFile(path + ": payload truncated");
        layer.kernels.resize(nk);
        for (std::size_t i = 0; i < nk; ++i, off += 4) {
            std::uint32_t bits = get_u32(p + off);
            std::memcpy(&layer.kernels[i], &bits, 4);
        }
        layer.biases.resize(nb);
        for (std::size_t i = 0; i < nb; ++i, off += 4) {
            std::uint32_t bits = get_u32(p + off);
            std::memcpy(&layer.biases[i], &bits, 4);
        }
        check_layer(layer);
    }
    if (off != bytes.size()) throw BadWeightsFile(path + ": trailing bytes");
    return w;
}

void write_weights(const ConvWeights& w, const std::string& path) {
    for (const auto& layer : w.layers) check_layer(layer);
    std::string bytes;
    bytes.append("EQW1", 4);
    put_u32(bytes, static_cast<std::uint32_t>(w.layers.size()));
    for (const auto& layer : w.layers) {
        bytes.push_back(static_cast<char>(layer.kind));
        bytes.append(3, '\0');
        put_u32(bytes, static_cast<std::uint32_t>(layer.in_filters));
        put_u32(bytes, static_cast<std::uint32_t>(layer.out_filters));
        put_u32(bytes, static_cast<std::uint32_t>(layer.k));
    }
    for (const auto& layer : w.layers) {
        auto put_f = [&](float v) {
            std::uint32_t bits;
            std::memcpy(&bits, &v, 4);
            put_u32(bytes, bits);
        };
        for (float v : layer.kernels) put_f(v);
        for (float v : layer.biases) put_f(v);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoFailure("write error on " + path);
}

}  // namespace cellpipe
