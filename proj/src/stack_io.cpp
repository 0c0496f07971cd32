#include "cellpipe/stack_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "cellpipe/components.hpp"

namespace cellpipe {

namespace {

std::size_t dtype_size(Dtype d) {
    switch (d) {
        case Dtype::U8: return 1;
        case Dtype::U16: return 2;
        case Dtype::F32: return 4;
        case Dtype::U32: return 4;
    }
    throw UnknownDtype("dtype code out of range");
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f32(std::string& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

float get_f32(const unsigned char* p) {
    const std::uint32_t bits = get_u32(p);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

template <typename T>
std::vector<T> decode_payload(const unsigned char* p, std::size_t n) {
    std::vector<T> out(n);
    if constexpr (sizeof(T) == 1) {
        std::memcpy(out.data(), p, n);
    } else if constexpr (std::is_same_v<T, std::uint16_t>) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = static_cast<std::uint16_t>(p[2 * i] | (p[2 * i + 1] << 8));
    } else if constexpr (std::is_same_v<T, std::uint32_t>) {
        for (std::size_t i = 0; i < n; ++i) out[i] = get_u32(p + 4 * i);
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = get_f32(p + 4 * i);
    }
    return out;
}

template <typename T>
void encode_payload(std::string& out, const std::vector<T>& v) {
    if constexpr (sizeof(T) == 1) {
        out.append(reinterpret_cast<const char*>(v.data()), v.size());
    } else if constexpr (std::is_same_v<T, std::uint16_t>) {
        for (T x : v) {
            out.push_back(static_cast<char>(x & 0xff));
            out.push_back(static_cast<char>((x >> 8) & 0xff));
        }
    } else if constexpr (std::is_same_v<T, std::uint32_t>) {
        for (T x : v) put_u32(out, x);
    } else {
        for (T x : v) put_f32(out, x);
    }
}

}  // namespace

VoxelGrid read_stack(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoFailure("read error on " + path);
    if (bytes.size() < kVxgHeaderSize) throw TruncatedPayload(path + ": header incomplete");

    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    if (std::memcmp(p, "VXG1", 4) != 0) throw BadMagic(path);
    const std::uint8_t code = p[4];
    if (code > 3) throw UnknownDtype(path + ": dtype code " + std::to_string(code));
    const Dtype dtype = static_cast<Dtype>(code);

    VoxelGrid g;
    g.dtype = dtype;
    g.dims.nx = static_cast<int>(get_u32(p + 8));
    g.dims.ny = static_cast<int>(get_u32(p + 12));
    g.dims.nz = static_cast<int>(get_u32(p + 16));
    g.spacing.sx = get_f32(p + 20);
    g.spacing.sy = get_f32(p + 24);
    g.spacing.sz = get_f32(p + 28);
    if (!g.spacing.positive() || !std::isfinite(g.spacing.sx) || !std::isfinite(g.spacing.sy) ||
        !std::isfinite(g.spacing.sz))
        throw NonPositiveSpacing(path);

    const std::size_t n = g.dims.count();
    const std::size_t expected = kVxgHeaderSize + n * dtype_size(dtype);
    if (bytes.size() != expected)
        throw TruncatedPayload(path + ": expected " + std::to_string(expected) + " bytes, got " +
                               std::to_string(bytes.size()));

    const unsigned char* payload = p + kVxgHeaderSize;
    switch (dtype) {
        case Dtype::U8: g.data = decode_payload<std::uint8_t>(payload, n); break;
        case Dtype::U16: g.data = decode_payload<std::uint16_t>(payload, n); break;
        case Dtype::U32: g.data = decode_payload<std::uint32_t>(payload, n); break;
        case Dtype::F32: {
            auto v = decode_payload<float>(payload, n);
            for (float x : v)
                if (!std::isfinite(x)) throw NonFiniteData(path + ": NaN/Inf in f32 payload");
            g.data = std::move(v);
            break;
        }
    }
    return g;
}

void write_stack(const VoxelGrid& grid, const std::string& path) {
    if (!grid.spacing.positive()) throw NonPositiveSpacing("refusing to write " + path);
    const std::size_t n = grid.dims.count();
    std::size_t have = 0;
    std::visit([&](const auto& v) { have = v.size(); }, grid.data);
    if (have != n) throw TruncatedPayload("payload size does not match dims for " + path);
    if (grid.dtype == Dtype::F32) {
        for (float x : grid.as<float>())
            if (!std::isfinite(x)) throw NonFiniteData("NaN/Inf in grid, refusing to write " + path);
    }

    std::string bytes;
    bytes.reserve(kVxgHeaderSize + n * dtype_size(grid.dtype));
    bytes.append("VXG1", 4);
    bytes.push_back(static_cast<char>(grid.dtype));
    bytes.append(3, '\0');
    put_u32(bytes, static_cast<std::uint32_t>(grid.dims.nx));
    put_u32(bytes, static_cast<std::uint32_t>(grid.dims.ny));
    put_u32(bytes, static_cast<std::uint32_t>(grid.dims.nz));
    put_f32(bytes, grid.spacing.sx);
    put_f32(bytes, grid.spacing.sy);
    put_f32(bytes, grid.spacing.sz);
    std::visit([&](const auto& v) { encode_payload(bytes, v); }, grid.data);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoFailure("write error on " + path);
}

LabelGrid read_labels(const std::string& path) {
    VoxelGrid g = read_stack(path);
    if (g.dtype != Dtype::U32) throw UnknownDtype(path + ": expected u32 label stack");
    LabelGrid out;
    out.dims = g.dims;
    out.spacing = g.spacing;
    out.data = std::move(std::get<std::vector<std::uint32_t>>(g.data));
    return out;
}

void write_labels(const LabelGrid& labels, const std::string& path) {
    write_stack(VoxelGrid::from(labels), path);
}

GridF32 read_f32(const std::string& path) {
    VoxelGrid g = read_stack(path);
    if (g.dtype != Dtype::F32) throw UnknownDtype(path + ": expected f32 stack");
    GridF32 out;
    out.dims = g.dims;
    out.spacing = g.spacing;
    out.data = std::move(std::get<std::vector<float>>(g.data));
    return out;
}

ProbabilityMap intensity_to_probability(const VoxelGrid& grid, bool invert) {
    ProbabilityMap out(grid.dims, grid.spacing);
    auto rescale = [&](const auto& v) {
        using T = std::decay_t<decltype(v[0])>;
        T lo = v.empty() ? T{} : v[0], hi = lo;
        for (T x : v) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        if (!(static_cast<double>(hi) > static_cast<double>(lo))) {
            std::fill(out.data.begin(), out.data.end(), 0.5f);
            return;
        }
        const double span = static_cast<double>(hi) - static_cast<double>(lo);
        for (std::size_t i = 0; i < v.size(); ++i) {
            double p = (static_cast<double>(v[i]) - static_cast<double>(lo)) / span;
            if (invert) p = 1.0 - p;
            out.data[i] = static_cast<float>(p);
        }
    };
    switch (grid.dtype) {
        case Dtype::U8: rescale(grid.as<std::uint8_t>()); break;
        case Dtype::U16: rescale(grid.as<std::uint16_t>()); break;
        case Dtype::F32: rescale(grid.as<float>()); break;
        case Dtype::U32: throw UnknownDtype("u32 stacks hold labels, not intensities");
    }
    return out;
}

void validate_label_grid(const LabelGrid& labels) {
    const std::uint32_t top = max_label(labels);
    std::vector<std::uint8_t> seen(top + 1, 0);
    for (std::uint32_t v : labels.data) seen[v] = 1;
    for (std::uint32_t l = 1; l <= top; ++l)
        if (!seen[l])
            throw PipelineError("label set has gap at " + std::to_string(l));
    for (std::uint32_t l = 1; l <= top; ++l) {
        if (count_label_components(labels, l, Connectivity::C26) != 1)
            throw PipelineError("label " + std::to_string(l) + " is not 26-connected");
    }
}

}  // namespace cellpipe
