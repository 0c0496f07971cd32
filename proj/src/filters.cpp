#include "cellpipe/filters.hpp"

#include <cmath>

namespace cellpipe {

std::vector<float> gaussian_taps(double sigma, bool normalized) {
    if (sigma <= 0.0) return {1.0f};
    const int r = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<float> taps(2 * r + 1);
    double sum = 0.0;
    for (int d = -r; d <= r; ++d) {
        const double w = std::exp(-static_cast<double>(d) * d / (2.0 * sigma * sigma));
        taps[d + r] = static_cast<float>(w);
        sum += w;
    }
    if (normalized)
        for (float& t : taps) t = static_cast<float>(t / sum);
    return taps;
}

namespace {

inline int reflect(int i, int n) {
    // reflect-101 about the edge samples; degenerates to clamp for n == 1
    if (n == 1) return 0;
    while (i < 0 || i >= n) {
        if (i < 0) i = -i;
        if (i >= n) i = 2 * (n - 1) - i;
    }
    return i;
}

// One reflect-padded pass along `axis`. Lines are independent, so the
// parallel loop runs over them with static scheduling.
void pass_reflect(const float* in, float* out, const GridDims& dims, int axis,
                  const std::vector<float>& taps, bool parallel) {
    const int r = static_cast<int>(taps.size() / 2);
    const int n[3] = {dims.nx, dims.ny, dims.nz};
    const std::ptrdiff_t stride[3] = {1, dims.nx,
                                      static_cast<std::ptrdiff_t>(dims.nx) * dims.ny};
    const int len = n[axis];
    const int u_axis = (axis == 0) ? 1 : 0;
    const int v_axis = (axis == 2) ? 1 : 2;
    const int nu = n[u_axis], nv = n[v_axis];
    const std::ptrdiff_t su = stride[u_axis], sv = stride[v_axis], sa = stride[axis];

#pragma omp parallel for schedule(static) if (parallel)
    for (int v = 0; v < nv; ++v) {
        for (int u = 0; u < nu; ++u) {
            const std::ptrdiff_t base = v * sv + u * su;
            for (int i = 0; i < len; ++i) {
                float acc = 0.0f;
                for (int d = -r; d <= r; ++d)
                    acc += taps[d + r] * in[base + reflect(i + d, len) * sa];
                out[base + i * sa] = acc;
            }
        }
    }
}

GridF32 blur_impl(const GridF32& in, double sigma, bool parallel) {
    if (sigma <= 0.0) return in;
    const auto taps = gaussian_taps(sigma, true);
    GridF32 tmp(in.dims, in.spacing), out(in.dims, in.spacing);
    pass_reflect(in.data.data(), tmp.data.data(), in.dims, 0, taps, parallel);
    pass_reflect(tmp.data.data(), out.data.data(), in.dims, 1, taps, parallel);
    pass_reflect(out.data.data(), tmp.data.data(), in.dims, 2, taps, parallel);
    return GridF32{in.dims, in.spacing, std::move(tmp.data)};
}

}  // namespace

GridF32 gaussian_blur(const GridF32& in, double sigma) { return blur_impl(in, sigma, true); }

GridF32 gaussian_blur_serial(const GridF32& in, double sigma) {
    return blur_impl(in, sigma, false);
}

void gaussian_pass_zero(const float* in, float* out, const GridDims& dims, int axis,
                        const std::vector<float>& taps, bool parallel) {
    const int r = static_cast<int>(taps.size() / 2);
    const int n[3] = {dims.nx, dims.ny, dims.nz};
    const std::ptrdiff_t stride[3] = {1, dims.nx,
                                      static_cast<std::ptrdiff_t>(dims.nx) * dims.ny};
    const int len = n[axis];
    const int u_axis = (axis == 0) ? 1 : 0;
    const int v_axis = (axis == 2) ? 1 : 2;
    const int nu = n[u_axis], nv = n[v_axis];
    const std::ptrdiff_t su = stride[u_axis], sv = stride[v_axis], sa = stride[axis];

#pragma omp parallel for schedule(static) if (parallel)
    for (int v = 0; v < nv; ++v) {
        for (int u = 0; u < nu; ++u) {
            const std::ptrdiff_t base = v * sv + u * su;
            for (int i = 0; i < len; ++i) {
                const int lo = std::max(-r, -i);
                const int hi = std::min(r, len - 1 - i);
                float acc = 0.0f;
                for (int d = lo; d <= hi; ++d)
                    acc += taps[d + r] * in[base + (i + d) * sa];
                out[base + i * sa] = acc;
            }
        }
    }
}

}  // namespace cellpipe
