#include "cellpipe/distance.hpp"

#include <limits>

namespace cellpipe {

namespace {

constexpr float kInf = 1e30f;

// 1D lower envelope of parabolas (Felzenszwalb & Huttenlocher). Envelope
// intersections run in double so integer squared distances come out exact.
void edt_1d(const double* f, double* out, int n, double* zbuf, int* vbuf) {
    int q0 = 0;
    while (q0 < n && f[q0] >= kInf) ++q0;
    if (q0 == n) {
        for (int q = 0; q < n; ++q) out[q] = kInf;
        return;
    }
    int k = 0;
    vbuf[0] = q0;
    zbuf[0] = -kInf;
    zbuf[1] = kInf;
    for (int q = q0 + 1; q < n; ++q) {
        if (f[q] >= kInf) continue;
        double s = ((f[q] + static_cast<double>(q) * q) -
                    (f[vbuf[k]] + static_cast<double>(vbuf[k]) * vbuf[k])) /
                   (2.0 * (q - vbuf[k]));
        while (s <= zbuf[k]) {
            --k;
            s = ((f[q] + static_cast<double>(q) * q) -
                 (f[vbuf[k]] + static_cast<double>(vbuf[k]) * vbuf[k])) /
                (2.0 * (q - vbuf[k]));
        }
        ++k;
        vbuf[k] = q;
        zbuf[k] = s;
        zbuf[k + 1] = kInf;
    }
    int j = 0;
    for (int q = 0; q < n; ++q) {
        while (zbuf[j + 1] < q) ++j;
        const int p = vbuf[j];
        out[q] = static_cast<double>(q - p) * (q - p) + f[p];
    }
}

void edt_pass(std::vector<float>& field, const GridDims& dims, int axis, bool parallel) {
    const int n[3] = {dims.nx, dims.ny, dims.nz};
    const std::ptrdiff_t stride[3] = {1, dims.nx,
                                      static_cast<std::ptrdiff_t>(dims.nx) * dims.ny};
    const int len = n[axis];
    const int u_axis = (axis == 0) ? 1 : 0;
    const int v_axis = (axis == 2) ? 1 : 2;
    const int nu = n[u_axis], nv = n[v_axis];
    const std::ptrdiff_t su = stride[u_axis], sv = stride[v_axis], sa = stride[axis];
    float* data = field.data();

#pragma omp parallel if (parallel)
    {
        std::vector<double> line(len), out(len), zbuf(len + 1);
        std::vector<int> vbuf(len);
#pragma omp for schedule(static) collapse(2)
        for (int v = 0; v < nv; ++v) {
            for (int u = 0; u < nu; ++u) {
                const std::ptrdiff_t base = v * sv + u * su;
                bool any = false;
                for (int i = 0; i < len; ++i) {
                    line[i] = data[base + i * sa];
                    any |= line[i] < kInf;
                }
                if (!any) continue;
                edt_1d(line.data(), out.data(), len, zbuf.data(), vbuf.data());
                for (int i = 0; i < len; ++i)
                    data[base + i * sa] = static_cast<float>(out[i]);
            }
        }
    }
}

std::vector<float> edt_impl(const std::vector<std::uint8_t>& seeds, const GridDims& dims,
                            bool parallel) {
    std::vector<float> field(dims.count());
    for (std::size_t i = 0; i < field.size(); ++i) field[i] = seeds[i] ? 0.0f : kInf;
    edt_pass(field, dims, 0, parallel);
    edt_pass(field, dims, 1, parallel);
    edt_pass(field, dims, 2, parallel);
    return field;
}

}  // namespace

std::vector<float> squared_edt(const std::vector<std::uint8_t>& seeds, const GridDims& dims) {
    return edt_impl(seeds, dims, true);
}

std::vector<float> squared_edt_serial(const std::vector<std::uint8_t>& seeds,
                                      const GridDims& dims) {
    return edt_impl(seeds, dims, false);
}

std::vector<std::uint8_t> boundary_mask(const LabelGrid& labels) {
    const GridDims d = labels.dims;
    std::vector<std::uint8_t> mask(d.count(), 0);
#pragma omp parallel for schedule(static)
    for (int z = 0; z < d.nz; ++z) {
        for (int y = 0; y < d.ny; ++y) {
            for (int x = 0; x < d.nx; ++x) {
                const std::size_t i = labels.index(x, y, z);
                const std::uint32_t v = labels.data[i];
                for (const auto& o : neighbors6()) {
                    const int px = x + o[0], py = y + o[1], pz = z + o[2];
                    if (!labels.in_bounds(px, py, pz)) continue;
                    if (labels.at(px, py, pz) != v) {
                        mask[i] = 1;
                        break;
                    }
                }
            }
        }
    }
    return mask;
}

}  // namespace cellpipe
