#include "cellpipe/rotation.hpp"

#include <algorithm>

#include "cellpipe/errors.hpp"

namespace cellpipe {

namespace {

using Mat = std::array<std::array<int, 3>, 3>;

int det(const Mat& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat mul(const Mat& a, const Mat& b) {
    Mat c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

std::vector<Rotation> build_group() {
    std::vector<Rotation> out;
    out.reserve(kGroupSize);
    int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (auto& perm : perms) {
        for (int signs = 0; signs < 8; ++signs) {
            Mat m{};
            for (int r = 0; r < 3; ++r) m[r][perm[r]] = (signs >> r) & 1 ? -1 : 1;
            if (det(m) != 1) continue;
            Rotation rot;
            rot.index = static_cast<int>(out.size());
            rot.matrix = m;
            out.push_back(rot);
        }
    }
    return out;
}

int find_index(const Mat& m) {
    const auto& g = octahedral_group();
    for (const auto& r : g)
        if (r.matrix == m) return r.index;
    return -1;  // unreachable: the set is closed
}

struct Tables {
    int mul_table[kGroupSize][kGroupSize];
    int inv_table[kGroupSize];

    Tables() {
        const auto& g = octahedral_group();
        for (int a = 0; a < kGroupSize; ++a) {
            for (int b = 0; b < kGroupSize; ++b)
                mul_table[a][b] = find_index(mul(g[a].matrix, g[b].matrix));
            // orthogonal with integer entries: inverse is the transpose
            Mat t{};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) t[i][j] = g[a].matrix[j][i];
            inv_table[a] = find_index(t);
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

const std::vector<Rotation>& octahedral_group() {
    static const std::vector<Rotation> g = build_group();
    return g;
}

int group_multiply(int g, int h) { return tables().mul_table[g][h]; }
int group_inverse(int g) { return tables().inv_table[g]; }

template <typename T>
Grid3<T> rotate_grid(const Grid3<T>& in, const Rotation& g, bool require_same_dims) {
    const int n_in[3] = {in.dims.nx, in.dims.ny, in.dims.nz};
    const float s_in[3] = {in.spacing.sx, in.spacing.sy, in.spacing.sz};

    // Row r of the matrix has one nonzero entry at column col[r]: output axis
    // r is fed by input axis col[r], mirrored when the sign is negative.
    int col[3], sign[3], n_out[3];
    float s_out[3];
    for (int r = 0; r < 3; ++r) {
        col[r] = g.matrix[r][0] != 0 ? 0 : (g.matrix[r][1] != 0 ? 1 : 2);
        sign[r] = g.matrix[r][col[r]];
        n_out[r] = n_in[col[r]];
        s_out[r] = s_in[col[r]];
    }
    if (require_same_dims && (n_out[0] != n_in[0] || n_out[1] != n_in[1] || n_out[2] != n_in[2]))
        throw NonCubicGrid("rotation permutes unequal axes");

    Grid3<T> out(GridDims{n_out[0], n_out[1], n_out[2]}, Spacing{s_out[0], s_out[1], s_out[2]});
    std::array<int, 3> p{}, q{};
    for (p[2] = 0; p[2] < n_in[2]; ++p[2])
        for (p[1] = 0; p[1] < n_in[1]; ++p[1])
            for (p[0] = 0; p[0] < n_in[0]; ++p[0]) {
                for (int r = 0; r < 3; ++r)
                    q[r] = sign[r] > 0 ? p[col[r]] : n_in[col[r]] - 1 - p[col[r]];
                out.at(q[0], q[1], q[2]) = in.at(p[0], p[1], p[2]);
            }
    return out;
}

template Grid3<std::uint8_t> rotate_grid(const Grid3<std::uint8_t>&, const Rotation&, bool);
template Grid3<std::uint16_t> rotate_grid(const Grid3<std::uint16_t>&, const Rotation&, bool);
template Grid3<std::uint32_t> rotate_grid(const Grid3<std::uint32_t>&, const Rotation&, bool);
template Grid3<float> rotate_grid(const Grid3<float>&, const Rotation&, bool);

void rotate_cube(std::span<const float> in, std::span<float> out, int k, const Rotation& g) {
    int col[3], sign[3];
    for (int r = 0; r < 3; ++r) {
        col[r] = g.matrix[r][0] != 0 ? 0 : (g.matrix[r][1] != 0 ? 1 : 2);
        sign[r] = g.matrix[r][col[r]];
    }
    std::array<int, 3> p{}, q{};
    for (p[2] = 0; p[2] < k; ++p[2])
        for (p[1] = 0; p[1] < k; ++p[1])
            for (p[0] = 0; p[0] < k; ++p[0]) {
                for (int r = 0; r < 3; ++r)
                    q[r] = sign[r] > 0 ? p[col[r]] : k - 1 - p[col[r]];
                out[q[0] + static_cast<std::size_t>(k) * (q[1] + static_cast<std::size_t>(k) * q[2])] =
                    in[p[0] + static_cast<std::size_t>(k) * (p[1] + static_cast<std::size_t>(k) * p[2])];
            }
}

}  // namespace cellpipe
