#include "cellpipe/cell_graph.hpp"

#include <algorithm>
#include <map>

#include "cellpipe/components.hpp"
#include "cellpipe/csv.hpp"

namespace cellpipe {

void AdjacencyGraph::add_edge(std::uint32_t i, std::uint32_t j, int w) {
    if (i == j || i == 0 || j == 0 || i > n_ || j > n_)
        throw PipelineError("invalid adjacency edge");
    if (i > j) std::swap(i, j);
    edges_.push_back({i, j, w});
    if (adj_.size() != n_ + 1) {
        adj_.assign(n_ + 1, {});
        deg_.assign(n_ + 1, 0);
        wdeg_.assign(n_ + 1, 0.0);
        for (const Edge& e : edges_) {
            adj_[e.a].push_back({e.b, e.weight});
            adj_[e.b].push_back({e.a, e.weight});
        }
        for (const Edge& e : edges_) {
            if (e.weight == 1) {
                ++deg_[e.a];
                ++deg_[e.b];
            }
            wdeg_[e.a] += e.weight;
            wdeg_[e.b] += e.weight;
        }
        return;
    }
    adj_[i].push_back({j, w});
    adj_[j].push_back({i, w});
    if (w == 1) {
        ++deg_[i];
        ++deg_[j];
    }
    wdeg_[i] += w;
    wdeg_[j] += w;
}

std::optional<int> AdjacencyGraph::edge_weight(std::uint32_t i, std::uint32_t j) const {
    if (i > n_ || i >= adj_.size()) return std::nullopt;
    for (const auto& [to, w] : adj_[i])
        if (to == j) return w;
    return std::nullopt;
}

std::vector<std::uint32_t> AdjacencyGraph::neighbors1(std::uint32_t i) const {
    std::vector<std::uint32_t> out;
    if (i < adj_.size())
        for (const auto& [to, w] : adj_[i])
            if (w == 1) out.push_back(to);
    std::sort(out.begin(), out.end());
    return out;
}

int AdjacencyGraph::degree(std::uint32_t i) const {
    return (i < deg_.size()) ? deg_[i] : 0;
}

double AdjacencyGraph::weighted_degree_cached(std::uint32_t i) const {
    if (i >= deg_.size() || deg_[i] == 0) return 0.0;
    return wdeg_[i] / deg_[i];
}

double weighted_degree(const AdjacencyGraph& g, std::uint32_t i) {
    if (g.degree(i) == 0) throw IsolatedVertex("cell " + std::to_string(i));
    return g.weighted_degree_cached(i);
}

namespace {

struct Box {
    int x0, y0, z0, x1, y1, z1;  // inclusive
};

std::vector<Box> label_boxes(const LabelGrid& labels, std::uint32_t top) {
    std::vector<Box> boxes(top + 1, {1 << 30, 1 << 30, 1 << 30, -1, -1, -1});
    for (int z = 0; z < labels.dims.nz; ++z)
        for (int y = 0; y < labels.dims.ny; ++y)
            for (int x = 0; x < labels.dims.nx; ++x) {
                const std::uint32_t l = labels.at(x, y, z);
                if (l == 0 || l > top) continue;
                Box& b = boxes[l];
                b.x0 = std::min(b.x0, x);
                b.y0 = std::min(b.y0, y);
                b.z0 = std::min(b.z0, z);
                b.x1 = std::max(b.x1, x);
                b.y1 = std::max(b.y1, y);
                b.z1 = std::max(b.z1, z);
            }
    return boxes;
}

// Dilation-round count from the minimum Chebyshev set distance D (free-space
// paths only): both cells grow by d, so they join once D <= 2d + 1.
int rounds_from_chebyshev(int d_inf) { return std::max(1, (d_inf - 1 + 1) / 2); }

}  // namespace

std::optional<int> cell_distance(const LabelGrid& labels, std::uint32_t i, std::uint32_t j,
                                 int maxd) {
    if (i == j) throw PipelineError("cell_distance needs distinct labels");
    const GridDims d = labels.dims;
    Box bi{1 << 30, 1 << 30, 1 << 30, -1, -1, -1}, bu = bi;
    bool have_i = false, have_j = false;
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x) {
                const std::uint32_t l = labels.at(x, y, z);
                if (l != i && l != j) continue;
                if (l == i) have_i = true;
                if (l == j) have_j = true;
                bu.x0 = std::min(bu.x0, x);
                bu.y0 = std::min(bu.y0, y);
                bu.z0 = std::min(bu.z0, z);
                bu.x1 = std::max(bu.x1, x);
                bu.y1 = std::max(bu.y1, y);
                bu.z1 = std::max(bu.z1, z);
            }
    if (!have_i) throw LabelMissing(std::to_string(i));
    if (!have_j) throw LabelMissing(std::to_string(j));

    // Work inside the union bounding box padded by maxd: everything the
    // dilations can touch, clipped to the grid exactly as the grid clips.
    const int x0 = std::max(0, bu.x0 - maxd), x1 = std::min(d.nx - 1, bu.x1 + maxd);
    const int y0 = std::max(0, bu.y0 - maxd), y1 = std::min(d.ny - 1, bu.y1 + maxd);
    const int z0 = std::max(0, bu.z0 - maxd), z1 = std::min(d.nz - 1, bu.z1 + maxd);
    const GridDims cd{x1 - x0 + 1, y1 - y0 + 1, z1 - z0 + 1};
    const std::size_t n = cd.count();

    std::vector<std::uint8_t> a(n, 0), b(n, 0);
    for (int z = z0; z <= z1; ++z)
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) {
                const std::uint32_t l = labels.at(x, y, z);
                if (l != i && l != j) continue;
                const std::size_t ci = static_cast<std::size_t>(x - x0) +
                                       static_cast<std::size_t>(cd.nx) *
                                           (static_cast<std::size_t>(y - y0) +
                                            static_cast<std::size_t>(cd.ny) * (z - z0));
                (l == i ? a : b)[ci] = 1;
            }

    auto dilate = [&](std::vector<std::uint8_t>& m) {
        std::vector<std::uint8_t> out(n, 0);
        for (int z = 0; z < cd.nz; ++z)
            for (int y = 0; y < cd.ny; ++y)
                for (int x = 0; x < cd.nx; ++x) {
                    bool hit = false;
                    for (int dz = -1; dz <= 1 && !hit; ++dz)
                        for (int dy = -1; dy <= 1 && !hit; ++dy)
                            for (int dx = -1; dx <= 1 && !hit; ++dx) {
                                const int px = x + dx, py = y + dy, pz = z + dz;
                                if (px < 0 || px >= cd.nx || py < 0 || py >= cd.ny || pz < 0 ||
                                    pz >= cd.nz)
                                    continue;
                                hit = m[static_cast<std::size_t>(px) +
                                        static_cast<std::size_t>(cd.nx) *
                                            (static_cast<std::size_t>(py) +
                                             static_cast<std::size_t>(cd.ny) * pz)] != 0;
                            }
                    if (hit)
                        out[static_cast<std::size_t>(x) +
                            static_cast<std::size_t>(cd.nx) *
                                (static_cast<std::size_t>(y) +
                                 static_cast<std::size_t>(cd.ny) * z)] = 1;
                }
        m = std::move(out);
    };

    std::vector<std::uint8_t> uni(n);
    for (int round = 1; round <= maxd; ++round) {
        dilate(a);
        dilate(b);
        for (std::size_t t = 0; t < n; ++t) uni[t] = a[t] | b[t];
        std::uint32_t ncomp = 0;
        label_mask_components(uni, cd, Connectivity::C26, &ncomp);
        if (ncomp == 1) return round;
    }
    return std::nullopt;
}

AdjacencyGraph build_adjacency(const LabelGrid& labels, int maxd) {
    const std::uint32_t top = max_label(labels);
    AdjacencyGraph g(top);
    if (top < 2) return g;
    const GridDims d = labels.dims;
    const int radius = 2 * maxd + 1;
    const auto boxes = label_boxes(labels, top);

    std::vector<std::uint32_t> stamp(d.count(), 0);
    std::vector<int> touch_stamp(top + 1, -1);
    std::vector<int> touch_dist(top + 1, 0);
    std::vector<std::uint32_t> cur, next;
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> best;

    for (std::uint32_t i = 1; i <= top; ++i) {
        if (boxes[i].x1 < 0) throw LabelMissing(std::to_string(i));
        cur.clear();
        next.clear();
        // multi-source frontier BFS, Chebyshev metric via 26-steps
        const Box& b = boxes[i];
        for (int z = b.z0; z <= b.z1; ++z)
            for (int y = b.y0; y <= b.y1; ++y)
                for (int x = b.x0; x <= b.x1; ++x) {
                    const std::size_t idx = labels.index(x, y, z);
                    if (labels.data[idx] == i) {
                        stamp[idx] = i;
                        cur.push_back(static_cast<std::uint32_t>(idx));
                    }
                }
        for (int dist = 1; dist <= radius && !cur.empty(); ++dist) {
            next.clear();
            for (const std::uint32_t c : cur) {
                const int cx = static_cast<int>(c % d.nx);
                const int cy = static_cast<int>((c / d.nx) % d.ny);
                const int cz = static_cast<int>(c / (static_cast<std::size_t>(d.nx) * d.ny));
                for (const auto& o : neighbors26()) {
                    const int px = cx + o[0], py = cy + o[1], pz = cz + o[2];
                    if (px < 0 || px >= d.nx || py < 0 || py >= d.ny || pz < 0 || pz >= d.nz)
                        continue;
                    const std::size_t pi = labels.index(px, py, pz);
                    if (stamp[pi] == i) continue;
                    stamp[pi] = i;
                    const std::uint32_t l = labels.data[pi];
                    if (l != 0 && l != i && touch_stamp[l] != static_cast<int>(i)) {
                        touch_stamp[l] = static_cast<int>(i);
                        touch_dist[l] = dist;
                    }
                    next.push_back(static_cast<std::uint32_t>(pi));
                }
            }
            std::swap(cur, next);
        }
        for (std::uint32_t j = 1; j <= top; ++j) {
            if (touch_stamp[j] != static_cast<int>(i)) continue;
            const int w = rounds_from_chebyshev(touch_dist[j]);
            if (w > maxd) continue;
            const auto key = std::minmax(i, j);
            auto it = best.find({key.first, key.second});
            if (it == best.end())
                best[{key.first, key.second}] = w;
            else
                it->second = std::min(it->second, w);
        }
    }
    for (const auto& [pair, w] : best) g.add_edge(pair.first, pair.second, w);
    return g;
}

AdjacencyGraph build_adjacency_reference(const LabelGrid& labels, int maxd) {
    const std::uint32_t top = max_label(labels);
    AdjacencyGraph g(top);
    for (std::uint32_t i = 1; i <= top; ++i)
        for (std::uint32_t j = i + 1; j <= top; ++j) {
            auto w = cell_distance(labels, i, j, maxd);
            if (w) g.add_edge(i, j, *w);
        }
    return g;
}

void write_graph_csv(const AdjacencyGraph& g, const std::string& edges_path,
                     const std::string& vertices_path) {
    CsvWriter edges(edges_path);
    edges.row({"i", "j", "w"});
    for (const auto& e : g.edges())
        edges.row({CsvWriter::num(e.a), CsvWriter::num(e.b), CsvWriter::num(e.weight)});

    CsvWriter verts(vertices_path);
    verts.row({"i", "deg", "wdeg"});
    for (std::uint32_t i = 1; i <= g.cell_count(); ++i)
        verts.row({CsvWriter::num(i), CsvWriter::num(g.degree(i)),
                   CsvWriter::num(g.weighted_degree_cached(i))});
}

}  // namespace cellpipe
