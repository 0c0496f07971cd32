#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cellpipe/grid.hpp"

namespace cellpipe {

// Weighted undirected adjacency graph over cells. Edge weight = number of
// joint dilation rounds (26-neighborhood structuring element) until the two
// cells become one 26-connected component; weight 1 means touching cells.
// deg(v) counts only the weight-1 neighbors.
class AdjacencyGraph {
public:
    struct Edge {
        std::uint32_t a, b;  // a < b
        int weight;
    };

    explicit AdjacencyGraph(std::uint32_t n_cells = 0) : n_(n_cells) {}

    std::uint32_t cell_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }

    void add_edge(std::uint32_t i, std::uint32_t j, int w);
    std::optional<int> edge_weight(std::uint32_t i, std::uint32_t j) const;
    bool adjacent1(std::uint32_t i, std::uint32_t j) const {
        auto w = edge_weight(i, j);
        return w && *w == 1;
    }

    // Weight-1 neighbors of i, ascending.
    std::vector<std::uint32_t> neighbors1(std::uint32_t i) const;

    int degree(std::uint32_t i) const;
    double weighted_degree_cached(std::uint32_t i) const;

private:
    friend AdjacencyGraph build_graph_from_edges(std::uint32_t, std::vector<Edge>);
    std::uint32_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<std::uint32_t, int>>> adj_;  // per vertex, sorted
    std::vector<int> deg_;
    std::vector<double> wdeg_;
    void rebuild_caches();
};

// Smallest d <= maxd such that dilating both cells d times joins them into a
// single 26-connected component; nullopt past the cap.
std::optional<int> cell_distance(const LabelGrid& labels, std::uint32_t i, std::uint32_t j,
                                 int maxd);

// Production construction: one truncated multi-source Chebyshev sweep per
// cell. Exactly equivalent to the per-pair dilation loop on connected cells.
AdjacencyGraph build_adjacency(const LabelGrid& labels, int maxd = 10);

// Literal reference: per-pair dilation rounds with a connected-component
// check after every round. Kept for oracle tests; quadratic in cell count.
AdjacencyGraph build_adjacency_reference(const LabelGrid& labels, int maxd = 10);

// Sum of all stored incident edge weights divided by the count of weight-1
// neighbors. Throws IsolatedVertex when deg == 0.
double weighted_degree(const AdjacencyGraph& g, std::uint32_t i);

// CSV export: edge rows (i, j, w) and vertex rows (i, deg, wdeg).
void write_graph_csv(const AdjacencyGraph& g, const std::string& edges_path,
                     const std::string& vertices_path);

}  // namespace cellpipe
