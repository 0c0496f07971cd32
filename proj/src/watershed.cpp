#include "cellpipe/watershed.hpp"

#include <algorithm>
#include <deque>
#include <queue>

#include "cellpipe/components.hpp"
#include "cellpipe/filters.hpp"

namespace cellpipe {

void SeedParams::validate() const {
    if (smooth_sigma < 0.0) throw PipelineError("smooth_sigma must be >= 0");
    if (h_min < 0.0 || h_min > 1.0) throw PipelineError("h_min must be in [0,1]");
    if (border_bg_threshold < 0.0 || border_bg_threshold > 1.0)
        throw PipelineError("border_bg_threshold must be in [0,1]");
}

GridF32 reconstruct_by_erosion(const GridF32& marker, const GridF32& mask) {
    require_same_geometry(marker.dims, mask.dims, "reconstruct_by_erosion");
    const GridDims d = marker.dims;
    GridF32 r = marker;

    auto idx_of = [&](int x, int y, int z) { return r.index(x, y, z); };
    // forward raster: min over already-swept neighbors, clamped to the mask
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x) {
                float m = r.at(x, y, z);
                for (const auto& o : neighbors26()) {
                    if (o[2] > 0 || (o[2] == 0 && (o[1] > 0 || (o[1] == 0 && o[0] > 0)))) continue;
                    const int px = x + o[0], py = y + o[1], pz = z + o[2];
                    if (!r.in_bounds(px, py, pz)) continue;
                    m = std::min(m, r.at(px, py, pz));
                }
                r.data[idx_of(x, y, z)] = std::max(mask.at(x, y, z), m);
            }
    // backward raster, queueing voxels that can still push values downhill
    std::deque<std::uint32_t> fifo;
    for (int z = d.nz - 1; z >= 0; --z)
        for (int y = d.ny - 1; y >= 0; --y)
            for (int x = d.nx - 1; x >= 0; --x) {
                float m = r.at(x, y, z);
                for (const auto& o : neighbors26()) {
                    if (o[2] < 0 || (o[2] == 0 && (o[1] < 0 || (o[1] == 0 && o[0] < 0)))) continue;
                    const int px = x + o[0], py = y + o[1], pz = z + o[2];
                    if (!r.in_bounds(px, py, pz)) continue;
                    m = std::min(m, r.at(px, py, pz));
                }
                const float v = std::max(mask.at(x, y, z), m);
                r.data[idx_of(x, y, z)] = v;
                for (const auto& o : neighbors26()) {
                    if (o[2] < 0 || (o[2] == 0 && (o[1] < 0 || (o[1] == 0 && o[0] < 0)))) continue;
                    const int px = x + o[0], py = y + o[1], pz = z + o[2];
                    if (!r.in_bounds(px, py, pz)) continue;
                    if (r.at(px, py, pz) > v && r.at(px, py, pz) > mask.at(px, py, pz)) {
                        fifo.push_back(static_cast<std::uint32_t>(idx_of(x, y, z)));
                        break;
                    }
                }
            }
    while (!fifo.empty()) {
        const std::uint32_t c = fifo.front();
        fifo.pop_front();
        const int cx = static_cast<int>(c % d.nx);
        const int cy = static_cast<int>((c / d.nx) % d.ny);
        const int cz = static_cast<int>(c / (static_cast<std::size_t>(d.nx) * d.ny));
        const float rc = r.data[c];
        for (const auto& o : neighbors26()) {
            const int px = cx + o[0], py = cy + o[1], pz = cz + o[2];
            if (!r.in_bounds(px, py, pz)) continue;
            const std::size_t pi = idx_of(px, py, pz);
            if (r.data[pi] > rc && r.data[pi] > mask.data[pi]) {
                r.data[pi] = std::max(rc, mask.data[pi]);
                fifo.push_back(static_cast<std::uint32_t>(pi));
            }
        }
    }
    return r;
}

LabelGrid regional_minima(const GridF32& field, std::uint32_t* out_count) {
    const GridDims d = field.dims;
    std::uint32_t n_plateaus = 0;
    const auto plateau = label_plateaus(field, Connectivity::C26, &n_plateaus);

    std::vector<std::uint8_t> is_min(n_plateaus + 1, 1);
    std::vector<std::uint8_t> has_neighbor(n_plateaus + 1, 0);
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x) {
                const std::size_t i = field.index(x, y, z);
                const float v = field.data[i];
                for (const auto& o : neighbors26()) {
                    const int px = x + o[0], py = y + o[1], pz = z + o[2];
                    if (!field.in_bounds(px, py, pz)) continue;
                    const std::size_t pi = field.index(px, py, pz);
                    if (plateau[pi] == plateau[i]) continue;
                    has_neighbor[plateau[i]] = 1;
                    if (field.data[pi] < v) is_min[plateau[i]] = 0;
                }
            }

    // renumber minima 1..K in scan order of their first voxel
    std::vector<std::uint32_t> renum(n_plateaus + 1, 0);
    std::uint32_t next = 0;
    LabelGrid out(d, field.spacing, 0);
    for (std::size_t i = 0; i < field.size(); ++i) {
        const std::uint32_t p = plateau[i];
        if (!is_min[p] || !has_neighbor[p]) continue;  // whole-grid plateau excluded
        if (renum[p] == 0) renum[p] = ++next;
        out.data[i] = renum[p];
    }
    if (out_count) *out_count = next;
    return out;
}

LabelGrid generate_seeds(const ProbabilityMap& prob, const SeedParams& p) {
    p.validate();
    const GridF32 smoothed = gaussian_blur(prob, p.smooth_sigma);

    GridF32 marker = smoothed;
    if (p.h_min > 0.0) {
        for (float& v : marker.data) v += static_cast<float>(p.h_min);
        marker = reconstruct_by_erosion(marker, smoothed);
    }
    std::uint32_t n_minima = 0;
    LabelGrid minima = regional_minima(marker, &n_minima);

    // background: low-probability 26-components touching the stack border
    const GridDims d = prob.dims;
    std::vector<std::uint8_t> low(d.count());
    for (std::size_t i = 0; i < low.size(); ++i)
        low[i] = smoothed.data[i] < static_cast<float>(p.border_bg_threshold) ? 1 : 0;
    std::uint32_t n_low = 0;
    const auto low_comp = label_mask_components(low, d, Connectivity::C26, &n_low);
    std::vector<std::uint8_t> touches(n_low + 1, 0);
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x) {
                if (x != 0 && y != 0 && z != 0 && x != d.nx - 1 && y != d.ny - 1 && z != d.nz - 1)
                    continue;
                const std::uint32_t c = low_comp[prob.index(x, y, z)];
                if (c) touches[c] = 1;
            }

    std::vector<std::uint8_t> bg(d.count(), 0);
    bool any_bg = false;
    for (std::size_t i = 0; i < bg.size(); ++i) {
        if (low_comp[i] && touches[low_comp[i]]) {
            bg[i] = 1;
            any_bg = true;
        }
    }

    // minima inside the background region belong to the background seed
    std::vector<std::uint8_t> drop(n_minima + 1, 0);
    for (std::size_t i = 0; i < bg.size(); ++i)
        if (bg[i] && minima.data[i]) drop[minima.data[i]] = 1;

    LabelGrid seeds(d, prob.spacing, 0);
    std::vector<std::uint32_t> renum(n_minima + 1, 0);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const std::uint32_t m = minima.data[i];
        if (m && !drop[m]) {
            if (renum[m] == 0) renum[m] = ++next;
            seeds.data[i] = renum[m];
        }
    }
    if (next == 0) throw NoSeedsFound("no regional minima survive suppression");
    if (any_bg)
        for (std::size_t i = 0; i < seeds.size(); ++i)
            if (bg[i]) seeds.data[i] = kBackgroundSeed;
    return seeds;
}

namespace {

struct QueueEntry {
    float prob;
    std::uint32_t idx;
    bool operator>(const QueueEntry& o) const {
        if (prob != o.prob) return prob > o.prob;
        return idx > o.idx;
    }
};

// Label of the already labeled 26-neighbor with minimal (probability, index).
std::uint32_t donor_label(const ProbabilityMap& prob, const LabelGrid& out, int x, int y, int z) {
    float best = 0.0f;
    std::size_t best_idx = 0;
    std::uint32_t label = 0;
    bool found = false;
    for (const auto& o : neighbors26()) {
        const int px = x + o[0], py = y + o[1], pz = z + o[2];
        if (!prob.in_bounds(px, py, pz)) continue;
        const std::size_t pi = prob.index(px, py, pz);
        if (out.data[pi] == 0) continue;
        const float pp = prob.data[pi];
        if (!found || pp < best || (pp == best && pi < best_idx)) {
            found = true;
            best = pp;
            best_idx = pi;
            label = out.data[pi];
        }
    }
    return label;
}

void check_flood_inputs(const ProbabilityMap& prob, const LabelGrid& seeds) {
    if (!(prob.dims == seeds.dims)) throw GeometryMismatch("run_watershed");
    bool any = false;
    for (std::uint32_t v : seeds.data)
        if (v != 0) {
            any = true;
            break;
        }
    if (!any) throw EmptySeeds("run_watershed");
}

void resolve_background(LabelGrid& out) {
    for (std::uint32_t& v : out.data)
        if (v == kBackgroundSeed) v = 0;
}

}  // namespace

LabelGrid run_watershed(const ProbabilityMap& prob, const LabelGrid& seeds) {
    check_flood_inputs(prob, seeds);
    const GridDims d = prob.dims;
    LabelGrid out(d, prob.spacing, 0);
    std::vector<std::uint8_t> queued(d.count(), 0);
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> heap;

    for (std::size_t i = 0; i < seeds.size(); ++i) {
        out.data[i] = seeds.data[i];
        queued[i] = seeds.data[i] != 0;
    }
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x) {
                if (out.at(x, y, z) == 0) continue;
                for (const auto& o : neighbors26()) {
                    const int px = x + o[0], py = y + o[1], pz = z + o[2];
                    if (!prob.in_bounds(px, py, pz)) continue;
                    const std::size_t pi = prob.index(px, py, pz);
                    if (queued[pi]) continue;
                    queued[pi] = 1;
                    heap.push({prob.data[pi], static_cast<std::uint32_t>(pi)});
                }
            }

    while (!heap.empty()) {
        const QueueEntry e = heap.top();
        heap.pop();
        const std::size_t i = e.idx;
        if (out.data[i] != 0) continue;
        const int x = static_cast<int>(i % d.nx);
        const int y = static_cast<int>((i / d.nx) % d.ny);
        const int z = static_cast<int>(i / (static_cast<std::size_t>(d.nx) * d.ny));
        out.data[i] = donor_label(prob, out, x, y, z);
        for (const auto& o : neighbors26()) {
            const int px = x + o[0], py = y + o[1], pz = z + o[2];
            if (!prob.in_bounds(px, py, pz)) continue;
            const std::size_t pi = prob.index(px, py, pz);
            if (queued[pi]) continue;
            queued[pi] = 1;
            heap.push({prob.data[pi], static_cast<std::uint32_t>(pi)});
        }
    }
    resolve_background(out);
    return out;
}

LabelGrid run_watershed_reference(const ProbabilityMap& prob, const LabelGrid& seeds) {
    check_flood_inputs(prob, seeds);
    const GridDims d = prob.dims;
    LabelGrid out(d, prob.spacing, 0);
    for (std::size_t i = 0; i < seeds.size(); ++i) out.data[i] = seeds.data[i];

    while (true) {
        // global minimum (prob, index) over unlabeled voxels with a labeled neighbor
        bool found = false;
        float best = 0.0f;
        std::size_t best_idx = 0;
        for (int z = 0; z < d.nz; ++z)
            for (int y = 0; y < d.ny; ++y)
                for (int x = 0; x < d.nx; ++x) {
                    const std::size_t i = prob.index(x, y, z);
                    if (out.data[i] != 0) continue;
                    bool frontier = false;
                    for (const auto& o : neighbors26()) {
                        const int px = x + o[0], py = y + o[1], pz = z + o[2];
                        if (!prob.in_bounds(px, py, pz)) continue;
                        if (out.at(px, py, pz) != 0) {
                            frontier = true;
                            break;
                        }
                    }
                    if (!frontier) continue;
                    if (!found || prob.data[i] < best || (prob.data[i] == best && i < best_idx)) {
                        found = true;
                        best = prob.data[i];
                        best_idx = i;
                    }
                }
        if (!found) break;
        const int x = static_cast<int>(best_idx % d.nx);
        const int y = static_cast<int>((best_idx / d.nx) % d.ny);
        const int z = static_cast<int>(best_idx / (static_cast<std::size_t>(d.nx) * d.ny));
        out.data[best_idx] = donor_label(prob, out, x, y, z);
    }
    resolve_background(out);
    return out;
}

}  // namespace cellpipe
