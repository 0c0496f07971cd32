#include "cellpipe/components.hpp"

namespace cellpipe {

namespace {

// Generic flood labeling: voxels where Eq(a, b) holds and Keep(a) is true are
// grouped. BFS with an explicit ring buffer keeps the scan order (and thus
// the component numbering) deterministic.
template <typename Keep, typename Eq>
std::vector<std::uint32_t> flood_label(const GridDims& dims, Connectivity conn, Keep keep, Eq eq,
                                       std::uint32_t* out_count) {
    const std::size_t n = dims.count();
    std::vector<std::uint32_t> comp(n, 0);
    std::vector<std::uint32_t> queue;
    queue.reserve(1024);
    std::uint32_t next = 0;

    auto run = [&](const auto& offsets) {
        std::size_t idx = 0;
        for (int z = 0; z < dims.nz; ++z)
            for (int y = 0; y < dims.ny; ++y)
                for (int x = 0; x < dims.nx; ++x, ++idx) {
                    if (comp[idx] != 0 || !keep(idx)) continue;
                    const std::uint32_t id = ++next;
                    comp[idx] = id;
                    queue.clear();
                    queue.push_back(static_cast<std::uint32_t>(idx));
                    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                        const std::size_t cur = queue[qi];
                        const int cx = static_cast<int>(cur % dims.nx);
                        const int cy = static_cast<int>((cur / dims.nx) % dims.ny);
                        const int cz = static_cast<int>(cur / (static_cast<std::size_t>(dims.nx) * dims.ny));
                        for (const auto& d : offsets) {
                            const int px = cx + d[0], py = cy + d[1], pz = cz + d[2];
                            if (px < 0 || px >= dims.nx || py < 0 || py >= dims.ny || pz < 0 ||
                                pz >= dims.nz)
                                continue;
                            const std::size_t pi =
                                static_cast<std::size_t>(px) +
                                static_cast<std::size_t>(dims.nx) *
                                    (static_cast<std::size_t>(py) +
                                     static_cast<std::size_t>(dims.ny) * static_cast<std::size_t>(pz));
                            if (comp[pi] != 0 || !keep(pi) || !eq(cur, pi)) continue;
                            comp[pi] = id;
                            queue.push_back(static_cast<std::uint32_t>(pi));
                        }
                    }
                }
    };
    if (conn == Connectivity::C6)
        run(neighbors6());
    else
        run(neighbors26());
    if (out_count) *out_count = next;
    return comp;
}

}  // namespace

std::vector<std::uint32_t> label_mask_components(const std::vector<std::uint8_t>& mask,
                                                 const GridDims& dims, Connectivity conn,
                                                 std::uint32_t* out_count) {
    return flood_label(
        dims, conn, [&](std::size_t i) { return mask[i] != 0; },
        [](std::size_t, std::size_t) { return true; }, out_count);
}

std::size_t count_label_components(const LabelGrid& labels, std::uint32_t label,
                                   Connectivity conn) {
    std::uint32_t count = 0;
    flood_label(
        labels.dims, conn, [&](std::size_t i) { return labels.data[i] == label; },
        [](std::size_t, std::size_t) { return true; }, &count);
    return count;
}

std::vector<std::uint32_t> label_plateaus(const GridF32& field, Connectivity conn,
                                          std::uint32_t* out_count) {
    return flood_label(
        field.dims, conn, [](std::size_t) { return true; },
        [&](std::size_t a, std::size_t b) { return field.data[a] == field.data[b]; }, out_count);
}

}  // namespace cellpipe
