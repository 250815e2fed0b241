#include "geochrome/geo_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace geochrome {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void label_components(GeoGraph& g) {
    constexpr std::uint32_t kUnlabeled = std::numeric_limits<std::uint32_t>::max();
    g.component_id.assign(g.n, kUnlabeled);
    std::uint32_t next = 0;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        if (g.component_id[v] != kUnlabeled) continue;
        g.component_id[v] = next;
        stack.push_back(v);
        while (!stack.empty()) {
            const std::uint32_t u = stack.back();
            stack.pop_back();
            for (std::uint32_t w : g.adjacency[u]) {
                if (g.component_id[w] == kUnlabeled) {
                    g.component_id[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    g.component_count = next;
}

void build_all_pairs(const PointSet& ps, double r2, GeoGraph& g) {
    for (std::uint32_t i = 0; i < g.n; ++i) {
        for (std::uint32_t j = i + 1; j < g.n; ++j) {
            if (squared_distance(ps.point(i), ps.point(j)) <= r2) {
                g.adjacency[i].push_back(j);
                g.adjacency[j].push_back(i);
                ++g.edge_count;
            }
        }
    }
}

}  // namespace

GeoGraph build_graph(const PointSet& ps, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("radius must be finite and positive");
    GeoGraph g;
    g.n = ps.size();
    g.radius = r;
    g.adjacency.assign(g.n, {});
    const double r2 = r * r;
    if (g.n == 0) {
        g.component_count = 0;
        return g;
    }

    // Cells per axis; the packed cell key must fit in 64 bits.
    const double cells_axis_f = std::floor(ps.side / r) + 1.0;
    double total_cells = 1.0;
    for (int a = 0; a < ps.dim; ++a) total_cells *= cells_axis_f;
    if (total_cells > 9e18 || g.n <= 64) {
        build_all_pairs(ps, r2, g);
    } else {
        const std::int64_t cells_axis = static_cast<std::int64_t>(cells_axis_f);
        auto cell_key = [&](std::span<const double> p) {
            std::uint64_t key = 0;
            for (int a = 0; a < ps.dim; ++a) {
                auto c = static_cast<std::int64_t>(std::floor(p[a] / r));
                c = std::clamp<std::int64_t>(c, 0, cells_axis - 1);
                key = key * static_cast<std::uint64_t>(cells_axis) + static_cast<std::uint64_t>(c);
            }
            return key;
        };

        std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
        buckets.reserve(g.n * 2);
        for (std::uint32_t i = 0; i < g.n; ++i) buckets[cell_key(ps.point(i))].push_back(i);

        // 3^d neighbor-cell offsets as mixed-radix counters over {-1,0,1}.
        std::vector<std::int64_t> offset(ps.dim, -1);
        std::vector<std::vector<std::int64_t>> offsets;
        for (;;) {
            offsets.push_back(offset);
            int a = 0;
            while (a < ps.dim && offset[a] == 1) offset[a++] = -1;
            if (a == ps.dim) break;
            ++offset[a];
        }

        std::vector<std::int64_t> cell(ps.dim);
        for (std::uint32_t i = 0; i < g.n; ++i) {
            const auto p = ps.point(i);
            for (int a = 0; a < ps.dim; ++a) {
                cell[a] = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(p[a] / r)), 0,
                                                   cells_axis - 1);
            }
            for (const auto& off : offsets) {
                std::uint64_t key = 0;
                bool in_grid = true;
                for (int a = 0; a < ps.dim; ++a) {
                    const std::int64_t c = cell[a] + off[a];
                    if (c < 0 || c >= cells_axis) {
                        in_grid = false;
                        break;
                    }
                    key = key * static_cast<std::uint64_t>(cells_axis) + static_cast<std::uint64_t>(c);
                }
                if (!in_grid) continue;
                const auto it = buckets.find(key);
                if (it == buckets.end()) continue;
                for (std::uint32_t j : it->second) {
                    if (j <= i) continue;
                    if (squared_distance(p, ps.point(j)) <= r2) {
                        g.adjacency[i].push_back(j);
                        g.adjacency[j].push_back(i);
                        ++g.edge_count;
                    }
                }
            }
        }
    }

    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
    label_components(g);
    return g;
}

std::vector<std::vector<std::uint32_t>> connected_components(const GeoGraph& g) {
    std::vector<std::vector<std::uint32_t>> comps(g.component_count);
    for (std::uint32_t v = 0; v < g.n; ++v) comps[g.component_id[v]].push_back(v);
    return comps;
}

PointSet scale_points(const PointSet& ps, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite and positive");
    PointSet out = ps;
    out.side = ps.side * alpha;
    for (double& c : out.coords) c *= alpha;
    return out;
}

}  // namespace geochrome
