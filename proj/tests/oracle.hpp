#pragma once

// Brute-force reference implementations for property tests. Deliberately
// naive: no pruning, no symmetry breaking, no spatial indexing.

#include <cstdint>
#include <functional>
#include <vector>

#include "geochrome/point_process.hpp"
#include "geochrome/rng.hpp"

namespace oracle {

inline geochrome::PointSet make_points(int dim, double side, std::vector<double> coords) {
    geochrome::PointSet ps;
    ps.dim = dim;
    ps.side = side;
    ps.coords = std::move(coords);
    return ps;
}

inline geochrome::PointSet random_points(geochrome::Rng& rng, int dim, std::size_t n, double side) {
    geochrome::PointSet ps;
    ps.dim = dim;
    ps.side = side;
    ps.coords.resize(n * static_cast<std::size_t>(dim));
    for (double& c : ps.coords) c = side * rng.next_unit();
    return ps;
}

inline std::vector<std::vector<std::uint32_t>> brute_adjacency(const geochrome::PointSet& ps,
                                                               double r) {
    const std::size_t n = ps.size();
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            double d2 = 0.0;
            for (int a = 0; a < ps.dim; ++a) {
                const double d = ps.point(i)[a] - ps.point(j)[a];
                d2 += d * d;
            }
            if (d2 <= r * r) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    }
    return adj;
}

// Full enumeration of assignments in {uncolored, 1..k}^n. Usable to n ~ 9.
inline int brute_max_colorable(const std::vector<std::vector<std::uint32_t>>& adj, int k) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> col(n, 0);
    int best = 0;
    const std::function<void(int, int)> rec = [&](int v, int colored) {
        if (v == n) {
            if (colored > best) best = colored;
            return;
        }
        rec(v + 1, colored);
        for (int c = 1; c <= k; ++c) {
            bool ok = true;
            for (std::uint32_t w : adj[v]) {
                if (static_cast<int>(w) < v && col[w] == c) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            col[v] = c;
            rec(v + 1, colored + 1);
            col[v] = 0;
        }
    };
    rec(0, 0);
    return best;
}

}  // namespace oracle
