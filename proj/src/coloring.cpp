#include "geochrome/coloring.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>

#include "geochrome/theory.hpp"

namespace geochrome {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

std::size_t count_colored(const std::vector<std::uint32_t>& assignment) {
    return static_cast<std::size_t>(
        std::count_if(assignment.begin(), assignment.end(), [](std::uint32_t c) { return c != 0; }));
}

// Lowest positive value absent from a sorted list.
int lowest_free_color(std::vector<int>& sorted_used) {
    int c = 1;
    for (int x : sorted_used) {
        if (x == c) ++c;
        else if (x > c) break;
    }
    return c;
}

// Branch and bound over one component in BFS position order. A vertex may
// open color c+1 only when colors 1..c are already in use, and a branch is
// cut once colored + remaining cannot beat the best.
struct BranchAndBound {
    int k = 0;
    int n = 0;
    const std::vector<std::vector<int>>* pred = nullptr;
    std::vector<int> col;
    std::vector<int> best_col;
    int best = -1;

    bool feasible(int pos, int c) const {
        for (int q : (*pred)[pos])
            if (col[q] == c) return false;
        return true;
    }

    void run(int pos, int colored, int max_used) {
        if (colored + (n - pos) <= best) return;
        if (pos == n) {
            best = colored;
            best_col = col;
            return;
        }
        const int limit = std::min(k, max_used + 1);
        for (int c = 1; c <= limit; ++c) {
            if (!feasible(pos, c)) continue;
            col[pos] = c;
            run(pos + 1, colored + 1, std::max(max_used, c));
            if (best == n) return;
        }
        col[pos] = 0;
        run(pos + 1, colored, max_used);
    }
};

// Exact colors for one component, indexed like members (0 = uncolored).
std::vector<std::uint32_t> solve_component(const GeoGraph& g,
                                           const std::vector<std::uint32_t>& members, int k) {
    const int n = static_cast<int>(members.size());
    std::vector<std::uint32_t> colors(n, 0);
    if (k <= 0 || n == 0) return colors;

    std::unordered_map<std::uint32_t, int> local;
    local.reserve(members.size() * 2);
    for (int i = 0; i < n; ++i) local.emplace(members[i], i);

    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (std::uint32_t w : g.adjacency[members[i]]) adj[i].push_back(local.at(w));

    std::vector<int> order;
    std::vector<int> pos_of(n, -1);
    order.reserve(n);
    order.push_back(0);
    pos_of[0] = 0;
    for (int head = 0; head < static_cast<int>(order.size()); ++head)
        for (int w : adj[order[head]])
            if (pos_of[w] < 0) {
                pos_of[w] = static_cast<int>(order.size());
                order.push_back(w);
            }

    if (k >= n) {
        std::vector<int> nb;
        for (int v : order) {
            nb.clear();
            for (int w : adj[v])
                if (colors[w] > 0) nb.push_back(static_cast<int>(colors[w]));
            std::sort(nb.begin(), nb.end());
            colors[v] = static_cast<std::uint32_t>(lowest_free_color(nb));
        }
        return colors;
    }

    std::vector<std::vector<int>> pred(n);
    for (int p = 0; p < n; ++p)
        for (int w : adj[order[p]])
            if (pos_of[w] < p) pred[p].push_back(pos_of[w]);

    BranchAndBound bnb;
    bnb.k = k;
    bnb.n = n;
    bnb.pred = &pred;
    bnb.col.assign(n, 0);
    bnb.run(0, 0, 0);
    for (int p = 0; p < n; ++p) colors[order[p]] = static_cast<std::uint32_t>(bnb.best_col[p]);
    return colors;
}

}  // namespace

ComponentTooLargeError::ComponentTooLargeError(std::size_t component_size, int cap)
    : std::runtime_error("component of size " + std::to_string(component_size) +
                         " exceeds the exact-solver cap " + std::to_string(cap)),
      size_(component_size) {}

Coloring max_colorable_exact(const GeoGraph& g, int k, int component_cap) {
    require(k >= 0, "max_colorable_exact: k must be >= 0");
    require(component_cap >= 1, "max_colorable_exact: component_cap must be >= 1");
    Coloring c;
    c.k = k;
    c.method = ColoringMethod::exact;
    c.is_optimal = true;
    c.assignment.assign(g.n, 0);
    const auto comps = connected_components(g);
    for (const auto& members : comps)
        if (members.size() > static_cast<std::size_t>(component_cap))
            throw ComponentTooLargeError(members.size(), component_cap);
    for (const auto& members : comps) {
        const auto colors = solve_component(g, members, k);
        for (std::size_t i = 0; i < members.size(); ++i) c.assignment[members[i]] = colors[i];
    }
    c.colored_count = count_colored(c.assignment);
    return c;
}

Coloring max_colorable_sweep_1d(const PointSet& ps, double r, int k) {
    require(ps.dim == 1, "max_colorable_sweep_1d: dim must be 1");
    require(r > 0.0 && std::isfinite(r), "max_colorable_sweep_1d: r must be finite and positive");
    require(k >= 0, "max_colorable_sweep_1d: k must be >= 0");
    Coloring c;
    c.k = k;
    c.method = ColoringMethod::sweep1d;
    c.is_optimal = true;
    c.assignment.assign(ps.size(), 0);
    if (k == 0 || ps.size() == 0) return c;

    std::vector<std::uint32_t> idx(ps.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return ps.coords[a] < ps.coords[b]; });

    // Window membership uses the same squared predicate as graph adjacency.
    const double r2 = r * r;
    std::deque<std::pair<double, int>> window;
    std::vector<int> used;
    for (std::uint32_t id : idx) {
        const double x = ps.coords[id];
        while (!window.empty()) {
            const double d = x - window.front().first;
            if (d * d <= r2) break;
            window.pop_front();
        }
        if (static_cast<int>(window.size()) >= k) continue;
        used.clear();
        for (const auto& [y, col] : window) used.push_back(col);
        std::sort(used.begin(), used.end());
        const int c0 = lowest_free_color(used);
        c.assignment[id] = static_cast<std::uint32_t>(c0);
        window.emplace_back(x, c0);
    }
    c.colored_count = count_colored(c.assignment);
    return c;
}

Coloring max_colorable_greedy(const GeoGraph& g, int k, GreedyOrder order, const SeedSpec& seed) {
    require(k >= 0, "max_colorable_greedy: k must be >= 0");
    Coloring c;
    c.k = k;
    c.method = ColoringMethod::greedy;
    c.assignment.assign(g.n, 0);
    if (k == 0 || g.n == 0) {
        c.colored_count = 0;
        return c;
    }

    std::vector<std::uint32_t> visit(g.n);
    std::iota(visit.begin(), visit.end(), 0);
    if (order == GreedyOrder::random) {
        Rng rng(seed, 1);
        for (std::size_t i = g.n - 1; i > 0; --i) {
            const std::uint64_t j = rng.next_below(i + 1);
            std::swap(visit[i], visit[j]);
        }
    } else if (order == GreedyOrder::degree_asc) {
        std::stable_sort(visit.begin(), visit.end(), [&](std::uint32_t a, std::uint32_t b) {
            return g.adjacency[a].size() < g.adjacency[b].size();
        });
    }

    std::vector<int> nb;
    for (std::uint32_t v : visit) {
        nb.clear();
        for (std::uint32_t w : g.adjacency[v])
            if (c.assignment[w]) nb.push_back(static_cast<int>(c.assignment[w]));
        std::sort(nb.begin(), nb.end());
        const int c0 = lowest_free_color(nb);
        if (c0 <= k) c.assignment[v] = static_cast<std::uint32_t>(c0);
    }
    c.colored_count = count_colored(c.assignment);
    return c;
}

Coloring max_colorable_anchor(const PointSet& ps, double r, int k, double s) {
    require(r > 0.0 && std::isfinite(r), "max_colorable_anchor: r must be finite and positive");
    require(k >= 0, "max_colorable_anchor: k must be >= 0");
    const AnchorLattice lat = anchor_lattice(ps.dim, s);
    Coloring c;
    c.k = k;
    c.method = ColoringMethod::anchor;
    c.assignment.assign(ps.size(), 0);
    if (k < lat.group_count) {
        c.anchor_infeasible = true;
        return c;
    }
    const long long cap = k / lat.group_count;

    // Nearest anchor per axis in unit-radius coordinates u = x/r; midpoint
    // ties go to the smaller index, which keeps same-group cells half-open
    // and same-colored points strictly further than r apart.
    std::unordered_map<std::uint64_t, long long> routed;
    routed.reserve(ps.size() * 2);
    std::array<long long, 2> aidx{};
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto p = ps.point(i);
        for (int a = 0; a < ps.dim; ++a) {
            const double u = p[a] / r;
            aidx[a] = static_cast<long long>(std::ceil(u / lat.spacing - 0.5));
        }
        std::uint64_t key = static_cast<std::uint64_t>(aidx[0]);
        if (ps.dim == 2) key = (key << 32) | static_cast<std::uint32_t>(aidx[1]);
        long long& count = routed[key];
        if (count < cap) {
            const long long group =
                lat.group_of(std::span<const long long>(aidx.data(), static_cast<std::size_t>(ps.dim)));
            c.assignment[i] = static_cast<std::uint32_t>(group * cap + count + 1);
            ++count;
        }
    }
    c.colored_count = count_colored(c.assignment);
    return c;
}

bool validate_coloring(const GeoGraph& g, const Coloring& c) {
    if (c.assignment.size() != g.n) throw std::invalid_argument("validate_coloring: assignment length mismatch");
    if (c.k < 0) return false;
    std::size_t colored = 0;
    for (std::uint32_t a : c.assignment) {
        if (a > static_cast<std::uint32_t>(c.k)) return false;
        if (a != 0) ++colored;
    }
    if (colored != c.colored_count) return false;
    for (std::uint32_t u = 0; u < g.n; ++u)
        for (std::uint32_t w : g.adjacency[u])
            if (c.assignment[u] != 0 && c.assignment[u] == c.assignment[w]) return false;
    return true;
}

const char* to_string(ColoringMethod m) {
    switch (m) {
        case ColoringMethod::exact: return "exact";
        case ColoringMethod::sweep1d: return "sweep1d";
        case ColoringMethod::greedy: return "greedy";
        case ColoringMethod::anchor: return "anchor";
    }
    return "exact";
}

const char* to_string(GreedyOrder o) {
    switch (o) {
        case GreedyOrder::index: return "index";
        case GreedyOrder::random: return "random";
        case GreedyOrder::degree_asc: return "degree_asc";
    }
    return "index";
}

}  // namespace geochrome
