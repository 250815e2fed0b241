#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "geochrome/geo_graph.hpp"
#include "geochrome/point_process.hpp"
#include "geochrome/rng.hpp"

namespace geochrome {

enum class ColoringMethod { exact, sweep1d, greedy, anchor };
enum class GreedyOrder { index, random, degree_asc };

inline constexpr int kDefaultComponentCap = 28;

// assignment holds 0 for uncolored vertices and values in 1..k otherwise.
struct Coloring {
    int k = 0;
    ColoringMethod method = ColoringMethod::exact;
    std::vector<std::uint32_t> assignment;
    std::size_t colored_count = 0;
    bool is_optimal = false;
    bool anchor_infeasible = false;
};

class ComponentTooLargeError : public std::runtime_error {
public:
    ComponentTooLargeError(std::size_t component_size, int cap);
    std::size_t component_size() const { return size_; }

private:
    std::size_t size_;
};

// Maximum k-colorable vertex subset, solved per connected component by
// branch and bound and summed. Throws ComponentTooLargeError when a
// component exceeds the cap.
Coloring max_colorable_exact(const GeoGraph& g, int k, int component_cap = kDefaultComponentCap);

// Left-to-right sweep: a point at x is colored iff fewer than k colored
// points lie in [x-r, x], receiving the lowest color unused there. Attains
// the exact maximum in one dimension.
Coloring max_colorable_sweep_1d(const PointSet& ps, double r, int k);

// Visits vertices in the given order; each takes the lowest color absent
// among already-colored neighbors or stays uncolored.
Coloring max_colorable_greedy(const GeoGraph& g, int k, GreedyOrder order,
                              const SeedSpec& seed = {});

// Routes each point to its nearest lattice anchor (covering radius s*r,
// midpoint ties to the lexicographically smallest anchor); an anchor colors
// its first floor(k/m) routed points with distinct colors from its group.
// k < m(s) yields the all-uncolored result with anchor_infeasible set.
Coloring max_colorable_anchor(const PointSet& ps, double r, int k, double s);

// True iff properness, count consistency, and color range all hold.
bool validate_coloring(const GeoGraph& g, const Coloring& c);

const char* to_string(ColoringMethod m);
const char* to_string(GreedyOrder o);

}  // namespace geochrome
