#pragma once

#include <cstdint>
#include <vector>

#include "geochrome/point_process.hpp"

namespace geochrome {

// Radius-r geometric graph over a PointSet. Edges follow the closed-ball
// rule: u ~ v iff squared Euclidean distance <= r^2. Adjacency lists are
// sorted; component labels are assigned in order of each component's
// smallest vertex index.
struct GeoGraph {
    std::size_t n = 0;
    double radius = 0.0;
    std::vector<std::vector<std::uint32_t>> adjacency;
    std::vector<std::uint32_t> component_id;
    std::uint32_t component_count = 0;
    std::size_t edge_count = 0;
};

// Grid-bucketed construction: cell side r, 3^d neighbor scan; expected O(n)
// in the sparse regime. Falls back to all-pairs when the grid would be
// degenerate (huge dim/side ratios).
GeoGraph build_graph(const PointSet& ps, double r);

// Component vertex lists, ordered by label (vertices sorted within each).
std::vector<std::vector<std::uint32_t>> connected_components(const GeoGraph& g);

// Every coordinate and the side multiplied by alpha.
PointSet scale_points(const PointSet& ps, double alpha);

}  // namespace geochrome
