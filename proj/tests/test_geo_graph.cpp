#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "geochrome/geo_graph.hpp"
#include "geochrome/point_process.hpp"
#include "geochrome/rng.hpp"

#include "oracle.hpp"

using namespace geochrome;

TEST_CASE("three-point line fixture has exactly the two short edges") {
    const PointSet ps = oracle::make_points(1, 2.0, {0.0, 0.5, 1.2});
    const GeoGraph g = build_graph(ps, 1.0);
    CHECK(g.n == 3);
    CHECK(g.edge_count == 2);
    CHECK(g.adjacency[0] == std::vector<std::uint32_t>{1});
    CHECK(g.adjacency[1] == std::vector<std::uint32_t>{0, 2});
    CHECK(g.adjacency[2] == std::vector<std::uint32_t>{1});
    CHECK(g.component_count == 1);
}

TEST_CASE("distance exactly r is an edge") {
    SUBCASE("one dimension") {
        const PointSet ps = oracle::make_points(1, 1.0, {0.0, 1.0});
        const GeoGraph g = build_graph(ps, 1.0);
        CHECK(g.edge_count == 1);
    }
    SUBCASE("3-4-5 triangle leg") {
        const PointSet ps = oracle::make_points(2, 10.0, {0.0, 0.0, 3.0, 4.0});
        CHECK(build_graph(ps, 5.0).edge_count == 1);
        CHECK(build_graph(ps, 4.999999).edge_count == 0);
    }
}

TEST_CASE("empty point set builds the empty graph") {
    const PointSet ps = oracle::make_points(1, 1.0, {});
    const GeoGraph g = build_graph(ps, 0.5);
    CHECK(g.n == 0);
    CHECK(g.component_count == 0);
    CHECK(g.edge_count == 0);
    CHECK(connected_components(g).empty());
}

TEST_CASE("component labels follow the smallest vertex index") {
    // Three separated pairs, interleaved by index.
    const PointSet ps = oracle::make_points(1, 100.0, {0.0, 40.0, 80.0, 0.1, 40.1, 80.1});
    const GeoGraph g = build_graph(ps, 1.0);
    CHECK(g.component_count == 3);
    CHECK(g.component_id == std::vector<std::uint32_t>{0, 1, 2, 0, 1, 2});
    const auto comps = connected_components(g);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == std::vector<std::uint32_t>{0, 3});
    CHECK(comps[1] == std::vector<std::uint32_t>{1, 4});
    CHECK(comps[2] == std::vector<std::uint32_t>{2, 5});
}

TEST_CASE("edgeless and path graphs have the expected component counts") {
    const PointSet spread = oracle::make_points(1, 10.0, {0.0, 4.0, 8.0});
    CHECK(build_graph(spread, 1.0).component_count == 3);
    const PointSet path = oracle::make_points(1, 10.0, {0.0, 0.9, 1.8, 2.7});
    const GeoGraph g = build_graph(path, 1.0);
    CHECK(g.component_count == 1);
    CHECK(g.edge_count == 3);
}

TEST_CASE("grid construction equals all-pairs adjacency on random instances") {
    Rng rng(SeedSpec{555, 0});
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = 1 + static_cast<int>(rng.next_below(3));
        const std::size_t n = rng.next_below(201);
        const double side = 0.5 + 20.0 * rng.next_unit();
        const double r = side * (0.01 + rng.next_unit());
        const PointSet ps = oracle::random_points(rng, dim, n, side);
        const GeoGraph g = build_graph(ps, r);
        CHECK(g.adjacency == oracle::brute_adjacency(ps, r));
    }
}

TEST_CASE("adjacency is symmetric, irreflexive, sorted, and component-consistent") {
    Rng rng(SeedSpec{556, 0});
    const PointSet ps = oracle::random_points(rng, 2, 300, 12.0);
    const GeoGraph g = build_graph(ps, 1.0);
    std::size_t directed = 0;
    for (std::uint32_t u = 0; u < g.n; ++u) {
        const auto& nbrs = g.adjacency[u];
        CHECK(std::is_sorted(nbrs.begin(), nbrs.end()));
        for (std::uint32_t w : nbrs) {
            CHECK(w != u);
            CHECK(g.component_id[w] == g.component_id[u]);
            const auto& back = g.adjacency[w];
            CHECK(std::find(back.begin(), back.end(), u) != back.end());
        }
        directed += nbrs.size();
    }
    CHECK(directed == 2 * g.edge_count);
}

TEST_CASE("scaling points by alpha equals shrinking the radius") {
    SUBCASE("fixture") {
        const PointSet ps = oracle::make_points(1, 2.0, {0.0, 0.5, 1.2});
        const GeoGraph direct = build_graph(ps, 0.5);
        const GeoGraph scaled = build_graph(scale_points(ps, 2.0), 1.0);
        CHECK(direct.adjacency == scaled.adjacency);
    }
    SUBCASE("alpha one is the identity") {
        Rng rng(SeedSpec{557, 0});
        const PointSet ps = oracle::random_points(rng, 2, 50, 4.0);
        const PointSet same = scale_points(ps, 1.0);
        CHECK(same.coords == ps.coords);
        CHECK(same.side == ps.side);
    }
    SUBCASE("power-of-two alpha is bitwise exact on random instances") {
        Rng rng(SeedSpec{558, 0});
        for (double alpha : {0.5, 2.0, 4.0, 8.0}) {
            const std::size_t n = 30 + rng.next_below(120);
            const int dim = 1 + static_cast<int>(rng.next_below(2));
            const PointSet ps = oracle::random_points(rng, dim, n, 6.0);
            const double r = 0.3 + rng.next_unit();
            const GeoGraph a = build_graph(scale_points(ps, alpha), r);
            const GeoGraph b = build_graph(ps, r / alpha);
            CHECK(a.adjacency == b.adjacency);
        }
    }
}

TEST_CASE("invalid radius or scale factor is rejected") {
    const PointSet ps = oracle::make_points(1, 1.0, {0.5});
    CHECK_THROWS_AS(build_graph(ps, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(ps, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(ps, std::numeric_limits<double>::infinity()), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(ps, std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
    CHECK_THROWS_AS(scale_points(ps, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(scale_points(ps, std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
}

TEST_CASE("radius much larger than the window connects everything") {
    Rng rng(SeedSpec{559, 0});
    const PointSet ps = oracle::random_points(rng, 2, 80, 1.0);
    const GeoGraph g = build_graph(ps, 10.0);
    CHECK(g.component_count == 1);
    CHECK(g.edge_count == 80u * 79u / 2u);
}
