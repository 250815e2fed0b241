#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "geochrome/rng.hpp"

namespace geochrome {

// Finite point set in the cube [0, side]^dim, stored flat (dim doubles per
// point). Point order is stable: index i identifies the same point across
// derived sets (replacement, scaling).
struct PointSet {
    int dim = 1;
    double side = 0.0;
    std::vector<double> coords;

    std::size_t size() const { return dim > 0 ? coords.size() / static_cast<std::size_t>(dim) : 0; }

    std::span<const double> point(std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }
};

// True iff every coordinate of p lies in [0, ps.side].
bool in_cube(const PointSet& ps, std::span<const double> p);

// Refuse to materialize more points than this by default.
inline constexpr double kDefaultCountCap = 1e8;

// Exact Poisson(mean) draw for any mean: CDF inversion on blocks of bounded
// mean, summed (a sum of independent Poissons is Poisson).
std::uint64_t sample_poisson_count(Rng& rng, double mean);

// Poisson point process of intensity lambda restricted to [0, side]^dim.
PointSet sample_poisson(int dim, double lambda, double side, const SeedSpec& seed,
                        double count_cap = kDefaultCountCap);

// Exactly n points i.i.d. uniform on the unit cube [0, 1]^dim.
PointSet sample_binomial(int dim, std::uint64_t n, const SeedSpec& seed,
                         double count_cap = kDefaultCountCap);

// Copy of ps with position `index` replaced by new_point; ps is unchanged.
PointSet replace_point(const PointSet& ps, std::size_t index, std::span<const double> new_point);

}  // namespace geochrome
