#include "geochrome/point_process.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace geochrome {

bool in_cube(const PointSet& ps, std::span<const double> p) {
    if (p.size() != static_cast<std::size_t>(ps.dim)) return false;
    for (double x : p) {
        if (!(x >= 0.0 && x <= ps.side)) return false;
    }
    return true;
}

namespace {

// CDF inversion; exact for modest means (the running pmf stays well inside
// double range for mean <= 30).
std::uint64_t poisson_inversion(Rng& rng, double mean) {
    if (mean <= 0.0) return 0;
    const double u = rng.next_unit();
    double p = std::exp(-mean);
    double cum = p;
    std::uint64_t x = 0;
    while (u > cum) {
        ++x;
        p *= mean / static_cast<double>(x);
        cum += p;
        if (p < 1e-300) break;  // tail exhausted below representable mass
    }
    return x;
}

constexpr double kBlockMean = 30.0;

}  // namespace

std::uint64_t sample_poisson_count(Rng& rng, double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw std::invalid_argument("poisson mean must be finite and nonnegative");
    }
    std::uint64_t total = 0;
    while (mean > kBlockMean) {
        total += poisson_inversion(rng, kBlockMean);
        mean -= kBlockMean;
    }
    return total + poisson_inversion(rng, mean);
}

PointSet sample_poisson(int dim, double lambda, double side, const SeedSpec& seed,
                        double count_cap) {
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
    if (!(side > 0.0) || !std::isfinite(side)) throw std::invalid_argument("side must be positive");
    const double mean = lambda * std::pow(side, dim);
    if (mean > count_cap) {
        throw std::invalid_argument("expected point count " + std::to_string(mean) +
                                    " exceeds count cap " + std::to_string(count_cap));
    }
    Rng rng(seed);
    const std::uint64_t n = sample_poisson_count(rng, mean);
    PointSet ps{dim, side, {}};
    ps.coords.reserve(n * static_cast<std::size_t>(dim));
    for (std::uint64_t i = 0; i < n; ++i) {
        for (int a = 0; a < dim; ++a) ps.coords.push_back(side * rng.next_unit());
    }
    return ps;
}

PointSet sample_binomial(int dim, std::uint64_t n, const SeedSpec& seed, double count_cap) {
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (static_cast<double>(n) > count_cap) {
        throw std::invalid_argument("point count " + std::to_string(n) +
                                    " exceeds count cap " + std::to_string(count_cap));
    }
    Rng rng(seed);
    PointSet ps{dim, 1.0, {}};
    ps.coords.reserve(n * static_cast<std::size_t>(dim));
    for (std::uint64_t i = 0; i < n; ++i) {
        for (int a = 0; a < dim; ++a) ps.coords.push_back(rng.next_unit());
    }
    return ps;
}

PointSet replace_point(const PointSet& ps, std::size_t index, std::span<const double> new_point) {
    if (index >= ps.size()) throw std::out_of_range("replace_point: index out of range");
    if (!in_cube(ps, new_point)) throw std::invalid_argument("replace_point: point outside cube");
    PointSet out = ps;
    for (int a = 0; a < ps.dim; ++a) {
        out.coords[index * static_cast<std::size_t>(ps.dim) + a] = new_point[a];
    }
    return out;
}

}  // namespace geochrome
