#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "geochrome/point_process.hpp"
#include "geochrome/rng.hpp"
#include "geochrome/theory.hpp"

using namespace geochrome;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Reference Erlang loss value: direct log-space evaluation of
// (lambda^k/k!) / sum_j lambda^j/j! via logsumexp.
double erlang_b_direct(double lambda, int k) {
    std::vector<double> lt(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j)
        lt[j] = j * std::log(lambda) - std::lgamma(static_cast<double>(j) + 1.0);
    const double mx = *std::max_element(lt.begin(), lt.end());
    double denom = 0.0;
    for (double v : lt) denom += std::exp(v - mx);
    return std::exp(lt[static_cast<std::size_t>(k)] - mx) / denom;
}

}  // namespace

TEST_CASE("ball volumes") {
    CHECK(v_d(1, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(v_d(2, 1.0) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(v_d(3, 1.0) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
    CHECK(v_d(2, 0.5) == doctest::Approx(kPi / 4.0).epsilon(1e-14));
    CHECK(v_d(5, 0.0) == 0.0);
    CHECK_THROWS_AS(v_d(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(v_d(1, -1.0), std::invalid_argument);
}

TEST_CASE("Erlang loss pins and recurrence stability") {
    CHECK(erlang_b(0.7, 0) == 1.0);
    CHECK(erlang_b(1.0, 1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(erlang_b(2.0, 2) == doctest::Approx(0.4).epsilon(1e-14));
    for (double lambda : {0.5, 1.0, 10.0, 100.0, 1000.0})
        for (int k : {1, 10, 100, 1000}) {
            const double got = erlang_b(lambda, k);
            const double want = erlang_b_direct(lambda, k);
            CHECK(std::abs(got - want) <= 1e-12 * want);
        }
    CHECK_THROWS_AS(erlang_b(0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(erlang_b(1.0, -1), std::invalid_argument);
}

TEST_CASE("admitted fraction of the loss system") {
    CHECK(a_one_dim(2.0, 0) == 0.0);
    CHECK(a_one_dim(2.0, 2) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(a_one_dim(1e-9, 1) == doctest::Approx(1.0).epsilon(1e-8));
    double prev = a_one_dim(3.0, 0);
    for (int k = 1; k <= 20; ++k) {
        const double cur = a_one_dim(3.0, k);
        CHECK(cur > prev);
        prev = cur;
    }
    // Raising the intensity by a factor 1+eps costs at most eps.
    for (double lambda : {0.5, 1.0, 2.0, 4.0})
        for (int k : {1, 2, 4})
            for (double eps : {0.01, 0.1, 0.5})
                CHECK(a_one_dim(lambda * (1.0 + eps), k) <= a_one_dim(lambda, k) + eps + 1e-12);
}

TEST_CASE("Poisson pmf and cdf") {
    CHECK(poisson_pmf(1.0, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(poisson_pmf(2.0, -3) == 0.0);
    CHECK(poisson_pmf(0.0, 0) == 1.0);
    CHECK(poisson_cdf(2.0, -1) == 0.0);
    double total = 0.0;
    for (long long m = 0; m <= 80; ++m) total += poisson_pmf(7.5, m);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    double prev = 0.0;
    for (long long m = 0; m <= 30; ++m) {
        const double c = poisson_cdf(4.0, m);
        CHECK(c >= prev);
        CHECK(c == doctest::Approx(prev + poisson_pmf(4.0, m)).epsilon(1e-12));
        prev = c;
    }
    CHECK(poisson_cdf(4.0, 200) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("truncated Poisson moments") {
    CHECK(truncated_poisson_mean(3.0, 0) == 0.0);
    CHECK(truncated_poisson_variance(3.0, 0) == 0.0);
    for (double mu : {0.5, 4.0, 25.0}) {
        const long long cap = static_cast<long long>(std::ceil(mu + 20.0 * std::sqrt(mu)));
        CHECK(truncated_poisson_mean(mu, cap) == doctest::Approx(mu).epsilon(1e-6));
    }
    // Direct pmf sums as the reference for a low cap.
    for (double mu : {0.8, 2.5, 6.0})
        for (long long cap : {1LL, 3LL, 7LL}) {
            double m1 = 0.0;
            double m2 = 0.0;
            for (long long j = 0; j <= 200; ++j) {
                const double x = static_cast<double>(std::min(j, cap));
                const double p = poisson_pmf(mu, j);
                m1 += x * p;
                m2 += x * x * p;
            }
            CHECK(truncated_poisson_mean(mu, cap) == doctest::Approx(m1).epsilon(1e-10));
            CHECK(truncated_poisson_variance(mu, cap) ==
                  doctest::Approx(m2 - m1 * m1).epsilon(1e-9));
        }
}

TEST_CASE("density bounds for 1-separated sets") {
    CHECK(g_max_upper(1, GMaxMode::half_ball) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g_max_upper(2, GMaxMode::half_ball) == doctest::Approx(4.0 / kPi).epsilon(1e-14));
    CHECK(g_max_upper(3, GMaxMode::half_ball) == doctest::Approx(6.0 / kPi).epsilon(1e-14));
    CHECK(g_max_upper(1, GMaxMode::sharp) == 1.0);
    CHECK(g_max_upper(2, GMaxMode::sharp) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(g_max_upper(3, GMaxMode::sharp), std::invalid_argument);

    CHECK(a_upper_bound(1, 2.0, 1, GMaxMode::sharp) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(a_upper_bound(2, 0.01, 3, GMaxMode::sharp) == 1.0);
    for (double lambda : {0.5, 1.0, 2.0, 4.0})
        for (int k : {1, 2, 4, 8})
            CHECK(a_one_dim(lambda, k) <= a_upper_bound(1, lambda, k, GMaxMode::sharp) + 1e-12);
}

TEST_CASE("anchor lattice geometry pins") {
    const AnchorLattice d1 = anchor_lattice(1, 0.5);
    CHECK(d1.spacing == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d1.residue_period == 2);
    CHECK(d1.group_count == 2);

    CHECK(anchor_lattice(1, 10.0).residue_period == 2);

    const AnchorLattice d2 = anchor_lattice(2, 1.0);
    CHECK(d2.spacing == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(d2.residue_period == 3);
    CHECK(d2.group_count == 9);
    CHECK(m_of_s(2, 1.0) == 9);

    CHECK_THROWS_AS(anchor_lattice(3, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(anchor_lattice(1, 0.0), std::invalid_argument);
}

TEST_CASE("anchor groups are index residues") {
    const AnchorLattice d1 = anchor_lattice(1, 0.5);
    const long long i0[] = {0};
    const long long i1[] = {1};
    const long long i2[] = {2};
    const long long im1[] = {-1};
    CHECK(d1.group_of(i0) == 0);
    CHECK(d1.group_of(i1) == 1);
    CHECK(d1.group_of(i2) == 0);
    CHECK(d1.group_of(im1) == 1);

    const AnchorLattice d2 = anchor_lattice(2, 1.0);
    const long long j0[] = {1, 2};
    const long long j1[] = {4, -1};
    CHECK(d2.group_of(j0) == 5);
    CHECK(d2.group_of(j1) == d2.group_of(j0));
    const long long bad[] = {1};
    CHECK_THROWS_AS(d2.group_of(bad), std::invalid_argument);
}

TEST_CASE("anchor lattice covers space within radius s") {
    Rng rng(SeedSpec{701, 0});
    for (int dim : {1, 2})
        for (double s : {0.3, 0.5, 1.0, 2.0}) {
            const AnchorLattice lat = anchor_lattice(dim, s);
            for (int trial = 0; trial < 200; ++trial) {
                double dist2 = 0.0;
                for (int a = 0; a < dim; ++a) {
                    const double u = (rng.next_unit() - 0.5) * 10.0 * lat.spacing;
                    const double nearest = lat.spacing * std::round(u / lat.spacing);
                    dist2 += (u - nearest) * (u - nearest);
                }
                CHECK(std::sqrt(dist2) <= s * (1.0 + 1e-9));
            }
        }
}

TEST_CASE("same-group anchors are separated by more than 1 + 2s") {
    for (int dim : {1, 2})
        for (double s : {0.3, 0.5, 1.0, 2.0}) {
            const AnchorLattice lat = anchor_lattice(dim, s);
            std::vector<std::vector<long long>> idx;
            if (dim == 1) {
                for (long long i = -3; i <= 3; ++i) idx.push_back({i});
            } else {
                for (long long i = -3; i <= 3; ++i)
                    for (long long j = -3; j <= 3; ++j) idx.push_back({i, j});
            }
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t b = a + 1; b < idx.size(); ++b) {
                    if (lat.group_of(idx[a]) != lat.group_of(idx[b])) continue;
                    double dist2 = 0.0;
                    for (int axis = 0; axis < dim; ++axis) {
                        const double d = lat.spacing * static_cast<double>(idx[a][axis] - idx[b][axis]);
                        dist2 += d * d;
                    }
                    CHECK(std::sqrt(dist2) >= 1.0 + 2.0 * s - 1e-9);
                }
        }
}

TEST_CASE("lattice lower bound behavior") {
    const std::vector<double> grid = default_s_grid();
    CHECK(grid.size() == 64);
    CHECK(grid.front() == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(grid.back() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(std::is_sorted(grid.begin(), grid.end()));
    // Geometric spacing: constant ratio between neighbors.
    const double ratio = grid[1] / grid[0];
    for (std::size_t i = 2; i < grid.size(); ++i)
        CHECK(grid[i] / grid[i - 1] == doctest::Approx(ratio).epsilon(1e-9));

    const LowerBoundResult zero = a_lower_bound(1, 1.0, 0);
    CHECK(zero.value == 0.0);
    CHECK(zero.best_s == doctest::Approx(grid.front()));

    for (double lambda : {1.0, 2.0})
        for (int k : {2, 4, 8}) {
            const LowerBoundResult lb = a_lower_bound(1, lambda, k);
            CHECK(lb.value >= 0.0);
            CHECK(lb.value <= a_one_dim(lambda, k) + 1e-12);
        }

    double prev = 0.0;
    for (int k = 16; k <= 512; k *= 2) {
        const double v = a_lower_bound(2, 1.0, k).value;
        CHECK(v >= prev);
        CHECK(v <= 1.0);
        prev = v;
    }
    CHECK(prev > 0.9);
}

TEST_CASE("variance lower-bound constant") {
    const double e1 = std::exp(-1.0);
    const double e2 = std::exp(-2.0);
    CHECK(variance_lb_constant(1, 1.0, 2) ==
          doctest::Approx(e2 * (5.0 * e1 - 9.0 * e2) / 6.0).epsilon(1e-12));
    // k = 1 closed form: q * p(1-p) / 6 with p = P(Po(lambda) >= 1).
    for (double lambda : {0.5, 1.0, 2.0}) {
        const double p = 1.0 - std::exp(-lambda);
        const double q = std::exp(-2.0 * lambda);
        CHECK(variance_lb_constant(1, lambda, 1) ==
              doctest::Approx(q * p * (1.0 - p) / 6.0).epsilon(1e-12));
    }
    for (int dim : {1, 2})
        for (double lambda : {0.5, 1.0, 4.0})
            for (int k : {1, 2, 8}) CHECK(variance_lb_constant(dim, lambda, k) > 0.0);
    CHECK_THROWS_AS(variance_lb_constant(1, 1.0, 0), std::invalid_argument);
}

TEST_CASE("truncated variance agrees with sampling") {
    const double mu = 1.0 * v_d(2, 0.5);
    const int k = 2;
    const std::size_t n = 20000;
    Rng rng(SeedSpec{702, 0});
    std::vector<double> xs(n);
    for (auto& x : xs)
        x = static_cast<double>(std::min<std::uint64_t>(k, sample_poisson_count(rng, mu)));
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n);
    double m2 = 0.0;
    double m4 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    const double var = m2 / static_cast<double>(n - 1);
    m4 /= static_cast<double>(n);
    const double se = std::sqrt(std::max(m4 - var * var, 0.0) / static_cast<double>(n));
    CHECK(std::abs(var - truncated_poisson_variance(mu, k)) <= 4.0 * se + 1e-9);
}

TEST_CASE("theory reports") {
    SUBCASE("one dimension sandwiches the exact constant") {
        for (double lambda : {0.5, 1.0, 2.0, 4.0})
            for (int k : {1, 2, 4, 8}) {
                const TheoryReport rep = make_report(1, lambda, k);
                REQUIRE(rep.a_exact.has_value());
                CHECK(*rep.a_exact == doctest::Approx(a_one_dim(lambda, k)).epsilon(1e-14));
                CHECK(rep.a_lower <= *rep.a_exact + 1e-12);
                CHECK(*rep.a_exact <= rep.a_upper + 1e-12);
                CHECK(rep.var_ub_slope == lambda / 2.0);
                CHECK(rep.var_lb_constant > 0.0);
            }
    }
    SUBCASE("two-dimensional regression values") {
        const TheoryReport rep = make_report(2, 1.0, 16);
        CHECK_FALSE(rep.a_exact.has_value());
        CHECK(rep.a_lower == doctest::Approx(0.8795770374781362).epsilon(1e-12));
        CHECK(rep.best_s == doctest::Approx(0.2889846442076657).epsilon(1e-12));
        CHECK(rep.a_upper == doctest::Approx(std::min(1.0, 16.0 * 2.0 / std::sqrt(3.0))));
    }
    SUBCASE("three and more dimensions fall back to the packing bound") {
        const TheoryReport rep = make_report(3, 20.0, 5);
        CHECK_FALSE(rep.a_exact.has_value());
        CHECK(rep.a_lower == 0.0);
        CHECK(rep.best_s == 0.0);
        CHECK(rep.a_upper == doctest::Approx(5.0 * (6.0 / kPi) / 20.0).epsilon(1e-12));
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(make_report(1, 1.0, 0), std::invalid_argument);
        CHECK_THROWS_AS(make_report(0, 1.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_report(1, 0.0, 1), std::invalid_argument);
    }
}
