#include "geochrome/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geochrome {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

struct TruncatedMoments {
    double mean = 0.0;
    double second = 0.0;
};

// First two moments of min{Po(mu), cap} via incremental log-space pmf.
TruncatedMoments truncated_poisson_moments(double mu, long long cap) {
    require(mu >= 0.0 && std::isfinite(mu), "truncated poisson: mu must be finite and nonnegative");
    require(cap >= 0, "truncated poisson: cap must be >= 0");
    if (cap == 0 || mu == 0.0) return {};
    const double log_mu = std::log(mu);
    double lp = -mu;
    double below = std::exp(lp);
    double m1 = 0.0;
    double m2 = 0.0;
    for (long long j = 1; j < cap; ++j) {
        lp += log_mu - std::log(static_cast<double>(j));
        const double p = std::exp(lp);
        const double jd = static_cast<double>(j);
        below += p;
        m1 += jd * p;
        m2 += jd * jd * p;
    }
    const double tail = std::max(0.0, 1.0 - below);
    const double c = static_cast<double>(cap);
    return {m1 + c * tail, m2 + c * c * tail};
}

}  // namespace

double v_d(int dim, double radius) {
    require(dim >= 1, "v_d: dim must be >= 1");
    require(radius >= 0.0 && std::isfinite(radius), "v_d: radius must be finite and nonnegative");
    if (radius == 0.0) return 0.0;
    return std::exp(0.5 * dim * std::log(kPi) + dim * std::log(radius) - std::lgamma(0.5 * dim + 1.0));
}

double erlang_b(double lambda, int k) {
    require(lambda > 0.0 && std::isfinite(lambda), "erlang_b: lambda must be finite and positive");
    require(k >= 0, "erlang_b: k must be >= 0");
    double b = 1.0;
    for (int j = 1; j <= k; ++j) b = lambda * b / (j + lambda * b);
    return b;
}

double a_one_dim(double lambda, int k) { return 1.0 - erlang_b(lambda, k); }

double poisson_pmf(double mu, long long m) {
    require(mu >= 0.0 && std::isfinite(mu), "poisson_pmf: mu must be finite and nonnegative");
    if (m < 0) return 0.0;
    if (mu == 0.0) return m == 0 ? 1.0 : 0.0;
    return std::exp(m * std::log(mu) - mu - std::lgamma(static_cast<double>(m) + 1.0));
}

double poisson_cdf(double mu, long long m) {
    require(mu >= 0.0 && std::isfinite(mu), "poisson_cdf: mu must be finite and nonnegative");
    if (m < 0) return 0.0;
    if (mu == 0.0) return 1.0;
    const double log_mu = std::log(mu);
    double lp = -mu;
    double cum = std::exp(lp);
    for (long long j = 1; j <= m; ++j) {
        lp += log_mu - std::log(static_cast<double>(j));
        cum += std::exp(lp);
    }
    return std::min(cum, 1.0);
}

double truncated_poisson_mean(double mu, long long cap) {
    return truncated_poisson_moments(mu, cap).mean;
}

double truncated_poisson_variance(double mu, long long cap) {
    const TruncatedMoments mm = truncated_poisson_moments(mu, cap);
    return std::max(0.0, mm.second - mm.mean * mm.mean);
}

double g_max_upper(int dim, GMaxMode mode) {
    require(dim >= 1, "g_max_upper: dim must be >= 1");
    if (mode == GMaxMode::half_ball) return 1.0 / v_d(dim, 0.5);
    require(dim <= 2, "g_max_upper: sharp mode requires dim <= 2");
    return dim == 1 ? 1.0 : 2.0 / std::sqrt(3.0);
}

double a_upper_bound(int dim, double lambda, int k, GMaxMode mode) {
    require(lambda > 0.0 && std::isfinite(lambda), "a_upper_bound: lambda must be finite and positive");
    require(k >= 0, "a_upper_bound: k must be >= 0");
    return std::min(1.0, k * g_max_upper(dim, mode) / lambda);
}

long long AnchorLattice::group_of(std::span<const long long> anchor_index) const {
    if (anchor_index.size() != static_cast<std::size_t>(dim))
        throw std::invalid_argument("group_of: index arity must match dim");
    long long g = 0;
    for (long long a : anchor_index) {
        const long long res = ((a % residue_period) + residue_period) % residue_period;
        g = g * residue_period + res;
    }
    return g;
}

AnchorLattice anchor_lattice(int dim, double s) {
    require(dim == 1 || dim == 2, "anchor_lattice: dim must be 1 or 2");
    require(s > 0.0 && std::isfinite(s), "anchor_lattice: s must be finite and positive");
    AnchorLattice lat;
    lat.dim = dim;
    lat.s = s;
    lat.spacing = dim == 1 ? 2.0 * s : s * std::sqrt(2.0);
    lat.residue_period = static_cast<long long>(std::ceil((1.0 + 2.0 * s) / lat.spacing));
    lat.group_count = lat.residue_period;
    if (dim == 2) lat.group_count *= lat.residue_period;
    return lat;
}

long long m_of_s(int dim, double s) { return anchor_lattice(dim, s).group_count; }

std::vector<double> default_s_grid() {
    constexpr int kPoints = 64;
    constexpr double kLo = 0.05;
    constexpr double kHi = 5.0;
    std::vector<double> grid(kPoints);
    for (int i = 0; i < kPoints; ++i)
        grid[i] = kLo * std::pow(kHi / kLo, static_cast<double>(i) / (kPoints - 1));
    return grid;
}

LowerBoundResult a_lower_bound(int dim, double lambda, int k, std::span<const double> s_grid) {
    require(lambda > 0.0 && std::isfinite(lambda), "a_lower_bound: lambda must be finite and positive");
    require(k >= 0, "a_lower_bound: k must be >= 0");
    require(!s_grid.empty(), "a_lower_bound: s_grid must be nonempty");
    LowerBoundResult best{0.0, s_grid.front()};
    for (double s : s_grid) {
        const long long cap = k / m_of_s(dim, s);
        if (cap == 0) continue;
        const double mu = lambda * v_d(dim, s);
        const double value = std::min(1.0, truncated_poisson_mean(mu, cap) / mu);
        if (value > best.value) best = {value, s};
    }
    return best;
}

LowerBoundResult a_lower_bound(int dim, double lambda, int k) {
    const std::vector<double> grid = default_s_grid();
    return a_lower_bound(dim, lambda, k, grid);
}

double variance_lb_constant(int dim, double lambda, int k) {
    require(dim >= 1, "variance_lb_constant: dim must be >= 1");
    require(k >= 1, "variance_lb_constant: k must be >= 1");
    require(lambda > 0.0 && std::isfinite(lambda), "variance_lb_constant: lambda must be finite and positive");
    const double q = std::exp(-lambda * (v_d(dim, 1.5) - v_d(dim, 0.5)));
    const double sigma2 = truncated_poisson_variance(lambda * v_d(dim, 0.5), k);
    return q * sigma2 / std::pow(6.0, dim);
}

TheoryReport make_report(int dim, double lambda, int k, std::span<const double> s_grid) {
    require(dim >= 1, "make_report: dim must be >= 1");
    require(k >= 1, "make_report: k must be >= 1");
    TheoryReport rep;
    rep.dim = dim;
    rep.lambda = lambda;
    rep.k = k;
    if (dim == 1) rep.a_exact = a_one_dim(lambda, k);
    if (dim <= 2) {
        const LowerBoundResult lb = a_lower_bound(dim, lambda, k, s_grid);
        rep.a_lower = lb.value;
        rep.best_s = lb.best_s;
        rep.a_upper = a_upper_bound(dim, lambda, k, GMaxMode::sharp);
    } else {
        rep.a_lower = 0.0;
        rep.best_s = 0.0;
        rep.a_upper = a_upper_bound(dim, lambda, k, GMaxMode::half_ball);
    }
    rep.var_lb_constant = variance_lb_constant(dim, lambda, k);
    rep.var_ub_slope = lambda / 2.0;
    return rep;
}

TheoryReport make_report(int dim, double lambda, int k) {
    const std::vector<double> grid = default_s_grid();
    return make_report(dim, lambda, k, grid);
}

}  // namespace geochrome
