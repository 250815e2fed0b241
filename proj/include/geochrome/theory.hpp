#pragma once

#include <optional>
#include <span>
#include <vector>

namespace geochrome {

// Volume of the d-dimensional ball of the given radius.
double v_d(int dim, double radius);

// Erlang loss probability, computed by the stable recurrence
// B(0)=1, B(j) = lambda*B(j-1) / (j + lambda*B(j-1)). Value in (0,1].
double erlang_b(double lambda, int k);

// Long-run admitted fraction of the k-server loss system: 1 - erlang_b.
double a_one_dim(double lambda, int k);

double poisson_pmf(double mu, long long m);

// P(Po(mu) <= m); 0 for m < 0.
double poisson_cdf(double mu, long long m);

// E[min{Po(mu), cap}] and Var(min{Po(mu), cap}).
double truncated_poisson_mean(double mu, long long cap);
double truncated_poisson_variance(double mu, long long cap);

enum class GMaxMode { half_ball, sharp };

// Upper bound on the density of a point set with pairwise distances > 1.
// half_ball packs disjoint radius-1/2 balls and works in any dimension;
// sharp returns the attained constant, available for dim <= 2 only.
double g_max_upper(int dim, GMaxMode mode);

// min{1, k * g_max_upper / lambda}.
double a_upper_bound(int dim, double lambda, int k, GMaxMode mode);

// Covering lattice with covering radius s (unit-radius convention). Groups
// are residue classes of the index lattice modulo residue_period, so two
// anchors in the same group are at distance >= 1+2s.
struct AnchorLattice {
    int dim = 1;
    double s = 0.0;
    double spacing = 0.0;
    long long residue_period = 0;
    long long group_count = 0;

    long long group_of(std::span<const long long> anchor_index) const;
};

AnchorLattice anchor_lattice(int dim, double s);
long long m_of_s(int dim, double s);

// 64 geometrically spaced values in [0.05, 5].
std::vector<double> default_s_grid();

struct LowerBoundResult {
    double value = 0.0;
    double best_s = 0.0;
};

// max over the grid of E[min{Po(lambda*v_d(s)), floor(k/m(s))}] / (lambda*v_d(s)).
LowerBoundResult a_lower_bound(int dim, double lambda, int k, std::span<const double> s_grid);
LowerBoundResult a_lower_bound(int dim, double lambda, int k);

// q * sigma_k^2 / 6^d with q = exp(-lambda*(v_d(3/2) - v_d(1/2))) and
// sigma_k^2 = Var(min{k, Po(lambda*v_d(1/2))}). Strictly positive.
double variance_lb_constant(int dim, double lambda, int k);

struct TheoryReport {
    int dim = 1;
    double lambda = 1.0;
    int k = 1;
    std::optional<double> a_exact;
    double a_lower = 0.0;
    double best_s = 0.0;
    double a_upper = 1.0;
    double var_lb_constant = 0.0;
    double var_ub_slope = 0.0;
};

TheoryReport make_report(int dim, double lambda, int k);
TheoryReport make_report(int dim, double lambda, int k, std::span<const double> s_grid);

}  // namespace geochrome
