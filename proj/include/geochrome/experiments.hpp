#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "geochrome/coloring.hpp"
#include "geochrome/point_process.hpp"
#include "geochrome/rng.hpp"

namespace geochrome {

enum class ModelKind { poisson, binomial };
enum class SolverKind { exact, sweep1d, greedy, anchor };

const char* to_string(ModelKind m);
const char* to_string(SolverKind s);

// Worker count resolved from GEOCHROME_THREADS; 0 or unset means all cores.
unsigned worker_count();

// Runs body(0..count-1) across workers; rethrows the first body exception.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

struct ExperimentConfig {
    ModelKind model = ModelKind::poisson;
    int dim = 1;
    double lambda = 1.0;  // poisson intensity
    double side = 1.0;    // poisson window side t
    std::uint64_t n = 0;  // binomial point count
    double nu = 1.0;      // binomial density, r = (nu/n)^(1/dim)
    int k = 1;
    int trials = 200;
    std::uint64_t master_seed = 0;
    std::uint64_t stream_base = 0;
    SolverKind solver = SolverKind::sweep1d;
    int component_cap = kDefaultComponentCap;
    GreedyOrder order = GreedyOrder::index;
    double anchor_s = 0.0;

    double radius() const;
    double denominator() const;
};

struct EstimateSummary {
    ExperimentConfig config;
    std::vector<double> counts;    // per trial; -1 marks a failed trial
    std::vector<double> realized;  // realized point counts; -1 marks a failed trial
    int failed = 0;
    double mean_count = 0.0;
    double mean_ratio = 0.0;
    double mean_ratio_realized = 0.0;
    double var_count = 0.0;
    double ci95_lo = 0.0;
    double ci95_hi = 0.0;
    double wall_seconds = 0.0;
};

// Mean colored fraction over independent trial streams. Throws when more
// than 1% of trials exceed the component cap.
EstimateSummary estimate_ratio(const ExperimentConfig& cfg);

struct VarianceRow {
    double t = 0.0;
    double var_count = 0.0;
    double var_norm = 0.0;  // var_count / t^dim
    double ci_lo = 0.0;     // jackknife 95% band on var_norm
    double ci_hi = 0.0;
    int trials = 0;
    int failed = 0;
};

std::vector<VarianceRow> variance_scan(const ExperimentConfig& base, const std::vector<double>& t_grid);

struct ConvergenceRow {
    double t = 0.0;
    double mean_ratio = 0.0;
    double deviation = std::numeric_limits<double>::quiet_NaN();  // |mean_ratio - a_exact|, dim 1
    double a_exact = std::numeric_limits<double>::quiet_NaN();
    double a_lower = 0.0;
    double a_upper = 1.0;
    double ratio_exact = std::numeric_limits<double>::quiet_NaN();
    double ratio_greedy = std::numeric_limits<double>::quiet_NaN();
    double ratio_anchor = std::numeric_limits<double>::quiet_NaN();
    int trials = 0;
    int failed = 0;
};

std::vector<ConvergenceRow> convergence_scan(const ExperimentConfig& base,
                                             const std::vector<double>& t_grid);

struct BatteryViolation {
    std::string check;
    std::uint64_t case_index = 0;
    std::uint64_t master_seed = 0;
    std::string detail;
};

struct TilingCheck {
    bool run = false;
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool ok = true;
};

struct BatteryReport {
    int dim = 1;
    std::uint64_t cases = 0;
    std::uint64_t master_seed = 0;
    std::uint64_t checks_run = 0;
    std::vector<BatteryViolation> violations;
    TilingCheck tiling;
};

struct BatteryOptions {
    int dim = 1;
    int max_points = 16;
    int component_cap = kDefaultComponentCap;
    bool run_tiling = true;
    // Test hook: applied to each exact coloring before validation.
    std::function<void(Coloring&)> corrupt_hook;
};

// Randomized structural checks (properness, sweep agreement, sub/superadditivity,
// monotonicity, scale exchange, one-point Lipschitz, component additivity) plus
// an aggregate tiling sandwich.
BatteryReport property_battery(std::uint64_t master_seed, std::uint64_t cases,
                               const BatteryOptions& opts = {});

struct EfronSteinRow {
    std::uint64_t n = 0;
    double var_count = 0.0;
    double ci_lo = 0.0;  // jackknife 95% band on var_count
    double ci_hi = 0.0;
    double bound = 0.0;  // n / 2
    int trials = 0;
    int failed = 0;
};

std::vector<EfronSteinRow> efron_stein_check(int dim, double nu, int k,
                                             const std::vector<std::uint64_t>& n_grid, int trials,
                                             std::uint64_t master_seed);

struct ConcentrationRow {
    double delta = 0.0;
    double fraction = 0.0;  // empirical P(|ratio - mean| > delta)
    double bound = 0.0;     // 2 exp(-n delta^2 / 2)
};

std::vector<ConcentrationRow> concentration_check(int dim, double nu, int k, std::uint64_t n,
                                                  int trials, const std::vector<double>& delta_grid,
                                                  std::uint64_t master_seed);

// Counts coupled prefix pairs where adding one point decreases the count.
std::uint64_t monotone_coupling_check(int dim, double nu, int k, std::uint64_t n, int pairs,
                                      std::uint64_t master_seed);

// Counts random 1d instances where the sweep and exact counts differ.
std::uint64_t sweep_exact_check(std::uint64_t master_seed, int cases);

}  // namespace geochrome
