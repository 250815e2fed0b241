#include "geochrome/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "geochrome/geo_graph.hpp"
#include "geochrome/theory.hpp"

namespace geochrome {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_config(const ExperimentConfig& cfg) {
    require(cfg.dim >= 1, "config: dim must be >= 1");
    require(cfg.trials >= 1, "config: trials must be >= 1");
    require(cfg.k >= 0, "config: k must be >= 0");
    if (cfg.model == ModelKind::poisson) {
        require(cfg.lambda > 0.0 && std::isfinite(cfg.lambda), "config: lambda must be finite and positive");
        require(cfg.side > 0.0 && std::isfinite(cfg.side), "config: side must be finite and positive");
    } else {
        require(cfg.n >= 1, "config: binomial model needs n >= 1");
        require(cfg.nu > 0.0 && std::isfinite(cfg.nu), "config: nu must be finite and positive");
    }
    if (cfg.solver == SolverKind::sweep1d) require(cfg.dim == 1, "config: sweep1d requires dim 1");
    if (cfg.solver == SolverKind::anchor) {
        require(cfg.dim <= 2, "config: anchor solver requires dim 1 or 2");
        require(cfg.anchor_s > 0.0 && std::isfinite(cfg.anchor_s), "config: anchor solver requires s > 0");
    }
    if (cfg.solver == SolverKind::exact)
        require(cfg.component_cap >= 1, "config: component cap must be >= 1");
}

double solve_count(const ExperimentConfig& cfg, const PointSet& ps, const SeedSpec& seed) {
    const double r = cfg.radius();
    switch (cfg.solver) {
        case SolverKind::sweep1d:
            return static_cast<double>(max_colorable_sweep_1d(ps, r, cfg.k).colored_count);
        case SolverKind::exact: {
            const GeoGraph g = build_graph(ps, r);
            return static_cast<double>(max_colorable_exact(g, cfg.k, cfg.component_cap).colored_count);
        }
        case SolverKind::greedy: {
            const GeoGraph g = build_graph(ps, r);
            return static_cast<double>(max_colorable_greedy(g, cfg.k, cfg.order, seed).colored_count);
        }
        case SolverKind::anchor:
            return static_cast<double>(max_colorable_anchor(ps, r, cfg.k, cfg.anchor_s).colored_count);
    }
    throw std::logic_error("unknown solver kind");
}

// Unbiased sample variance plus its jackknife standard error over values,
// computed from centered sums.
struct VarianceEstimate {
    double value = 0.0;
    double se = 0.0;
};

VarianceEstimate jackknife_variance(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    if (n < 2) return {};
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
    double s2 = 0.0;
    for (double x : xs) s2 += (x - mean) * (x - mean);
    VarianceEstimate est;
    est.value = s2 / static_cast<double>(n - 1);
    if (n < 3) return est;
    const double nd = static_cast<double>(n);
    std::vector<double> theta(n);
    double theta_bar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = xs[i] - mean;
        const double ss_i = s2 - y * y * nd / (nd - 1.0);
        theta[i] = ss_i / (nd - 2.0);
        theta_bar += theta[i];
    }
    theta_bar /= nd;
    double dev2 = 0.0;
    for (double t : theta) dev2 += (t - theta_bar) * (t - theta_bar);
    est.se = std::sqrt((nd - 1.0) / nd * dev2);
    return est;
}

std::vector<double> successful(const std::vector<double>& counts) {
    std::vector<double> xs;
    xs.reserve(counts.size());
    for (double c : counts)
        if (c >= 0.0) xs.push_back(c);
    return xs;
}

PointSet subset_points(const PointSet& ps, const std::vector<std::uint32_t>& idx) {
    PointSet out;
    out.dim = ps.dim;
    out.side = ps.side;
    out.coords.reserve(idx.size() * static_cast<std::size_t>(ps.dim));
    for (std::uint32_t i : idx)
        for (double c : ps.point(i)) out.coords.push_back(c);
    return out;
}

}  // namespace

const char* to_string(ModelKind m) { return m == ModelKind::poisson ? "poisson" : "binomial"; }

const char* to_string(SolverKind s) {
    switch (s) {
        case SolverKind::exact: return "exact";
        case SolverKind::sweep1d: return "sweep1d";
        case SolverKind::greedy: return "greedy";
        case SolverKind::anchor: return "anchor";
    }
    return "exact";
}

unsigned worker_count() {
    if (const char* env = std::getenv("GEOCHROME_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0)
            return static_cast<unsigned>(std::min<unsigned long>(v, 1024));
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr err;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

double ExperimentConfig::radius() const {
    if (model == ModelKind::poisson) return 1.0;
    return std::pow(nu / static_cast<double>(n), 1.0 / dim);
}

double ExperimentConfig::denominator() const {
    if (model == ModelKind::poisson) return lambda * std::pow(side, dim);
    return static_cast<double>(n);
}

EstimateSummary estimate_ratio(const ExperimentConfig& cfg) {
    validate_config(cfg);
    EstimateSummary s;
    s.config = cfg;
    s.counts.assign(cfg.trials, -1.0);
    s.realized.assign(cfg.trials, -1.0);

    const auto t0 = std::chrono::steady_clock::now();
    parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t i) {
        const SeedSpec seed{cfg.master_seed, cfg.stream_base + i};
        const PointSet ps = cfg.model == ModelKind::poisson
                                ? sample_poisson(cfg.dim, cfg.lambda, cfg.side, seed)
                                : sample_binomial(cfg.dim, cfg.n, seed);
        try {
            s.counts[i] = solve_count(cfg, ps, seed);
            s.realized[i] = static_cast<double>(ps.size());
        } catch (const ComponentTooLargeError&) {
        }
    });
    s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    double sum = 0.0;
    double realized_ratio_sum = 0.0;
    int ok = 0;
    for (int i = 0; i < cfg.trials; ++i) {
        if (s.counts[i] < 0.0) {
            ++s.failed;
            continue;
        }
        ++ok;
        sum += s.counts[i];
        realized_ratio_sum += s.realized[i] > 0.0 ? s.counts[i] / s.realized[i] : 0.0;
    }
    if (static_cast<long long>(s.failed) * 100 > cfg.trials)
        throw std::runtime_error("estimate_ratio: " + std::to_string(s.failed) + " of " +
                                 std::to_string(cfg.trials) + " trials exceeded the component cap");

    s.mean_count = sum / ok;
    double ss = 0.0;
    for (int i = 0; i < cfg.trials; ++i)
        if (s.counts[i] >= 0.0) ss += (s.counts[i] - s.mean_count) * (s.counts[i] - s.mean_count);
    s.var_count = ok >= 2 ? ss / (ok - 1) : 0.0;
    const double denom = cfg.denominator();
    s.mean_ratio = s.mean_count / denom;
    s.mean_ratio_realized = realized_ratio_sum / ok;
    const double se_ratio = std::sqrt(s.var_count / ok) / denom;
    s.ci95_lo = s.mean_ratio - 1.96 * se_ratio;
    s.ci95_hi = s.mean_ratio + 1.96 * se_ratio;
    return s;
}

std::vector<VarianceRow> variance_scan(const ExperimentConfig& base, const std::vector<double>& t_grid) {
    require(base.model == ModelKind::poisson, "variance_scan: poisson model only");
    require(!t_grid.empty(), "variance_scan: t_grid must be nonempty");
    std::vector<VarianceRow> rows;
    rows.reserve(t_grid.size());
    for (std::size_t row = 0; row < t_grid.size(); ++row) {
        ExperimentConfig cfg = base;
        cfg.side = t_grid[row];
        cfg.stream_base = base.stream_base + row * static_cast<std::uint64_t>(base.trials);
        const EstimateSummary s = estimate_ratio(cfg);
        const VarianceEstimate est = jackknife_variance(successful(s.counts));
        const double td = std::pow(cfg.side, cfg.dim);
        rows.push_back({cfg.side, est.value, est.value / td, (est.value - 1.96 * est.se) / td,
                        (est.value + 1.96 * est.se) / td, cfg.trials, s.failed});
    }
    return rows;
}

std::vector<ConvergenceRow> convergence_scan(const ExperimentConfig& base,
                                             const std::vector<double>& t_grid) {
    require(base.model == ModelKind::poisson, "convergence_scan: poisson model only");
    require(!t_grid.empty(), "convergence_scan: t_grid must be nonempty");

    double a_exact = kNaN;
    double a_lower = 0.0;
    double a_upper = 1.0;
    double best_s = 0.0;
    if (base.dim == 1) a_exact = a_one_dim(base.lambda, base.k);
    if (base.dim <= 2) {
        const LowerBoundResult lb = a_lower_bound(base.dim, base.lambda, base.k);
        a_lower = lb.value;
        best_s = lb.best_s;
        a_upper = a_upper_bound(base.dim, base.lambda, base.k, GMaxMode::sharp);
    } else {
        a_upper = a_upper_bound(base.dim, base.lambda, base.k, GMaxMode::half_ball);
    }

    std::vector<ConvergenceRow> rows;
    rows.reserve(t_grid.size());
    for (std::size_t rowi = 0; rowi < t_grid.size(); ++rowi) {
        ExperimentConfig cfg = base;
        cfg.side = t_grid[rowi];
        cfg.stream_base = base.stream_base + rowi * static_cast<std::uint64_t>(base.trials);
        const EstimateSummary main = estimate_ratio(cfg);

        ConvergenceRow row;
        row.t = cfg.side;
        row.mean_ratio = main.mean_ratio;
        row.a_exact = a_exact;
        if (base.dim == 1) row.deviation = std::abs(main.mean_ratio - a_exact);
        row.a_lower = a_lower;
        row.a_upper = a_upper;
        row.trials = cfg.trials;
        row.failed = main.failed;

        if (base.dim >= 2) {
            // Companion solver columns share the row's point streams.
            const auto column = [&](SolverKind solver) -> double {
                if (solver == cfg.solver) return main.mean_ratio;
                ExperimentConfig c2 = cfg;
                c2.solver = solver;
                if (solver == SolverKind::anchor) c2.anchor_s = best_s;
                try {
                    return estimate_ratio(c2).mean_ratio;
                } catch (const std::runtime_error&) {
                    return kNaN;
                }
            };
            row.ratio_greedy = column(SolverKind::greedy);
            if (base.dim == 2) row.ratio_anchor = column(SolverKind::anchor);
            row.ratio_exact = column(SolverKind::exact);
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

struct CaseOutcome {
    std::vector<BatteryViolation> violations;
    std::uint64_t checks_run = 0;
};

void record(CaseOutcome& out, std::uint64_t case_index, std::uint64_t master_seed,
            const char* check, const std::string& detail) {
    out.violations.push_back({check, case_index, master_seed, detail});
}

PointSet random_points(Rng& rng, int dim, std::size_t n, double side) {
    PointSet ps;
    ps.dim = dim;
    ps.side = side;
    ps.coords.resize(n * static_cast<std::size_t>(dim));
    for (double& c : ps.coords) c = side * rng.next_unit();
    return ps;
}

std::size_t exact_count(const PointSet& ps, double r, int k, int cap) {
    return max_colorable_exact(build_graph(ps, r), k, cap).colored_count;
}

CaseOutcome run_battery_case(std::uint64_t master_seed, std::uint64_t case_index,
                             const BatteryOptions& opts) {
    CaseOutcome out;
    Rng rng(SeedSpec{master_seed, case_index});
    const int dim = opts.dim;
    const int cap = opts.component_cap;

    const std::size_t n = rng.next_below(static_cast<std::uint64_t>(opts.max_points) + 1);
    const PointSet ps = random_points(rng, dim, n, 1.0);
    const double r = dim == 1 ? 0.02 + 0.5 * rng.next_unit() : 0.05 + 0.45 * rng.next_unit();
    const int k = 1 + static_cast<int>(rng.next_below(3));
    const double alpha = std::array<double, 3>{0.5, 2.0, 4.0}[rng.next_below(3)];
    const double r_factor = 1.05 + rng.next_unit();
    const double gap = r * (0.01 + rng.next_unit());
    const std::size_t n2 = rng.next_below(static_cast<std::uint64_t>(opts.max_points) + 1);
    const PointSet ps2 = random_points(rng, dim, n2, 1.0);

    const GeoGraph g = build_graph(ps, r);
    const Coloring base = max_colorable_exact(g, k, cap);
    const std::size_t count = base.colored_count;

    const auto fmt = [](std::size_t a, std::size_t b) {
        return std::to_string(a) + " vs " + std::to_string(b);
    };

    ++out.checks_run;
    Coloring checked = base;
    if (opts.corrupt_hook) opts.corrupt_hook(checked);
    if (!validate_coloring(g, checked))
        record(out, case_index, master_seed, "properness", "exact coloring failed validation");

    if (dim == 1) {
        ++out.checks_run;
        const std::size_t sweep = max_colorable_sweep_1d(ps, r, k).colored_count;
        if (sweep != count)
            record(out, case_index, master_seed, "sweep_equals_exact", fmt(sweep, count));
    }

    {
        ++out.checks_run;
        std::vector<std::uint32_t> evens;
        std::vector<std::uint32_t> odds;
        for (std::uint32_t i = 0; i < n; ++i) (i % 2 == 0 ? evens : odds).push_back(i);
        const std::size_t n_even = exact_count(subset_points(ps, evens), r, k, cap);
        const std::size_t n_odd = exact_count(subset_points(ps, odds), r, k, cap);
        if (count > n_even + n_odd)
            record(out, case_index, master_seed, "subadditivity",
                   fmt(count, n_even + n_odd));
    }

    {
        ++out.checks_run;
        const double shift = 1.0 + r + gap;
        PointSet uni;
        uni.dim = dim;
        uni.side = 1.0 + shift;
        uni.coords = ps.coords;
        for (std::size_t i = 0; i < n2; ++i) {
            const auto p = ps2.point(i);
            uni.coords.push_back(p[0] + shift);
            for (int a = 1; a < dim; ++a) uni.coords.push_back(p[a]);
        }
        const std::size_t n_two = exact_count(ps2, r, k, cap);
        const std::size_t n_uni = exact_count(uni, r, k, cap);
        if (n_uni != count + n_two)
            record(out, case_index, master_seed, "superadditivity_separated",
                   fmt(n_uni, count + n_two));
    }

    {
        ++out.checks_run;
        std::vector<std::uint32_t> keep;
        for (std::uint32_t i = 0; i < n; ++i)
            if (rng.next_below(2) == 1) keep.push_back(i);
        const std::size_t n_sub = exact_count(subset_points(ps, keep), r, k, cap);
        if (n_sub > count)
            record(out, case_index, master_seed, "monotonicity_subset", fmt(n_sub, count));
    }

    {
        ++out.checks_run;
        const std::size_t n_wide = exact_count(ps, r * r_factor, k, cap);
        if (n_wide > count)
            record(out, case_index, master_seed, "monotonicity_radius", fmt(n_wide, count));
    }

    {
        ++out.checks_run;
        const GeoGraph ga = build_graph(scale_points(ps, alpha), r);
        const GeoGraph gb = build_graph(ps, r / alpha);
        if (ga.adjacency != gb.adjacency)
            record(out, case_index, master_seed, "scale_exchange", "adjacency mismatch");
        else {
            const std::size_t ca = max_colorable_exact(ga, k, cap).colored_count;
            const std::size_t cb = max_colorable_exact(gb, k, cap).colored_count;
            if (ca != cb) record(out, case_index, master_seed, "scale_exchange", fmt(ca, cb));
        }
    }

    if (n > 0) {
        ++out.checks_run;
        const std::size_t at = rng.next_below(n);
        std::vector<double> fresh(static_cast<std::size_t>(dim));
        for (double& c : fresh) c = rng.next_unit();
        const PointSet replaced = replace_point(ps, at, fresh);
        const std::size_t n_rep = exact_count(replaced, r, k, cap);
        const std::size_t diff = n_rep > count ? n_rep - count : count - n_rep;
        if (diff > 1)
            record(out, case_index, master_seed, "one_lipschitz", fmt(n_rep, count));
    }

    {
        ++out.checks_run;
        std::size_t total = 0;
        for (const auto& members : connected_components(g))
            total += exact_count(subset_points(ps, members), r, k, cap);
        if (total != count)
            record(out, case_index, master_seed, "component_additivity", fmt(total, count));
    }

    return out;
}

}  // namespace

BatteryReport property_battery(std::uint64_t master_seed, std::uint64_t cases,
                               const BatteryOptions& opts) {
    require(cases >= 1, "property_battery: cases must be >= 1");
    require(opts.dim >= 1, "property_battery: dim must be >= 1");
    require(opts.max_points >= 1 && opts.max_points <= opts.component_cap,
            "property_battery: max_points must be in [1, component_cap]");
    BatteryReport report;
    report.dim = opts.dim;
    report.cases = cases;
    report.master_seed = master_seed;

    std::vector<CaseOutcome> outcomes(cases);
    parallel_for(cases, [&](std::size_t i) { outcomes[i] = run_battery_case(master_seed, i, opts); });
    for (auto& out : outcomes) {
        report.checks_run += out.checks_run;
        for (auto& v : out.violations) report.violations.push_back(std::move(v));
    }

    if (opts.run_tiling && opts.dim <= 2) {
        ExperimentConfig cfg;
        cfg.model = ModelKind::poisson;
        cfg.dim = opts.dim;
        cfg.lambda = opts.dim == 1 ? 1.0 : 0.5;
        cfg.k = 2;
        cfg.trials = 400;
        cfg.master_seed = master_seed;
        cfg.solver = opts.dim == 1 ? SolverKind::sweep1d : SolverKind::exact;
        cfg.component_cap = kDefaultComponentCap;
        const double s = 3.0;
        const double t = opts.dim == 1 ? 10.0 : 8.0;

        cfg.side = t;
        cfg.stream_base = cases;
        const EstimateSummary big = estimate_ratio(cfg);
        cfg.side = s;
        cfg.stream_base = cases + static_cast<std::uint64_t>(cfg.trials);
        const EstimateSummary small = estimate_ratio(cfg);

        const double m_upper = std::pow(std::ceil(t / s), opts.dim);
        const double m_lower = std::pow(std::floor(t / (s + 1.0)), opts.dim);
        const double se_big = std::sqrt(big.var_count / (big.config.trials - big.failed));
        const double se_small = std::sqrt(small.var_count / (small.config.trials - small.failed));

        report.tiling.run = true;
        report.tiling.value = big.mean_count;
        report.tiling.lower = m_lower * small.mean_count -
                              4.0 * std::sqrt(se_big * se_big + m_lower * m_lower * se_small * se_small);
        report.tiling.upper = m_upper * small.mean_count +
                              4.0 * std::sqrt(se_big * se_big + m_upper * m_upper * se_small * se_small);
        report.tiling.ok = report.tiling.value >= report.tiling.lower &&
                           report.tiling.value <= report.tiling.upper;
        ++report.checks_run;
        if (!report.tiling.ok)
            report.violations.push_back(
                {"tiling", 0, master_seed,
                 "mean count " + std::to_string(report.tiling.value) + " outside [" +
                     std::to_string(report.tiling.lower) + ", " + std::to_string(report.tiling.upper) + "]"});
    }
    return report;
}

std::vector<EfronSteinRow> efron_stein_check(int dim, double nu, int k,
                                             const std::vector<std::uint64_t>& n_grid, int trials,
                                             std::uint64_t master_seed) {
    require(!n_grid.empty(), "efron_stein_check: n_grid must be nonempty");
    std::vector<EfronSteinRow> rows;
    rows.reserve(n_grid.size());
    for (std::size_t row = 0; row < n_grid.size(); ++row) {
        ExperimentConfig cfg;
        cfg.model = ModelKind::binomial;
        cfg.dim = dim;
        cfg.n = n_grid[row];
        cfg.nu = nu;
        cfg.k = k;
        cfg.trials = trials;
        cfg.master_seed = master_seed;
        cfg.stream_base = row * static_cast<std::uint64_t>(trials);
        cfg.solver = dim == 1 ? SolverKind::sweep1d : SolverKind::exact;
        const EstimateSummary s = estimate_ratio(cfg);
        const VarianceEstimate est = jackknife_variance(successful(s.counts));
        rows.push_back({n_grid[row], est.value, est.value - 1.96 * est.se, est.value + 1.96 * est.se,
                        static_cast<double>(n_grid[row]) / 2.0, trials, s.failed});
    }
    return rows;
}

std::vector<ConcentrationRow> concentration_check(int dim, double nu, int k, std::uint64_t n,
                                                  int trials, const std::vector<double>& delta_grid,
                                                  std::uint64_t master_seed) {
    require(!delta_grid.empty(), "concentration_check: delta_grid must be nonempty");
    ExperimentConfig cfg;
    cfg.model = ModelKind::binomial;
    cfg.dim = dim;
    cfg.n = n;
    cfg.nu = nu;
    cfg.k = k;
    cfg.trials = trials;
    cfg.master_seed = master_seed;
    cfg.solver = dim == 1 ? SolverKind::sweep1d : SolverKind::exact;
    const EstimateSummary s = estimate_ratio(cfg);

    std::vector<double> ratios;
    ratios.reserve(s.counts.size());
    for (double c : s.counts)
        if (c >= 0.0) ratios.push_back(c / static_cast<double>(n));
    const double mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / ratios.size();

    std::vector<ConcentrationRow> rows;
    rows.reserve(delta_grid.size());
    for (double delta : delta_grid) {
        std::size_t outside = 0;
        for (double x : ratios)
            if (std::abs(x - mean) > delta) ++outside;
        rows.push_back({delta, static_cast<double>(outside) / ratios.size(),
                        2.0 * std::exp(-static_cast<double>(n) * delta * delta / 2.0)});
    }
    return rows;
}

std::uint64_t monotone_coupling_check(int dim, double nu, int k, std::uint64_t n, int pairs,
                                      std::uint64_t master_seed) {
    require(dim >= 1, "monotone_coupling_check: dim must be >= 1");
    require(n >= 1, "monotone_coupling_check: n must be >= 1");
    require(pairs >= 1, "monotone_coupling_check: pairs must be >= 1");
    require(nu > 0.0 && std::isfinite(nu), "monotone_coupling_check: nu must be finite and positive");
    std::vector<char> bad(pairs, 0);
    parallel_for(static_cast<std::size_t>(pairs), [&](std::size_t i) {
        const SeedSpec seed{master_seed, i};
        const PointSet full = sample_binomial(dim, n + 1, seed);
        PointSet prefix;
        prefix.dim = dim;
        prefix.side = 1.0;
        prefix.coords.assign(full.coords.begin(),
                             full.coords.begin() + static_cast<std::ptrdiff_t>(n) * dim);
        const double r_full = std::pow(nu / static_cast<double>(n + 1), 1.0 / dim);
        const double r_prefix = std::pow(nu / static_cast<double>(n), 1.0 / dim);
        const auto count = [&](const PointSet& ps, double r) {
            if (dim == 1) return max_colorable_sweep_1d(ps, r, k).colored_count;
            return max_colorable_exact(build_graph(ps, r), k, 1 << 20).colored_count;
        };
        if (count(full, r_full) < count(prefix, r_prefix)) bad[i] = 1;
    });
    return static_cast<std::uint64_t>(std::count(bad.begin(), bad.end(), 1));
}

std::uint64_t sweep_exact_check(std::uint64_t master_seed, int cases) {
    require(cases >= 1, "sweep_exact_check: cases must be >= 1");
    constexpr std::array<double, 3> kLambdas{0.5, 1.0, 2.0};
    std::vector<char> mismatch(cases, 0);
    parallel_for(static_cast<std::size_t>(cases), [&](std::size_t i) {
        Rng rng(SeedSpec{master_seed, i});
        const double lambda = kLambdas[i % 3];
        const int k = 1 + static_cast<int>((i / 3) % 3);
        const std::size_t n = 4 + rng.next_below(13);
        const double side = static_cast<double>(n) / lambda;
        const PointSet ps = random_points(rng, 1, n, side);
        const std::size_t sweep = max_colorable_sweep_1d(ps, 1.0, k).colored_count;
        const std::size_t exact = exact_count(ps, 1.0, k, static_cast<int>(n));
        if (sweep != exact) mismatch[i] = 1;
    });
    return static_cast<std::uint64_t>(std::count(mismatch.begin(), mismatch.end(), 1));
}

}  // namespace geochrome
