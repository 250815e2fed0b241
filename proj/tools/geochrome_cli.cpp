#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geochrome/coloring.hpp"
#include "geochrome/experiments.hpp"
#include "geochrome/geo_graph.hpp"
#include "geochrome/json_io.hpp"
#include "geochrome/point_process.hpp"
#include "geochrome/theory.hpp"

namespace gc = geochrome;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolations = 3;

struct Flags {
    int dim = 1;
    double lambda = 1.0;
    int k = 1;
    double t = 1.0;
    std::uint64_t n = 0;
    double nu = 1.0;
    double r = 0.0;
    double s = 0.0;
    int trials = 200;
    std::uint64_t seed = 0;
    std::string method;
    int cap = gc::kDefaultComponentCap;
    std::string order = "index";
    std::string format = "json";
    std::string out;
    std::vector<double> t_grid;
    std::vector<std::uint64_t> n_grid{50, 100};
    std::vector<double> delta_grid{0.05, 0.1, 0.2};
    std::vector<double> s_grid;
    std::string in;
    std::string graph_out;
    std::uint64_t cases = 1000;
    std::string suite = "all";
};

struct Presence {
    CLI::Option* seed = nullptr;
    CLI::Option* n = nullptr;
    CLI::Option* method = nullptr;
    CLI::Option* s = nullptr;
    CLI::Option* trials = nullptr;
    CLI::Option* nu = nullptr;
    CLI::Option* k = nullptr;
};

std::uint64_t resolve_master_seed(const Flags& f, const Presence& p) {
    if (p.seed != nullptr && p.seed->count() > 0) return f.seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void announce_seed(std::uint64_t master_seed) {
    std::cerr << "master_seed: " << master_seed << "\n";
}

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << content;
    if (!out) throw std::runtime_error("failed writing output file: " + out_path);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

gc::SolverKind parse_solver(const std::string& name) {
    if (name == "exact") return gc::SolverKind::exact;
    if (name == "sweep1d") return gc::SolverKind::sweep1d;
    if (name == "greedy") return gc::SolverKind::greedy;
    if (name == "anchor") return gc::SolverKind::anchor;
    throw std::invalid_argument("unknown method: " + name);
}

gc::GreedyOrder parse_order(const std::string& name) {
    if (name == "index") return gc::GreedyOrder::index;
    if (name == "random") return gc::GreedyOrder::random;
    if (name == "degree_asc") return gc::GreedyOrder::degree_asc;
    throw std::invalid_argument("unknown order: " + name);
}

// Shared flag groups. Each subcommand registers only the flags it consumes;
// unknown flags stay hard errors.
void add_model_flags(CLI::App* cmd, Flags& f, Presence& p) {
    cmd->add_option("--dim", f.dim, "ambient dimension")->check(CLI::Range(1, 64));
    cmd->add_option("--lambda", f.lambda, "Poisson intensity");
    cmd->add_option("--t", f.t, "Poisson window side");
    p.n = cmd->add_option("--n", f.n, "point count (switches to the n-point model)");
    cmd->add_option("--nu", f.nu, "density parameter of the n-point model");
}

void add_solver_flags(CLI::App* cmd, Flags& f, Presence& p, bool with_order = true) {
    p.method = cmd->add_option("--method", f.method, "solver")
                   ->check(CLI::IsMember({"exact", "sweep1d", "greedy", "anchor"}));
    cmd->add_option("--cap", f.cap, "exact solver component size cap")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    if (with_order)
        cmd->add_option("--order", f.order, "greedy visit order")
            ->check(CLI::IsMember({"index", "random", "degree_asc"}));
    p.s = cmd->add_option("--s", f.s, "anchor lattice covering radius (r units)");
}

void add_seed_flag(CLI::App* cmd, Flags& f, Presence& p) {
    p.seed = cmd->add_option("--seed", f.seed, "master seed (default: system entropy)");
}

void add_output_flags(CLI::App* cmd, Flags& f, bool with_format = true) {
    if (with_format)
        cmd->add_option("--format", f.format, "output format")
            ->capture_default_str()
            ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", f.out, "output path (default: stdout)");
}

gc::SolverKind default_solver(int dim) {
    return dim == 1 ? gc::SolverKind::sweep1d : gc::SolverKind::exact;
}

gc::ExperimentConfig config_from_flags(const Flags& f, const Presence& p,
                                       std::uint64_t master_seed, gc::SolverKind fallback) {
    gc::ExperimentConfig cfg;
    const bool binomial = p.n != nullptr && p.n->count() > 0;
    cfg.model = binomial ? gc::ModelKind::binomial : gc::ModelKind::poisson;
    cfg.dim = f.dim;
    cfg.lambda = f.lambda;
    cfg.side = f.t;
    cfg.n = f.n;
    cfg.nu = f.nu;
    cfg.k = f.k;
    cfg.trials = f.trials;
    cfg.master_seed = master_seed;
    cfg.solver = p.method->count() > 0 ? parse_solver(f.method) : fallback;
    cfg.component_cap = f.cap;
    cfg.order = parse_order(f.order);
    if (cfg.solver == gc::SolverKind::anchor) {
        if (p.s->count() > 0) {
            cfg.anchor_s = f.s;
        } else {
            const double density = binomial ? f.nu : f.lambda;
            cfg.anchor_s = gc::a_lower_bound(cfg.dim, density, cfg.k).best_s;
        }
    }
    return cfg;
}

int run_gen(const Flags& f, const Presence& p) {
    const std::uint64_t master_seed = resolve_master_seed(f, p);
    announce_seed(master_seed);
    gc::PointSet ps;
    if (p.n->count() > 0) {
        ps = gc::sample_binomial(f.dim, f.n, gc::SeedSpec{master_seed, 0});
    } else {
        ps = gc::sample_poisson(f.dim, f.lambda, f.t, gc::SeedSpec{master_seed, 0});
    }
    write_output(gc::to_json(ps).dump(2) + "\n", f.out);
    return kExitOk;
}

int run_solve(const Flags& f, const Presence& p) {
    const std::uint64_t master_seed = resolve_master_seed(f, p);
    announce_seed(master_seed);
    const gc::PointSet ps = gc::point_set_from_json(gc::Json::parse(slurp(f.in)));
    const std::string method = p.method->count() > 0 ? f.method : "exact";

    gc::Coloring coloring;
    const gc::GeoGraph graph = gc::build_graph(ps, f.r);
    if (method == "exact") {
        coloring = gc::max_colorable_exact(graph, f.k, f.cap);
    } else if (method == "sweep1d") {
        coloring = gc::max_colorable_sweep_1d(ps, f.r, f.k);
    } else if (method == "greedy") {
        coloring = gc::max_colorable_greedy(graph, f.k, parse_order(f.order),
                                            gc::SeedSpec{master_seed, 0});
    } else {
        if (p.s->count() == 0)
            throw std::invalid_argument("--method anchor requires --s");
        coloring = gc::max_colorable_anchor(ps, f.r, f.k, f.s);
    }
    if (!gc::validate_coloring(graph, coloring))
        throw std::logic_error("solver produced an invalid coloring");
    if (!f.graph_out.empty())
        write_output(gc::graph_to_json(graph).dump(2) + "\n", f.graph_out);
    write_output(gc::to_json(coloring).dump(2) + "\n", f.out);
    return kExitOk;
}

int run_theory(const Flags& f) {
    const gc::TheoryReport report =
        f.s_grid.empty() ? gc::make_report(f.dim, f.lambda, f.k)
                         : gc::make_report(f.dim, f.lambda, f.k, f.s_grid);
    if (f.format == "csv") {
        gc::Json meta{{"dim", f.dim}, {"lambda", f.lambda}, {"k", f.k}};
        std::string out = "# " + meta.dump() + "\n";
        out += "dim,lambda,k,a_exact,a_lower,best_s,a_upper,var_lb_constant,var_ub_slope\n";
        const double a_exact =
            report.a_exact ? *report.a_exact : std::numeric_limits<double>::quiet_NaN();
        out += std::to_string(report.dim) + "," + gc::format_double(report.lambda) + "," +
               std::to_string(report.k) + "," + gc::format_double(a_exact) + "," +
               gc::format_double(report.a_lower) + "," + gc::format_double(report.best_s) + "," +
               gc::format_double(report.a_upper) + "," + gc::format_double(report.var_lb_constant) +
               "," + gc::format_double(report.var_ub_slope) + "\n";
        write_output(out, f.out);
    } else {
        write_output(gc::to_json(report).dump(2) + "\n", f.out);
    }
    return kExitOk;
}

int run_estimate(const Flags& f, const Presence& p) {
    const std::uint64_t master_seed = resolve_master_seed(f, p);
    announce_seed(master_seed);
    const gc::ExperimentConfig cfg = config_from_flags(f, p, master_seed, default_solver(f.dim));
    const gc::EstimateSummary summary = gc::estimate_ratio(cfg);
    if (f.format == "csv") {
        std::string out = "# " + gc::to_json(cfg).dump() + "\n";
        out += "mean_count,mean_ratio,mean_ratio_realized,var_count,ci_lo,ci_hi,trials,failed\n";
        out += gc::format_double(summary.mean_count) + "," + gc::format_double(summary.mean_ratio) +
               "," + gc::format_double(summary.mean_ratio_realized) + "," +
               gc::format_double(summary.var_count) + "," + gc::format_double(summary.ci95_lo) +
               "," + gc::format_double(summary.ci95_hi) + "," + std::to_string(cfg.trials) + "," +
               std::to_string(summary.failed) + "\n";
        write_output(out, f.out);
    } else {
        write_output(gc::to_json(summary).dump(2) + "\n", f.out);
    }
    return kExitOk;
}

int run_variance_scan(const Flags& f, const Presence& p) {
    const std::uint64_t master_seed = resolve_master_seed(f, p);
    announce_seed(master_seed);
    gc::ExperimentConfig cfg = config_from_flags(f, p, master_seed, default_solver(f.dim));
    cfg.side = f.t_grid.front();
    const std::vector<gc::VarianceRow> rows = gc::variance_scan(cfg, f.t_grid);
    write_output(f.format == "csv" ? gc::variance_csv(cfg, rows)
                                   : gc::scan_to_json(cfg, rows).dump(2) + "\n",
                 f.out);
    return kExitOk;
}

int run_convergence_scan(const Flags& f, const Presence& p) {
    const std::uint64_t master_seed = resolve_master_seed(f, p);
    announce_seed(master_seed);
    const gc::SolverKind fallback =
        f.dim == 1 ? gc::SolverKind::sweep1d : gc::SolverKind::greedy;
    gc::ExperimentConfig cfg = config_from_flags(f, p, master_seed, fallback);
    cfg.side = f.t_grid.front();
    const std::vector<gc::ConvergenceRow> rows = gc::convergence_scan(cfg, f.t_grid);
    write_output(f.format == "csv" ? gc::convergence_csv(cfg, rows)
                                   : gc::scan_to_json(cfg, rows).dump(2) + "\n",
                 f.out);
    return kExitOk;
}

int run_battery(const Flags& f, const Presence& p) {
    const std::uint64_t master_seed = resolve_master_seed(f, p);
    announce_seed(master_seed);
    gc::BatteryOptions opts;
    opts.dim = f.dim;
    opts.component_cap = f.cap;
    const gc::BatteryReport report = gc::property_battery(master_seed, f.cases, opts);
    write_output(f.format == "csv" ? gc::battery_csv(report) : gc::to_json(report).dump(2) + "\n",
                 f.out);
    return report.violations.empty() ? kExitOk : kExitViolations;
}

// Composite verification; returns the number of failed checks.
int run_verify(const Flags& f, const Presence& p) {
    const std::uint64_t master_seed = resolve_master_seed(f, p);
    announce_seed(master_seed);
    const bool all = f.suite == "all";
    const double nu = p.nu->count() > 0 ? f.nu : 2.0;
    const int k = p.k->count() > 0 ? f.k : 2;
    std::uint64_t failures = 0;
    std::ostringstream report;

    const auto line = [&](bool ok, const std::string& text) {
        if (!ok) ++failures;
        report << (ok ? "ok   " : "FAIL ") << text << "\n";
    };

    if (all || f.suite == "battery") {
        for (int dim : {1, 2}) {
            gc::BatteryOptions opts;
            opts.dim = dim;
            const std::uint64_t cases = dim == 1 ? f.cases : f.cases / 2;
            const gc::BatteryReport rep = gc::property_battery(master_seed, cases, opts);
            line(rep.violations.empty(),
                 "battery dim " + std::to_string(dim) + ": cases " + std::to_string(cases) +
                     ", checks " + std::to_string(rep.checks_run) + ", violations " +
                     std::to_string(rep.violations.size()));
            for (const auto& v : rep.violations)
                report << "     " << v.check << " case " << v.case_index << ": " << v.detail
                       << "\n";
        }
    }

    if (all || f.suite == "sweep-exact") {
        const std::uint64_t mismatches =
            gc::sweep_exact_check(master_seed, static_cast<int>(f.cases));
        line(mismatches == 0, "sweep-exact: cases " + std::to_string(f.cases) + ", mismatches " +
                                  std::to_string(mismatches));
    }

    if (all || f.suite == "efron-stein") {
        const int trials = p.trials->count() > 0 ? f.trials : 2000;
        const auto rows = gc::efron_stein_check(f.dim, nu, k, f.n_grid, trials, master_seed);
        for (const auto& row : rows)
            line(row.ci_hi <= row.bound,
                 "efron-stein n " + std::to_string(row.n) + ": var " +
                     gc::format_double(row.var_count) + ", ci_hi " + gc::format_double(row.ci_hi) +
                     ", bound " + gc::format_double(row.bound));
        const std::uint64_t bad =
            gc::monotone_coupling_check(f.dim, nu, k, f.n_grid.front(), 500, master_seed);
        line(bad == 0, "monotone coupling: pairs 500, violations " + std::to_string(bad));
    }

    if (all || f.suite == "concentration") {
        const int trials = p.trials->count() > 0 ? f.trials : 5000;
        const std::uint64_t n = p.n->count() > 0 ? f.n : 200;
        const auto rows =
            gc::concentration_check(f.dim, nu, k, n, trials, f.delta_grid, master_seed);
        for (const auto& row : rows)
            line(row.fraction <= row.bound,
                 "concentration delta " + gc::format_double(row.delta) + ": fraction " +
                     gc::format_double(row.fraction) + ", bound " + gc::format_double(row.bound));
    }

    if (all || f.suite == "sandwich") {
        for (double lambda : {0.5, 1.0, 2.0, 4.0})
            for (int k : {1, 2, 4, 8}) {
                const double lower = gc::a_lower_bound(1, lambda, k).value;
                const double exact = gc::a_one_dim(lambda, k);
                const double upper = gc::a_upper_bound(1, lambda, k, gc::GMaxMode::sharp);
                line(lower <= exact && exact <= upper,
                     "sandwich lambda " + gc::format_double(lambda) + " k " + std::to_string(k) +
                         ": " + gc::format_double(lower) + " <= " + gc::format_double(exact) +
                         " <= " + gc::format_double(upper));
            }
        double prev = 0.0;
        bool monotone = true;
        double last = 0.0;
        for (int k = 16; k <= 512; k *= 2) {
            last = gc::a_lower_bound(2, 1.0, k).value;
            if (last < prev) monotone = false;
            prev = last;
        }
        line(monotone, "coverage: lower bound nondecreasing over k = 16..512");
        line(last > 0.9, "coverage: lower bound at k 512 is " + gc::format_double(last));
    }

    report << (failures == 0 ? "verify: PASS\n"
                             : "verify: FAIL (" + std::to_string(failures) + " checks)\n");
    write_output(report.str(), f.out);
    return failures == 0 ? kExitOk : kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximum k-coloring of random geometric graphs: sampling, solvers, theory, experiments"};
    app.require_subcommand(1);
    Flags f;

    CLI::App* gen = app.add_subcommand("gen", "sample a point set and emit it as JSON");
    Presence gen_p;
    add_model_flags(gen, f, gen_p);
    add_seed_flag(gen, f, gen_p);
    add_output_flags(gen, f, false);

    CLI::App* solve = app.add_subcommand("solve", "color one point set read from a JSON file");
    Presence solve_p;
    solve->add_option("--in", f.in, "point set JSON file")->required();
    solve->add_option("--r", f.r, "graph radius")->required();
    solve->add_option("--k", f.k, "number of colors")->required();
    add_solver_flags(solve, f, solve_p);
    add_seed_flag(solve, f, solve_p);
    solve->add_option("--graph-out", f.graph_out, "also dump the graph as JSON to this path");
    add_output_flags(solve, f, false);

    CLI::App* theory = app.add_subcommand("theory", "closed-form constants and bounds report");
    theory->add_option("--dim", f.dim, "ambient dimension")->check(CLI::Range(1, 64));
    theory->add_option("--lambda", f.lambda, "Poisson intensity");
    theory->add_option("--k", f.k, "number of colors")->required();
    theory->add_option("--s-grid", f.s_grid, "covering radii for the lower-bound search")
        ->delimiter(',');
    add_output_flags(theory, f);

    CLI::App* estimate = app.add_subcommand("estimate", "Monte Carlo mean colored fraction");
    Presence est_p;
    add_model_flags(estimate, f, est_p);
    estimate->add_option("--k", f.k, "number of colors")->required();
    est_p.trials = estimate->add_option("--trials", f.trials, "trial count")
                       ->capture_default_str()
                       ->check(CLI::PositiveNumber);
    add_solver_flags(estimate, f, est_p);
    add_seed_flag(estimate, f, est_p);
    add_output_flags(estimate, f);

    CLI::App* vscan = app.add_subcommand("variance-scan", "count variance across window sides");
    Presence vscan_p;
    add_model_flags(vscan, f, vscan_p);
    vscan->add_option("--k", f.k, "number of colors")->required();
    vscan->add_option("--t-grid", f.t_grid, "window sides")->delimiter(',')->required();
    vscan_p.trials = vscan->add_option("--trials", f.trials, "trials per grid point")
                         ->capture_default_str()
                         ->check(CLI::PositiveNumber);
    add_solver_flags(vscan, f, vscan_p, false);
    add_seed_flag(vscan, f, vscan_p);
    add_output_flags(vscan, f);

    CLI::App* cscan = app.add_subcommand("convergence-scan",
                                         "mean colored fraction against theory across window sides");
    Presence cscan_p;
    add_model_flags(cscan, f, cscan_p);
    cscan->add_option("--k", f.k, "number of colors")->required();
    cscan->add_option("--t-grid", f.t_grid, "window sides")->delimiter(',')->required();
    cscan_p.trials = cscan->add_option("--trials", f.trials, "trials per grid point")
                         ->capture_default_str()
                         ->check(CLI::PositiveNumber);
    add_solver_flags(cscan, f, cscan_p);
    add_seed_flag(cscan, f, cscan_p);
    add_output_flags(cscan, f);

    CLI::App* battery = app.add_subcommand("battery", "randomized structural property checks");
    Presence battery_p;
    battery->add_option("--dim", f.dim, "ambient dimension")->check(CLI::Range(1, 64));
    battery->add_option("--cases", f.cases, "number of random cases")->capture_default_str();
    battery->add_option("--cap", f.cap, "exact solver component size cap")->capture_default_str();
    add_seed_flag(battery, f, battery_p);
    add_output_flags(battery, f);

    CLI::App* verify = app.add_subcommand("verify", "run verification suites and report violations");
    Presence verify_p;
    verify->add_option("--suite", f.suite, "which suite to run")
        ->capture_default_str()
        ->check(CLI::IsMember(
            {"battery", "sweep-exact", "efron-stein", "concentration", "sandwich", "all"}));
    verify->add_option("--cases", f.cases, "cases for battery and sweep-exact")
        ->capture_default_str();
    verify->add_option("--dim", f.dim, "dimension for the sampling suites")->check(CLI::Range(1, 64));
    verify_p.nu = verify->add_option("--nu", f.nu, "density for the n-point suites (default 2)");
    verify_p.k = verify->add_option("--k", f.k, "colors for the sampling suites (default 2)");
    verify_p.n = verify->add_option("--n", f.n, "point count for the concentration suite");
    verify->add_option("--n-grid", f.n_grid, "point counts for the variance bound suite")
        ->delimiter(',');
    verify->add_option("--delta-grid", f.delta_grid, "deviations for the concentration suite")
        ->delimiter(',');
    verify_p.trials = verify->add_option("--trials", f.trials, "override per-suite trial defaults")
                          ->check(CLI::PositiveNumber);
    add_seed_flag(verify, f, verify_p);
    verify->add_option("--out", f.out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return run_gen(f, gen_p);
        if (solve->parsed()) return run_solve(f, solve_p);
        if (theory->parsed()) return run_theory(f);
        if (estimate->parsed()) return run_estimate(f, est_p);
        if (vscan->parsed()) return run_variance_scan(f, vscan_p);
        if (cscan->parsed()) return run_convergence_scan(f, cscan_p);
        if (battery->parsed()) return run_battery(f, battery_p);
        if (verify->parsed()) return run_verify(f, verify_p);
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: invalid JSON input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
