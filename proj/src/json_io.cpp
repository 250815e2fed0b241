#include "geochrome/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace geochrome {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

const Json& field(const Json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
    return *it;
}

double number_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number()) fail(std::string("field \"") + key + "\" must be a number");
    return v.get<double>();
}

long long int_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) fail(std::string("field \"") + key + "\" must be an integer");
    return v.get<long long>();
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) line += ',';
        line += fields[i];
    }
    line += '\n';
    return line;
}

std::string meta_line(const Json& j) { return "# " + j.dump() + "\n"; }

std::string fmt_u64(std::uint64_t v) { return std::to_string(v); }
std::string fmt_int(long long v) { return std::to_string(v); }

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

Json to_json(const PointSet& ps) {
    Json points = Json::array();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        Json p = Json::array();
        for (double c : ps.point(i)) p.push_back(c);
        points.push_back(std::move(p));
    }
    return Json{{"dim", ps.dim}, {"side", ps.side}, {"points", std::move(points)}};
}

PointSet point_set_from_json(const Json& j) {
    if (!j.is_object()) fail("point set must be a JSON object");
    PointSet ps;
    const long long dim = int_field(j, "dim");
    if (dim < 1 || dim > 64) fail("dim must be in [1, 64]");
    ps.dim = static_cast<int>(dim);
    ps.side = number_field(j, "side");
    if (!std::isfinite(ps.side) || ps.side < 0.0) fail("side must be finite and nonnegative");
    const Json& points = field(j, "points");
    if (!points.is_array()) fail("points must be an array");
    ps.coords.reserve(points.size() * static_cast<std::size_t>(ps.dim));
    for (const Json& p : points) {
        if (!p.is_array() || p.size() != static_cast<std::size_t>(ps.dim))
            fail("each point must be an array of dim coordinates");
        for (const Json& c : p) {
            if (!c.is_number()) fail("coordinates must be numbers");
            ps.coords.push_back(c.get<double>());
        }
        if (!in_cube(ps, ps.point(ps.size() - 1))) fail("point outside [0, side]^dim");
    }
    return ps;
}

Json to_json(const Coloring& c) {
    return Json{{"k", c.k},
                {"method", to_string(c.method)},
                {"colored_count", c.colored_count},
                {"assignment", c.assignment}};
}

Coloring coloring_from_json(const Json& j) {
    if (!j.is_object()) fail("coloring must be a JSON object");
    Coloring c;
    const long long k = int_field(j, "k");
    if (k < 0) fail("k must be nonnegative");
    c.k = static_cast<int>(k);
    const Json& method = field(j, "method");
    if (!method.is_string()) fail("method must be a string");
    const std::string name = method.get<std::string>();
    if (name == "exact") c.method = ColoringMethod::exact;
    else if (name == "sweep1d") c.method = ColoringMethod::sweep1d;
    else if (name == "greedy") c.method = ColoringMethod::greedy;
    else if (name == "anchor") c.method = ColoringMethod::anchor;
    else fail("unknown coloring method \"" + name + "\"");
    c.is_optimal = c.method == ColoringMethod::exact || c.method == ColoringMethod::sweep1d;
    const Json& assignment = field(j, "assignment");
    if (!assignment.is_array()) fail("assignment must be an array");
    std::size_t nonzero = 0;
    c.assignment.reserve(assignment.size());
    for (const Json& a : assignment) {
        if (!a.is_number_integer()) fail("assignment entries must be integers");
        const long long v = a.get<long long>();
        if (v < 0 || v > c.k) fail("assignment entries must be in [0, k]");
        if (v != 0) ++nonzero;
        c.assignment.push_back(static_cast<std::uint32_t>(v));
    }
    const long long count = int_field(j, "colored_count");
    if (count < 0 || static_cast<std::size_t>(count) != nonzero)
        fail("colored_count does not match the assignment");
    c.colored_count = nonzero;
    return c;
}

Json graph_to_json(const GeoGraph& g) {
    Json edges = Json::array();
    for (std::uint32_t u = 0; u < g.n; ++u)
        for (std::uint32_t v : g.adjacency[u])
            if (u < v) edges.push_back(Json::array({u, v}));
    return Json{{"n", g.n}, {"r", g.radius}, {"edges", std::move(edges)}};
}

Json to_json(const TheoryReport& report) {
    Json j{{"dim", report.dim}, {"lambda", report.lambda}, {"k", report.k}};
    if (report.a_exact) j["a_exact"] = *report.a_exact;
    else j["a_exact"] = nullptr;
    j["a_lower"] = report.a_lower;
    j["best_s"] = report.best_s;
    j["a_upper"] = report.a_upper;
    j["var_lb_constant"] = report.var_lb_constant;
    j["var_ub_slope"] = report.var_ub_slope;
    return j;
}

Json to_json(const ExperimentConfig& cfg) {
    return Json{{"model", to_string(cfg.model)},
                {"dim", cfg.dim},
                {"lambda", cfg.lambda},
                {"t", cfg.side},
                {"n", cfg.n},
                {"nu", cfg.nu},
                {"k", cfg.k},
                {"r", cfg.radius()},
                {"solver", to_string(cfg.solver)},
                {"order", to_string(cfg.order)},
                {"s", cfg.anchor_s},
                {"cap", cfg.component_cap},
                {"trials", cfg.trials},
                {"master_seed", cfg.master_seed},
                {"stream_base", cfg.stream_base}};
}

Json to_json(const EstimateSummary& s) {
    return Json{{"config", to_json(s.config)},
                {"mean_count", s.mean_count},
                {"mean_ratio", s.mean_ratio},
                {"mean_ratio_realized", s.mean_ratio_realized},
                {"var_count", s.var_count},
                {"ci95", Json::array({s.ci95_lo, s.ci95_hi})},
                {"trials", s.config.trials},
                {"failed", s.failed},
                {"wall_seconds", s.wall_seconds},
                {"counts", s.counts}};
}

Json to_json(const BatteryReport& report) {
    Json violations = Json::array();
    for (const auto& v : report.violations)
        violations.push_back(Json{{"check", v.check},
                                  {"case_index", v.case_index},
                                  {"master_seed", v.master_seed},
                                  {"detail", v.detail}});
    Json tiling{{"run", report.tiling.run},
                {"value", report.tiling.value},
                {"lower", report.tiling.lower},
                {"upper", report.tiling.upper},
                {"ok", report.tiling.ok}};
    return Json{{"dim", report.dim},
                {"cases", report.cases},
                {"master_seed", report.master_seed},
                {"checks_run", report.checks_run},
                {"violations", std::move(violations)},
                {"tiling", std::move(tiling)}};
}

Json scan_to_json(const ExperimentConfig& cfg, const std::vector<VarianceRow>& rows) {
    Json out{{"config", to_json(cfg)}};
    Json arr = Json::array();
    for (const auto& r : rows)
        arr.push_back(Json{{"t", r.t},
                           {"var_count", r.var_count},
                           {"var_norm", r.var_norm},
                           {"ci_lo", r.ci_lo},
                           {"ci_hi", r.ci_hi},
                           {"trials", r.trials},
                           {"failed", r.failed}});
    out["rows"] = std::move(arr);
    return out;
}

Json scan_to_json(const ExperimentConfig& cfg, const std::vector<ConvergenceRow>& rows) {
    Json out{{"config", to_json(cfg)}};
    Json arr = Json::array();
    for (const auto& r : rows)
        arr.push_back(Json{{"t", r.t},
                           {"mean_ratio", r.mean_ratio},
                           {"deviation", r.deviation},
                           {"a_exact", r.a_exact},
                           {"a_lower", r.a_lower},
                           {"a_upper", r.a_upper},
                           {"ratio_exact", r.ratio_exact},
                           {"ratio_greedy", r.ratio_greedy},
                           {"ratio_anchor", r.ratio_anchor},
                           {"trials", r.trials},
                           {"failed", r.failed}});
    out["rows"] = std::move(arr);
    return out;
}

namespace {

Json efron_params(int dim, double nu, int k, int trials, std::uint64_t master_seed) {
    return Json{{"dim", dim}, {"nu", nu}, {"k", k}, {"trials", trials}, {"master_seed", master_seed}};
}

Json concentration_params(int dim, double nu, int k, std::uint64_t n, int trials,
                          std::uint64_t master_seed) {
    return Json{{"dim", dim},      {"nu", nu},
                {"k", k},          {"n", n},
                {"trials", trials}, {"master_seed", master_seed}};
}

}  // namespace

Json efron_stein_to_json(int dim, double nu, int k, int trials, std::uint64_t master_seed,
                         const std::vector<EfronSteinRow>& rows) {
    Json out{{"params", efron_params(dim, nu, k, trials, master_seed)}};
    Json arr = Json::array();
    for (const auto& r : rows)
        arr.push_back(Json{{"n", r.n},
                           {"var_count", r.var_count},
                           {"ci_lo", r.ci_lo},
                           {"ci_hi", r.ci_hi},
                           {"bound", r.bound},
                           {"trials", r.trials},
                           {"failed", r.failed}});
    out["rows"] = std::move(arr);
    return out;
}

Json concentration_to_json(int dim, double nu, int k, std::uint64_t n, int trials,
                           std::uint64_t master_seed, const std::vector<ConcentrationRow>& rows) {
    Json out{{"params", concentration_params(dim, nu, k, n, trials, master_seed)}};
    Json arr = Json::array();
    for (const auto& r : rows)
        arr.push_back(Json{{"delta", r.delta}, {"fraction", r.fraction}, {"bound", r.bound}});
    out["rows"] = std::move(arr);
    return out;
}

std::string variance_csv(const ExperimentConfig& cfg, const std::vector<VarianceRow>& rows) {
    std::string out = meta_line(to_json(cfg));
    out += "t,var_count,var_norm,ci_lo,ci_hi,trials,failed\n";
    for (const auto& r : rows)
        out += csv_line({format_double(r.t), format_double(r.var_count), format_double(r.var_norm),
                         format_double(r.ci_lo), format_double(r.ci_hi), fmt_int(r.trials),
                         fmt_int(r.failed)});
    return out;
}

std::string convergence_csv(const ExperimentConfig& cfg, const std::vector<ConvergenceRow>& rows) {
    std::string out = meta_line(to_json(cfg));
    out += "t,mean_ratio,deviation,a_exact,a_lower,a_upper,ratio_exact,ratio_greedy,ratio_anchor,"
           "trials,failed\n";
    for (const auto& r : rows)
        out += csv_line({format_double(r.t), format_double(r.mean_ratio), format_double(r.deviation),
                         format_double(r.a_exact), format_double(r.a_lower), format_double(r.a_upper),
                         format_double(r.ratio_exact), format_double(r.ratio_greedy),
                         format_double(r.ratio_anchor), fmt_int(r.trials), fmt_int(r.failed)});
    return out;
}

std::string efron_stein_csv(int dim, double nu, int k, int trials, std::uint64_t master_seed,
                            const std::vector<EfronSteinRow>& rows) {
    std::string out = meta_line(efron_params(dim, nu, k, trials, master_seed));
    out += "n,var_count,ci_lo,ci_hi,bound,trials,failed\n";
    for (const auto& r : rows)
        out += csv_line({fmt_u64(r.n), format_double(r.var_count), format_double(r.ci_lo),
                         format_double(r.ci_hi), format_double(r.bound), fmt_int(r.trials),
                         fmt_int(r.failed)});
    return out;
}

std::string concentration_csv(int dim, double nu, int k, std::uint64_t n, int trials,
                              std::uint64_t master_seed, const std::vector<ConcentrationRow>& rows) {
    std::string out = meta_line(concentration_params(dim, nu, k, n, trials, master_seed));
    out += "delta,fraction,bound\n";
    for (const auto& r : rows)
        out += csv_line({format_double(r.delta), format_double(r.fraction), format_double(r.bound)});
    return out;
}

std::string battery_csv(const BatteryReport& report) {
    Json meta{{"dim", report.dim},
              {"cases", report.cases},
              {"master_seed", report.master_seed},
              {"checks_run", report.checks_run}};
    std::string out = meta_line(meta);
    out += "check,case_index,master_seed,detail\n";
    for (const auto& v : report.violations) {
        std::string detail = v.detail;
        for (char& c : detail)
            if (c == ',' || c == '\n') c = ';';
        out += csv_line({v.check, fmt_u64(v.case_index), fmt_u64(v.master_seed), detail});
    }
    return out;
}

}  // namespace geochrome
