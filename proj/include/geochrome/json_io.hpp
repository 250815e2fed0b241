#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "geochrome/coloring.hpp"
#include "geochrome/experiments.hpp"
#include "geochrome/geo_graph.hpp"
#include "geochrome/point_process.hpp"
#include "geochrome/theory.hpp"

namespace geochrome {

// Insertion-ordered JSON keeps output keys in the documented order.
using Json = nlohmann::ordered_json;

// Shortest round-trip decimal form; non-finite values print nan/inf/-inf.
std::string format_double(double x);

Json to_json(const PointSet& ps);
PointSet point_set_from_json(const Json& j);

Json to_json(const Coloring& c);
Coloring coloring_from_json(const Json& j);

// {"n", "r", "edges"} with each edge listed once as [u, v], u < v.
Json graph_to_json(const GeoGraph& g);

Json to_json(const TheoryReport& report);
Json to_json(const ExperimentConfig& cfg);
Json to_json(const EstimateSummary& s);
Json to_json(const BatteryReport& report);

Json scan_to_json(const ExperimentConfig& cfg, const std::vector<VarianceRow>& rows);
Json scan_to_json(const ExperimentConfig& cfg, const std::vector<ConvergenceRow>& rows);
Json efron_stein_to_json(int dim, double nu, int k, int trials, std::uint64_t master_seed,
                         const std::vector<EfronSteinRow>& rows);
Json concentration_to_json(int dim, double nu, int k, std::uint64_t n, int trials,
                           std::uint64_t master_seed, const std::vector<ConcentrationRow>& rows);

// CSV bodies: a "# " metadata line holding the compact config JSON, a fixed
// header line, then one line per row. Non-finite fields print as nan.
std::string variance_csv(const ExperimentConfig& cfg, const std::vector<VarianceRow>& rows);
std::string convergence_csv(const ExperimentConfig& cfg, const std::vector<ConvergenceRow>& rows);
std::string efron_stein_csv(int dim, double nu, int k, int trials, std::uint64_t master_seed,
                            const std::vector<EfronSteinRow>& rows);
std::string concentration_csv(int dim, double nu, int k, std::uint64_t n, int trials,
                              std::uint64_t master_seed, const std::vector<ConcentrationRow>& rows);
std::string battery_csv(const BatteryReport& report);

}  // namespace geochrome
