#pragma once

// Command-line driver: otreg <check|equiv|curvature|replay> [flags]
//
// Exit codes: 0 pass, 1 violation found, 2 inconclusive, 3 config/domain error.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "otreg/a3w.hpp"
#include "otreg/sampling.hpp"

namespace otreg::cli {

enum ExitCode : int { kExitPass = 0, kExitViolation = 1, kExitInconclusive = 2, kExitError = 3 };

using json = nlohmann::ordered_json;

struct RunConfig {
    std::string command = "check";
    std::vector<std::string> costs;  // empty: command default
    int dim = 2;
    std::optional<Vec> x0, y0;       // nullopt: per-cost default base pair
    std::optional<DomainBox> box_x, box_q, box_p;
    SamplePlan plan;
    double tol = kDefaultDefectTol;
    std::string format = "json";
    std::string out;
    std::string manifold = "euclidean";
    std::vector<double> t_values{0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
    double t = 0.3;
    int pairs = 20;
    std::optional<Vec> section_y;
    std::string report;  // replay input

    // Throws ConfigError.
    void validate() const;
};

json to_json(const RunConfig& c);
// Accepts either a config object or a whole report (uses its "config").
RunConfig config_from_json(const json& j);

// "lo..hi" (every axis) or "lo..hi,lo..hi,..." (per axis).
DomainBox parse_box(const std::string& text, int dim);
std::vector<double> parse_csv_floats(const std::string& text);

// The built-in suite used by `equiv`.
const std::vector<std::string>& default_suite();

// Base pair used when the config leaves x0/y0 unset: the origin for both,
// except costs singular on the diagonal (log, power), which use y0 = e_1.
std::pair<Vec, Vec> default_base_pair(const std::string& cost_spec, int dim);

// A cost fully resolved against a config.
struct Target {
    std::string cost;
    Vec x0, y0;
    CheckBoxes boxes;
};

Target resolve_target(const RunConfig& c, const std::string& cost, const Frame& frame);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace otreg::cli
