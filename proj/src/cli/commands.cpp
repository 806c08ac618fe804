#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "otreg/cli.hpp"
#include "otreg/cost_spec.hpp"
#include "otreg/errors.hpp"
#include "otreg/manifold.hpp"
#include "otreg/report.hpp"

#ifndef OTREG_VERSION
#define OTREG_VERSION "0.0.0"
#endif

namespace otreg::cli {

namespace {

constexpr std::uint64_t kTangentSalt = 0xC0;

struct Outcome {
    int code = kExitPass;
    json verdicts = json::array();
    json counterexamples = json::array();
    json stats = json::object();
};

void add_counterexamples(Outcome& o, const Verdict& v) {
    const std::size_t index = o.verdicts.size() - 1;
    for (const auto& c : v.counterexamples) {
        json j = to_json(c);
        j["verdict"] = index;
        o.counterexamples.push_back(std::move(j));
    }
}

void add_verdict(Outcome& o, const std::string& check, const Target& t, const Verdict& v) {
    o.verdicts.push_back(verdict_json(check, t, v));
    add_counterexamples(o, v);
}

Frame frame_for(const RunConfig& c, const std::string& cost) {
    auto [x0, y0] = default_base_pair(cost, c.dim);
    return make_frame(make_cost(cost), c.x0.value_or(x0), c.y0.value_or(y0));
}

// Cross-validates one cost; returns whether the verdicts agree (and are conclusive).
CrossValidation run_pair(Outcome& o, const RunConfig& c, const std::string& cost) {
    const Frame f = frame_for(c, cost);
    const Target t = resolve_target(c, cost, f);
    CrossValidation cv = cross_validate(f, c.plan, t.boxes, c.tol);
    add_verdict(o, "midpoint", t, cv.midpoint);
    add_verdict(o, "implication", t, cv.implication);
    o.verdicts.push_back(json{{"check", "cross_validate"},
                              {"cost", cost},
                              {"midpoint", to_string(cv.midpoint.status)},
                              {"implication", to_string(cv.implication.status)},
                              {"inconclusive", cv.inconclusive},
                              {"agree", !cv.inconclusive && cv.agree}});
    if (c.section_y) {
        const Verdict s = section_convexity_probe(f, *c.section_y, c.plan, t.boxes.q, c.tol);
        add_verdict(o, "section", t, s);
    }
    return cv;
}

void sum_stats(Outcome& o) {
    long checked = 0, skipped = 0;
    for (const auto& v : o.verdicts)
        if (v.contains("points_checked")) {
            checked += v.at("points_checked").get<long>();
            skipped += v.at("points_skipped").get<long>();
        }
    o.stats["points_checked"] = checked;
    o.stats["points_skipped"] = skipped;
    o.stats["skipped_fraction"] = checked + skipped ? static_cast<double>(skipped) / double(checked + skipped) : 0.0;
}

Outcome cmd_check(const RunConfig& c) {
    Outcome o;
    const std::string cost = c.costs.empty() ? "quadratic" : c.costs.front();
    const CrossValidation cv = run_pair(o, c, cost);
    if (cv.inconclusive)
        o.code = kExitInconclusive;
    else if (cv.midpoint.status == Status::fail || cv.implication.status == Status::fail)
        o.code = kExitViolation;
    sum_stats(o);
    return o;
}

Outcome cmd_equiv(const RunConfig& c) {
    Outcome o;
    const auto& suite = c.costs.empty() ? default_suite() : c.costs;
    bool inconclusive = false, disagree = false;
    long agreeing = 0;
    for (const auto& cost : suite) {
        const CrossValidation cv = run_pair(o, c, cost);
        inconclusive |= cv.inconclusive;
        disagree |= !cv.inconclusive && !cv.agree;
        agreeing += !cv.inconclusive && cv.agree;
    }
    o.code = inconclusive ? kExitInconclusive : disagree ? kExitViolation : kExitPass;
    sum_stats(o);
    o.stats["costs"] = suite.size();
    o.stats["agreeing"] = agreeing;
    return o;
}

Outcome cmd_curvature(const RunConfig& c) {
    Outcome o;
    const Manifold m = Manifold::from_id(c.manifold);
    json fits = json::array(), table = json::array();
    double kmin = 0.0, kmax = 0.0, ksum = 0.0, max_gap = -1e300;
    long holds = 0;
    for (int i = 0; i < c.pairs; ++i) {
        Rng rng = Rng::stream(c.plan.seed, static_cast<std::uint64_t>(i), kTangentSalt);
        const TangentPair pair = random_tangent_pair(m, c.dim, rng);
        const double kappa = curvature_fit(m, pair, c.t_values);
        const OrthogonalInequality ineq = orthogonal_inequality_check(m, pair, c.t);
        kmin = i ? std::min(kmin, kappa) : kappa;
        kmax = i ? std::max(kmax, kappa) : kappa;
        ksum += kappa;
        holds += ineq.holds;
        max_gap = std::max(max_gap, ineq.lhs - ineq.rhs);
        fits.push_back(json{{"pair", i},
                            {"base", to_json(pair.base)},
                            {"u", to_json(pair.u)},
                            {"v", to_json(pair.v)},
                            {"kappa", kappa}});
        table.push_back(json{{"pair", i},
                             {"lhs", ineq.lhs},
                             {"rhs", ineq.rhs},
                             {"gap", ineq.lhs - ineq.rhs},
                             {"holds", ineq.holds}});
    }
    o.verdicts.push_back(json{{"check", "curvature_fit"},
                              {"manifold", m.id()},
                              {"kappa_true", m.curvature()},
                              {"kappa_mean", ksum / c.pairs},
                              {"kappa_min", kmin},
                              {"kappa_max", kmax},
                              {"t_values", c.t_values},
                              {"per_pair", fits}});
    const bool all_hold = holds == c.pairs;
    o.verdicts.push_back(json{{"check", "orthogonal_inequality"},
                              {"manifold", m.id()},
                              {"status", all_hold ? "PASS" : "FAIL"},
                              {"t", c.t},
                              {"holds", holds},
                              {"pairs", c.pairs},
                              {"max_gap", max_gap},
                              {"table", table}});
    o.code = all_hold ? kExitPass : kExitViolation;
    o.stats["pairs"] = c.pairs;
    return o;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("'" + path + "' is not valid json: " + e.what());
    }
}

double re_evaluate(const Frame& f, const Counterexample& c) {
    switch (c.kind) {
        case CounterexampleKind::midpoint:
            return midpoint_defect(f, c.coordinate("x"), c.coordinate("p"), c.coordinate("xi"), c.coordinate("eta"));
        case CounterexampleKind::implication: return implication_defect(f, c.coordinate("q"), c.coordinate("p"));
        case CounterexampleKind::section:
            return -f.c_bar((c.coordinate("q1") + c.coordinate("q2")) * 0.5, c.coordinate("p"));
    }
    throw Error("unreachable");
}

constexpr double kReplayTol = 1e-9;

Outcome cmd_replay(const RunConfig& c) {
    const json report = load_json(c.report);
    Outcome o;
    if (!report.contains("verdicts") || !report.contains("counterexamples"))
        throw ConfigError("'" + c.report + "' is not an otreg report");
    const json& verdicts = report.at("verdicts");
    std::map<std::size_t, Frame> frames;
    json rows = json::array();
    long mismatches = 0;
    double worst = 0.0;
    for (const auto& cj : report.at("counterexamples")) {
        const Counterexample ce = counterexample_from_json(cj);
        const auto vi = cj.at("verdict").get<std::size_t>();
        if (vi >= verdicts.size()) throw ConfigError("counterexample refers to a missing verdict");
        auto it = frames.find(vi);
        if (it == frames.end()) {
            const json& v = verdicts.at(vi);
            it = frames
                     .emplace(vi, make_frame(make_cost(v.at("cost").get<std::string>()), vec_from_json(v.at("x0")),
                                             vec_from_json(v.at("y0"))))
                     .first;
        }
        const double value = re_evaluate(it->second, ce);
        const double diff = std::abs(value - ce.measured);
        worst = std::max(worst, diff);
        mismatches += !(diff <= kReplayTol);
        rows.push_back(json{{"verdict", vi}, {"stored", ce.measured}, {"replayed", value}, {"difference", diff}});
    }
    o.verdicts.push_back(json{{"check", "replay"},
                              {"status", mismatches ? "FAIL" : "PASS"},
                              {"replayed", rows.size()},
                              {"mismatches", mismatches},
                              {"max_difference", worst},
                              {"tolerance", kReplayTol},
                              {"table", rows}});
    o.code = mismatches ? kExitViolation : kExitPass;
    return o;
}

std::uint64_t env_seed(std::uint64_t fallback) {
    const char* s = std::getenv("OTREG_SEED");
    if (!s || !*s) return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (*end || *s == '-') throw ConfigError(std::string("OTREG_SEED is not a seed: '") + s + "'");
    return v;
}

struct Flags {
    std::vector<std::string> costs;
    std::optional<int> dim, grid, samples, pairs;
    std::optional<std::string> x0, y0, box_x, box_p, box_q, out, format, manifold, t_values, section_y, config;
    std::optional<std::uint64_t> seed;
    std::optional<double> eta, tol, radius, t;
    std::string report;
};

void add_flags(CLI::App& app, Flags& f) {
    app.add_option("--cost", f.costs, "Cost spec, e.g. power(p=-1); repeat for equiv");
    app.add_option("--dim", f.dim, "Dimension (1..4)");
    app.add_option("--x0", f.x0, "Base point x0 (csv floats)");
    app.add_option("--y0", f.y0, "Base point y0 (csv floats)");
    app.add_option("--box-x", f.box_x, "Base-point box, lo..hi or lo..hi,lo..hi,...");
    app.add_option("--box-p", f.box_p, "p box (offsets for the midpoint check)");
    app.add_option("--box-q", f.box_q, "q box for the implication check");
    app.add_option("--radius", f.radius, "Half-width of the default boxes");
    app.add_option("--samples", f.samples, "Random samples per check");
    app.add_option("--grid", f.grid, "Grid points per axis");
    app.add_option("--seed", f.seed, "Seed (default $OTREG_SEED or 42)");
    app.add_option("--eta", f.eta, "Length of eta in the midpoint check");
    app.add_option("--tol", f.tol, "Defect tolerance");
    app.add_option("--out", f.out, "Write the report here instead of stdout");
    app.add_option("--format", f.format, "json, csv or text");
    app.add_option("--manifold", f.manifold, "euclidean, sphere or hyperbolic");
    app.add_option("--t-values", f.t_values, "Curvature fit parameters (csv floats)");
    app.add_option("--t", f.t, "Parameter of the orthogonal inequality");
    app.add_option("--pairs", f.pairs, "Tangent pairs for curvature");
    app.add_option("--section-y", f.section_y, "Also probe the section at this y (csv floats)");
    app.add_option("--config", f.config, "Json config file (or a previous report)");
}

RunConfig build_config(const std::string& command, const Flags& f) {
    RunConfig c;
    c.plan.seed = env_seed(c.plan.seed);
    if (f.config) {
        const std::uint64_t seed = c.plan.seed;
        json j = load_json(*f.config);
        const json& cj = j.contains("config") && j.at("config").is_object() ? j.at("config") : j;
        c = config_from_json(j);
        if (!cj.contains("seed")) c.plan.seed = seed;
        if (&cj != &j) {
            // A previous report: rerun it, but never over the report itself.
            c.out.clear();
            c.format = "json";
        }
    }
    c.command = command;
    if (!f.costs.empty()) c.costs = f.costs;
    if (f.dim) c.dim = *f.dim;
    auto vec = [](const std::string& s) {
        const auto v = parse_csv_floats(s);
        if (v.size() > static_cast<std::size_t>(kMaxDim)) throw ConfigError("too many coordinates in '" + s + "'");
        return Vec(std::span<const double>(v));
    };
    if (f.x0) c.x0 = vec(*f.x0);
    if (f.y0) c.y0 = vec(*f.y0);
    if (f.section_y) c.section_y = vec(*f.section_y);
    if (!f.dim && !f.config && (c.x0 || c.y0)) c.dim = (c.x0 ? c.x0 : c.y0)->size();
    if (f.box_x) c.box_x = parse_box(*f.box_x, c.dim);
    if (f.box_p) c.box_p = parse_box(*f.box_p, c.dim);
    if (f.box_q) c.box_q = parse_box(*f.box_q, c.dim);
    if (f.radius) c.plan.q_scale = *f.radius;
    if (f.samples) c.plan.random_samples = *f.samples;
    if (f.grid) c.plan.grid_per_axis = *f.grid;
    if (f.seed) c.plan.seed = *f.seed;
    if (f.eta) c.plan.eta_scale = *f.eta;
    if (f.tol) c.tol = *f.tol;
    if (f.out) c.out = *f.out;
    if (f.format) c.format = *f.format;
    if (f.manifold) c.manifold = *f.manifold;
    if (f.t_values) c.t_values = parse_csv_floats(*f.t_values);
    if (f.t) c.t = *f.t;
    if (f.pairs) c.pairs = *f.pairs;
    if (!f.report.empty()) c.report = f.report;
    c.validate();
    return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sampled verification of the weak Ma-Trudinger-Wang condition (A3w)", "otreg"};
    app.set_version_flag("--version", std::string(OTREG_VERSION));
    app.require_subcommand(1);
    Flags flags;
    CLI::App* check = app.add_subcommand("check", "Cross-validate the midpoint and implication checks for one cost");
    CLI::App* equiv = app.add_subcommand("equiv", "Cross-validate every cost of a suite");
    CLI::App* curvature = app.add_subcommand("curvature", "Fit sectional curvature and test the orthogonal inequality");
    CLI::App* replay = app.add_subcommand("replay", "Re-evaluate the counterexamples of a json report");
    for (CLI::App* sub : {check, equiv, curvature, replay}) add_flags(*sub, flags);
    replay->add_option("report", flags.report, "Report to replay")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForVersion&) {
        out << OTREG_VERSION << "\n";
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "otreg: " << e.what() << "\n";
        return kExitError;
    }
    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    try {
        const RunConfig config = build_config(command, flags);
        const auto start = std::chrono::steady_clock::now();
        Outcome o = command == "check"       ? cmd_check(config)
                    : command == "equiv"     ? cmd_equiv(config)
                    : command == "curvature" ? cmd_curvature(config)
                                             : cmd_replay(config);
        o.stats["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json report{{"config", to_json(config)},
                    {"verdicts", std::move(o.verdicts)},
                    {"counterexamples", std::move(o.counterexamples)},
                    {"stats", std::move(o.stats)},
                    {"version", OTREG_VERSION}};
        if (config.out.empty()) {
            write_report(report, config.format, out);
        } else {
            std::ofstream file(config.out);
            if (!file) throw ConfigError("cannot write '" + config.out + "'");
            write_report(report, config.format, file);
        }
        return o.code;
    } catch (const Error& e) {
        err << "otreg " << command << ": " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace otreg::cli
