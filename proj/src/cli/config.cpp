#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "otreg/cli.hpp"
#include "otreg/cost_spec.hpp"
#include "otreg/errors.hpp"
#include "otreg/manifold.hpp"
#include "otreg/report.hpp"

namespace otreg::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("empty number");
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + t + "'");
    }
    if (used != t.size()) throw ConfigError("not a number: '" + t + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

template <typename T>
std::optional<T> opt_from(const json& j, const char* key, T (*conv)(const json&)) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return conv(j.at(key));
}

Vec vec_conv(const json& j) { return vec_from_json(j); }
DomainBox box_conv(const json& j) { return box_from_json(j); }

template <typename T>
json opt_json(const std::optional<T>& v) {
    return v ? to_json(*v) : json(nullptr);
}

}  // namespace

std::vector<double> parse_csv_floats(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_double(part));
    if (out.empty()) throw ConfigError("expected comma-separated numbers");
    return out;
}

DomainBox parse_box(const std::string& text, int dim) {
    if (dim < 1 || dim > kMaxDim) throw ConfigError("dimension out of range");
    const auto axes = split(text, ',');
    if (axes.size() != 1 && static_cast<int>(axes.size()) != dim)
        throw ConfigError("box '" + text + "' needs 1 or " + std::to_string(dim) + " ranges");
    DomainBox box{Vec(dim), Vec(dim)};
    for (int i = 0; i < dim; ++i) {
        const std::string& axis = axes.size() == 1 ? axes[0] : axes[i];
        const auto sep = axis.find("..");
        if (sep == std::string::npos) throw ConfigError("box range '" + axis + "' is not lo..hi");
        box.lower[i] = parse_double(axis.substr(0, sep));
        box.upper[i] = parse_double(axis.substr(sep + 2));
    }
    box.validate();
    return box;
}

const std::vector<std::string>& default_suite() {
    static const std::vector<std::string> suite{
        "quadratic", "bilinear", "log", "power(p=-1)", "sqrt_plus",
        "riemannian(manifold=sphere)", "riemannian(manifold=hyperbolic)"};
    return suite;
}

std::pair<Vec, Vec> default_base_pair(const std::string& cost_spec, int dim) {
    const std::string name = parse_cost_spec(cost_spec).name;
    Vec y0(dim);
    if (name == "log" || name == "power") y0[0] = 1.0;
    return {Vec(dim), y0};
}

Target resolve_target(const RunConfig& c, const std::string& cost, const Frame& frame) {
    Target t{cost, frame.x0(), frame.y0(), CheckBoxes::defaults(frame, c.plan)};
    if (c.box_x) t.boxes.x = *c.box_x;
    if (c.box_p) {
        t.boxes.p_offset = *c.box_p;
        t.boxes.p = *c.box_p;
    }
    if (c.box_q) t.boxes.q = *c.box_q;
    return t;
}

void RunConfig::validate() const {
    static const std::vector<std::string> commands{"check", "equiv", "curvature", "replay"};
    if (std::find(commands.begin(), commands.end(), command) == commands.end())
        throw ConfigError("unknown command '" + command + "'");
    if (format != "json" && format != "csv" && format != "text")
        throw ConfigError("format must be json, csv or text");
    if (dim < 1 || dim > kMaxDim) throw ConfigError("dim must be in 1.." + std::to_string(kMaxDim));
    plan.validate();
    if (!(tol >= 0.0)) throw ConfigError("tol must be non-negative");
    if (command == "check" && costs.size() > 1) throw ConfigError("check takes a single --cost");
    for (const auto& s : costs) make_cost(s);
    for (const auto* v : {&x0, &y0, &section_y})
        if (*v && (*v)->size() != dim)
            throw ConfigError("base point dimension " + std::to_string((*v)->size()) + " does not match dim " +
                              std::to_string(dim));
    for (const auto* b : {&box_x, &box_q, &box_p})
        if (*b) {
            (*b)->validate();
            if ((*b)->dim() != dim) throw ConfigError("box dimension does not match dim");
        }
    Manifold::from_id(manifold);
    if (pairs < 1) throw ConfigError("pairs must be positive");
    if (!(t > 0.0)) throw ConfigError("t must be positive");
    if (command == "replay" && report.empty()) throw ConfigError("replay needs a report path");
}

json to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["costs"] = c.costs;
    j["dim"] = c.dim;
    j["x0"] = opt_json(c.x0);
    j["y0"] = opt_json(c.y0);
    j["box_x"] = opt_json(c.box_x);
    j["box_q"] = opt_json(c.box_q);
    j["box_p"] = opt_json(c.box_p);
    j["seed"] = c.plan.seed;
    j["grid"] = c.plan.grid_per_axis;
    j["samples"] = c.plan.random_samples;
    j["eta"] = c.plan.eta_scale;
    j["radius"] = c.plan.q_scale;
    j["tol"] = c.tol;
    j["format"] = c.format;
    j["out"] = c.out;
    j["manifold"] = c.manifold;
    j["t_values"] = c.t_values;
    j["t"] = c.t;
    j["pairs"] = c.pairs;
    j["section_y"] = opt_json(c.section_y);
    if (!c.report.empty()) j["report"] = c.report;
    return j;
}

RunConfig config_from_json(const json& in) {
    const json& j = in.contains("config") && in.at("config").is_object() ? in.at("config") : in;
    if (!j.is_object()) throw ConfigError("config must be a json object");
    RunConfig c;
    try {
        c.command = j.value("command", c.command);
        if (j.contains("costs")) c.costs = j.at("costs").get<std::vector<std::string>>();
        if (j.contains("cost")) c.costs = {j.at("cost").get<std::string>()};
        c.dim = j.value("dim", c.dim);
        c.x0 = opt_from(j, "x0", vec_conv);
        c.y0 = opt_from(j, "y0", vec_conv);
        c.box_x = opt_from(j, "box_x", box_conv);
        c.box_q = opt_from(j, "box_q", box_conv);
        c.box_p = opt_from(j, "box_p", box_conv);
        c.plan.seed = j.value("seed", c.plan.seed);
        c.plan.grid_per_axis = j.value("grid", c.plan.grid_per_axis);
        c.plan.random_samples = j.value("samples", c.plan.random_samples);
        c.plan.eta_scale = j.value("eta", c.plan.eta_scale);
        c.plan.q_scale = j.value("radius", c.plan.q_scale);
        c.tol = j.value("tol", c.tol);
        c.format = j.value("format", c.format);
        c.out = j.value("out", c.out);
        c.manifold = j.value("manifold", c.manifold);
        if (j.contains("t_values")) c.t_values = j.at("t_values").get<std::vector<double>>();
        c.t = j.value("t", c.t);
        c.pairs = j.value("pairs", c.pairs);
        c.section_y = opt_from(j, "section_y", vec_conv);
        c.report = j.value("report", c.report);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return c;
}

}  // namespace otreg::cli
