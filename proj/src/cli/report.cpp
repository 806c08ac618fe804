#include "otreg/report.hpp"

#include <cstdio>
#include <ostream>

#include "otreg/errors.hpp"

namespace otreg::cli {

namespace {

CounterexampleKind kind_from_string(const std::string& s) {
    for (auto k : {CounterexampleKind::midpoint, CounterexampleKind::implication, CounterexampleKind::section})
        if (to_string(k) == s) return k;
    throw ConfigError("unknown counterexample kind '" + s + "'");
}

// 17 significant digits round-trip every double.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_vec(const Vec& v) {
    std::string s;
    for (int i = 0; i < v.size(); ++i) s += (i ? " " : "") + num(v[i]);
    return s;
}

void write_csv(const json& report, std::ostream& os) {
    os << "verdict,cost,kind,sample_index,measured,tolerance,coordinates\n";
    const json& verdicts = report.at("verdicts");
    for (const auto& c : report.at("counterexamples")) {
        const auto vi = c.at("verdict").get<std::size_t>();
        std::string coords;
        for (const auto& [name, v] : c.at("coordinates").items())
            coords += (coords.empty() ? "" : ";") + name + "=" + csv_vec(vec_from_json(v));
        os << vi << ',' << verdicts.at(vi).value("cost", std::string()) << ',' << c.at("kind").get<std::string>()
           << ',' << c.at("sample_index").get<long>() << ',' << num(c.at("measured").get<double>()) << ','
           << num(c.at("tolerance").get<double>()) << ",\"" << coords << "\"\n";
    }
}

void write_text(const json& report, std::ostream& os) {
    os << "otreg " << report.at("version").get<std::string>() << "  " << report.at("config").at("command").get<std::string>()
       << "\n";
    for (const auto& v : report.at("verdicts")) {
        os << "  " << v.value("check", std::string()) << "  " << v.value("cost", v.value("manifold", std::string()));
        if (v.contains("status")) os << "  " << v.at("status").get<std::string>();
        if (v.contains("points_checked"))
            os << "  checked=" << v.at("points_checked").get<long>() << " skipped=" << v.at("points_skipped").get<long>()
               << " violations=" << v.at("violations").get<long>() << " max=" << num(v.at("max_measured").get<double>());
        if (v.contains("kappa_mean"))
            os << "  kappa mean=" << num(v.at("kappa_mean").get<double>()) << " min=" << num(v.at("kappa_min").get<double>())
               << " max=" << num(v.at("kappa_max").get<double>());
        if (v.contains("holds")) os << "  holds=" << v.at("holds").get<long>() << "/" << v.at("pairs").get<long>();
        if (v.contains("replayed"))
            os << "  replayed=" << v.at("replayed").get<long>() << " mismatches=" << v.at("mismatches").get<long>()
               << " max_difference=" << num(v.at("max_difference").get<double>());
        if (v.contains("agree")) os << "  agree=" << (v.at("agree").get<bool>() ? "yes" : "no");
        os << "\n";
    }
    os << "  counterexamples: " << report.at("counterexamples").size() << "\n";
}

}  // namespace

json to_json(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Vec vec_from_json(const json& j) {
    if (!j.is_array() || j.empty() || j.size() > static_cast<std::size_t>(kMaxDim))
        throw ConfigError("expected an array of 1.." + std::to_string(kMaxDim) + " numbers");
    Vec v(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j[i].get<double>();
    return v;
}

json to_json(const DomainBox& b) { return json{{"lower", to_json(b.lower)}, {"upper", to_json(b.upper)}}; }

DomainBox box_from_json(const json& j) {
    DomainBox b{vec_from_json(j.at("lower")), vec_from_json(j.at("upper"))};
    b.validate();
    return b;
}

json to_json(const CheckBoxes& b) {
    return json{{"x", to_json(b.x)}, {"p_offset", to_json(b.p_offset)}, {"q", to_json(b.q)}, {"p", to_json(b.p)}};
}

CheckBoxes boxes_from_json(const json& j) {
    return CheckBoxes{box_from_json(j.at("x")), box_from_json(j.at("p_offset")), box_from_json(j.at("q")),
                      box_from_json(j.at("p"))};
}

json to_json(const Counterexample& c) {
    json coords = json::object();
    for (const auto& [name, v] : c.coordinates) coords[name] = to_json(v);
    return json{{"kind", to_string(c.kind)},
                {"coordinates", coords},
                {"measured", c.measured},
                {"tolerance", c.tolerance},
                {"sample_index", c.sample_index}};
}

Counterexample counterexample_from_json(const json& j) {
    try {
        Counterexample c;
        c.kind = kind_from_string(j.at("kind").get<std::string>());
        for (const auto& [name, v] : j.at("coordinates").items()) c.coordinates.emplace_back(name, vec_from_json(v));
        c.measured = j.at("measured").get<double>();
        c.tolerance = j.at("tolerance").get<double>();
        c.sample_index = j.value("sample_index", 0L);
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad counterexample: ") + e.what());
    }
}

json verdict_json(const std::string& check, const Target& target, const Verdict& v) {
    return json{{"check", check},
                {"cost", target.cost},
                {"x0", to_json(target.x0)},
                {"y0", to_json(target.y0)},
                {"boxes", to_json(target.boxes)},
                {"status", to_string(v.status)},
                {"points_checked", v.points_checked},
                {"points_skipped", v.points_skipped},
                {"skipped_fraction", v.skipped_fraction()},
                {"violations", v.violations},
                {"max_measured", v.max_measured},
                {"tolerance", v.tolerance}};
}

void write_report(const json& report, const std::string& format, std::ostream& os) {
    if (format == "json")
        os << report.dump(2) << "\n";
    else if (format == "csv")
        write_csv(report, os);
    else
        write_text(report, os);
}

}  // namespace otreg::cli
