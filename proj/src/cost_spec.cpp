#include "otreg/cost_spec.hpp"

#include <cctype>

namespace otreg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
    return true;
}

}  // namespace

std::string CostSpec::canonical() const {
    if (params.empty()) return name;
    std::string out = name + "(";
    bool first = true;
    for (const auto& [k, v] : params) {
        out += (first ? "" : ",") + k + "=" + v;
        first = false;
    }
    return out + ")";
}

CostSpec parse_cost_spec(const std::string& text) {
    const std::string s = trim(text);
    CostSpec spec;
    const auto open = s.find('(');
    if (open == std::string::npos) {
        if (s.find(')') != std::string::npos) throw ConfigError("cost spec '" + text + "': stray ')'");
        spec.name = s;
    } else {
        if (s.back() != ')') throw ConfigError("cost spec '" + text + "': missing closing ')'");
        spec.name = trim(s.substr(0, open));
        const std::string body = s.substr(open + 1, s.size() - open - 2);
        if (body.find_first_of("()") != std::string::npos) {
            throw ConfigError("cost spec '" + text + "': nested parentheses");
        }
        std::size_t pos = 0;
        while (pos <= body.size() && !trim(body).empty()) {
            const auto comma = body.find(',', pos);
            const std::string item = trim(body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw ConfigError("cost spec '" + text + "': expected key=value, got '" + item + "'");
            const std::string key = trim(item.substr(0, eq));
            const std::string value = trim(item.substr(eq + 1));
            if (!is_identifier(key) || value.empty()) {
                throw ConfigError("cost spec '" + text + "': bad parameter '" + item + "'");
            }
            if (!spec.params.emplace(key, value).second) {
                throw ConfigError("cost spec '" + text + "': duplicate parameter '" + key + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    if (!is_identifier(spec.name)) throw ConfigError("cost spec '" + text + "': bad cost name");
    return spec;
}

CostFunction make_cost(const std::string& text) {
    const CostSpec spec = parse_cost_spec(text);
    return builtin(spec.name, spec.params);
}

}  // namespace otreg
