#include "parcov/run_config.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace parcov {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::string opt_str(const std::optional<std::int64_t>& v) {
    return v ? std::to_string(*v) : "";
}

}  // namespace

std::string RunConfig::serialize() const {
    std::ostringstream out;
    out << "subcommand = " << subcommand << "\n";
    out << "psi = " << psi << "\n";
    out << "g = " << g << "\n";
    out << "n = " << n << "\n";
    out << "n_min = " << n_min << "\n";
    out << "n_max = " << n_max << "\n";
    out << "a2 = " << opt_str(a2) << "\n";
    out << "a1 = " << opt_str(a1) << "\n";
    out << "a0 = " << opt_str(a0) << "\n";
    out << "t = " << t << "\n";
    out << "tau = " << tau << "\n";
    out << "x = " << x << "\n";
    out << "all_pairs = " << (all_pairs ? "true" : "false") << "\n";
    out << "repeated_realized = " << (repeated_realized ? "true" : "false") << "\n";
    out << "engine = " << engine << "\n";
    out << "q_max = " << q_max << "\n";
    out << "base = " << base << "\n";
    out << "out_dir = " << out_dir << "\n";
    out << "threads = " << threads << "\n";
    out << "precision_bits = " << precision_bits << "\n";
    out << "cap_level = " << cap_level << "\n";
    return out.str();
}

void RunConfig::apply_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    const std::map<std::string, std::function<void(const std::string&)>> setters = {
        {"subcommand", [&](const std::string& v) { subcommand = v; }},
        {"psi", [&](const std::string& v) { psi = v; }},
        {"g", [&](const std::string& v) { g = v; }},
        {"n", [&](const std::string& v) { n = std::stoi(v); }},
        {"n_min", [&](const std::string& v) { n_min = std::stoi(v); }},
        {"n_max", [&](const std::string& v) { n_max = std::stoi(v); }},
        {"a2", [&](const std::string& v) { a2 = v.empty() ? std::nullopt : std::optional<std::int64_t>(std::stoll(v)); }},
        {"a1", [&](const std::string& v) { a1 = v.empty() ? std::nullopt : std::optional<std::int64_t>(std::stoll(v)); }},
        {"a0", [&](const std::string& v) { a0 = v.empty() ? std::nullopt : std::optional<std::int64_t>(std::stoll(v)); }},
        {"t", [&](const std::string& v) { t = v; }},
        {"tau", [&](const std::string& v) { tau = v; }},
        {"x", [&](const std::string& v) { x = v; }},
        {"all_pairs", [&](const std::string& v) { all_pairs = (v == "true"); }},
        {"repeated_realized", [&](const std::string& v) { repeated_realized = (v == "true"); }},
        {"engine", [&](const std::string& v) { engine = v; }},
        {"q_max", [&](const std::string& v) { q_max = std::stol(v); }},
        {"base", [&](const std::string& v) { base = std::stol(v); }},
        {"out_dir", [&](const std::string& v) { out_dir = v; }},
        {"threads", [&](const std::string& v) { threads = std::stoi(v); }},
        {"precision_bits", [&](const std::string& v) { precision_bits = std::stoi(v); }},
        {"cap_level", [&](const std::string& v) { cap_level = std::stoi(v); }},
    };
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        try {
            it->second(val);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config line " + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
}

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig c;
    c.apply_file(text);
    return c;
}

}  // namespace parcov
