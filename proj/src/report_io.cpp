#include "parcov/report_io.hpp"

#include "parcov/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>

namespace parcov {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != width_)
        throw InvariantViolation("csv: row width mismatch");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += csv_quote(fields[i]);
    }
    buf_ += '\n';
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& data) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

std::string write_file(const std::filesystem::path& path, const std::string& data) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + path.string());
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
    }
    std::filesystem::rename(tmp, path);
    return fnv1a64_hex(data);
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["artifact"] = artifact;
    j["version"] = version;
    j["config"] = config_text;
    j["wall_ms"] = wall_ms;
    nlohmann::ordered_json levels = nlohmann::ordered_json::array();
    for (const auto& [n, ms] : per_level_ms) {
        levels.push_back({{"n", n}, {"ms", ms}});
    }
    j["per_level_ms"] = levels;
    nlohmann::ordered_json outs = nlohmann::ordered_json::array();
    for (const auto& o : outputs) outs.push_back({{"path", o.path}, {"fnv1a64", o.checksum}});
    j["outputs"] = outs;
    return j.dump(2) + "\n";
}

}  // namespace parcov
