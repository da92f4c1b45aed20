#pragma once

// Deterministic report emission: CSV with RFC-style quoting, shortest
// round-trip float formatting, FNV-1a checksums, and the run manifest.
// Identical inputs produce byte-identical report files regardless of
// thread count.

#include "parcov/enclosure.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace parcov {

// Shortest round-trip decimal form (std::to_chars).
std::string format_double(double x);

std::string csv_quote(const std::string& field);

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<std::string>& fields);
    const std::string& text() const { return buf_; }

  private:
    std::size_t width_;
    std::string buf_;
};

std::uint64_t fnv1a64(const std::string& data);
std::string fnv1a64_hex(const std::string& data);

// Writes atomically-ish (temp + rename) and returns the checksum.
std::string write_file(const std::filesystem::path& path, const std::string& data);

struct ManifestEntry {
    std::string path;      // relative to the out dir
    std::string checksum;  // fnv1a64 hex
};

struct RunManifest {
    std::string artifact = "parcov";
    std::string version;
    std::string config_text;  // serialized RunConfig snapshot
    double wall_ms = 0.0;
    std::vector<std::pair<int, double>> per_level_ms;
    std::vector<ManifestEntry> outputs;

    std::string to_json() const;
};

inline constexpr const char* kVersion = "0.1.0";

}  // namespace parcov
