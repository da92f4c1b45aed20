#pragma once

// Structured run configuration shared by the CLI and the config file.
// Config files are `key = value` lines mirroring the flags; rationals
// stay exact "num/den" strings. Parsed configs round-trip through
// serialize() byte-identically.

#include "parcov/errors.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace parcov {

struct RunConfig {
    std::string subcommand;

    std::string psi = "pow:3";
    std::string g = "pow:3/5";
    int n = 3;
    int n_min = 2, n_max = 8;
    std::optional<std::int64_t> a2, a1, a0;
    std::string t = "1/64";           // delta threshold, exact rational
    std::string tau = "4";
    std::string x = "1/3";            // pointwise sample
    bool all_pairs = false;
    bool repeated_realized = false;
    std::string engine = "auto";      // auto | exact | fast
    long q_max = 100000;
    long base = 2;

    std::string out_dir = "out";
    int threads = 1;
    int precision_bits = 128;
    int cap_level = 14;

    // `key = value` lines, keys in fixed order.
    std::string serialize() const;
    // Parses the serialized form; unknown keys are errors with the
    // offending line named.
    static RunConfig parse(const std::string& text);
    // Merge: any key present in `text` overrides the current value.
    void apply_file(const std::string& text);
};

// Exit codes shared by the CLI and tests.
enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kDomainError = 3,
    kResourceCap = 4,
    kInvariantViolation = 5,
};

}  // namespace parcov
