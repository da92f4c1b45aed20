#pragma once

#include <stdexcept>
#include <string>

namespace parcov {

// Bad flag/config-file input; maps to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

// Evaluation outside a function's certified domain; exit code 3.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& m) : std::runtime_error(m) {}
};

// A requested computation exceeds a configured cap; exit code 4.
struct ResourceCapError : std::runtime_error {
    explicit ResourceCapError(const std::string& m) : std::runtime_error(m) {}
};

// A checked mathematical invariant failed. This is a finding to report,
// not a crash; the CLI converts it to exit code 5.
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace parcov
