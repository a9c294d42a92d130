#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qtrap {

/// Invalid input: out-of-domain argument or malformed physical state.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure (quadrature, bracketing, instability).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what, double estimate = 0.0)
        : std::runtime_error(what), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

/// Configuration parse/validation failure; carries every problem found.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues);
    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    std::vector<std::string> issues_;
};

} // namespace qtrap
