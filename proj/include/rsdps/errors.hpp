#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rsdps {

/// Raised when a computation would exceed a configured size limit
/// (enumeration cap, agent limit, misreport cap).
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands disagree on n or m.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed profile or table input. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace rsdps
