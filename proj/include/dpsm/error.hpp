#pragma once

#include <stdexcept>
#include <string>

namespace dpsm {

/// Input that the algorithm cannot work with (empty sets, too few points, no pairs).
class DegenerateInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configuration value outside its documented range.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Mismatched shapes or otherwise inconsistent arguments between modules.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// ACPPR requested on a scene without any genuine correspondence.
class UndefinedMetricError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed text input; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, std::size_t line, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
          source_(std::move(source)), line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

}  // namespace dpsm
