#pragma once

/**
 * @file errors.hpp
 * @brief Exception types shared by every gaussdens module.
 *
 * Unknown densities and non-convergent estimates are values, not errors;
 * the types here are reserved for malformed input and for evaluations that
 * cannot be carried out at all.
 */

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gaussdens {

/// Malformed expression text. Positions are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed input that violates a domain invariant (zero modulus, lower > upper, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numeric argument outside the supported domain, e.g. zeta at s <= 1.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The requested accuracy needs more terms than the configured budget allows.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Brute-force oracle asked to run beyond its intended scale.
class ScaleError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

}  // namespace gaussdens
