#pragma once

/**
 * @file scalar.hpp
 * @brief Exact rationals and real parameters that remember whether they are exact.
 *
 * Bound-function parameters (coefficients, exponents, bases) come from the
 * DSL as decimal or rational literals and are kept as exact rationals so the
 * closed-form density rules can return exact results. Parameters built
 * programmatically from a double are marked inexact and only ever produce
 * floating results.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace gaussdens {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Parses "12", "-3", "0.25", "1/2", "2.5e-3". Returns nullopt on malformed text.
std::optional<Rational> parse_rational(std::string_view text);

double to_double(const Rational& r);

BigInt lcm(const BigInt& a, const BigInt& b);

/// lcm for moduli; nullopt when the result does not fit in 62 bits.
std::optional<std::int64_t> checked_lcm(std::int64_t a, std::int64_t b);

class Scalar {
public:
    Scalar() : value_(0.0) {}
    Scalar(const Rational& r) : exact_(r), value_(to_double(r)) {}  // NOLINT(implicit)
    Scalar(std::int64_t v) : Scalar(Rational(v)) {}                 // NOLINT(implicit)
    Scalar(int v) : Scalar(Rational(v)) {}                          // NOLINT(implicit)

    static Scalar inexact(double v) {
        Scalar s;
        s.value_ = v;
        return s;
    }

    bool is_exact() const noexcept { return exact_.has_value(); }
    const Rational& exact() const { return *exact_; }
    double value() const noexcept { return value_; }

    /// Exact rationals print as "p/q"; inexact values with 17 significant digits.
    std::string str() const;

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
        return a.is_exact() == b.is_exact() && a.value() == b.value();
    }

private:
    std::optional<Rational> exact_;
    double value_;
};

}  // namespace gaussdens
