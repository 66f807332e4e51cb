#pragma once

/**
 * @file bound_fn.hpp
 * @brief Concrete delimiting functions m -> f(m) for delimited sets.
 *
 * Three families are supported: constants k, powers c*m^alpha and
 * exponentials c*a^m. Integer rounding (ceil for the lower bound, floor for
 * the upper one) goes through ceil_at/floor_at only, so set membership and
 * the series kernels always agree on which lattice points are in a row.
 */

#include "gaussdens/scalar.hpp"

#include <cstdint>
#include <string>

namespace gaussdens {

class BoundFn {
public:
    enum class Kind { constant, power, exponential };

    /// k >= 1.
    static BoundFn constant(const Scalar& k);
    /// c > 0, alpha >= 0. alpha == 0 yields constant(c).
    static BoundFn power(const Scalar& c, const Scalar& alpha);
    /// c > 0, base > 1.
    static BoundFn exponential(const Scalar& c, const Scalar& base);

    Kind kind() const noexcept { return kind_; }
    const Scalar& coefficient() const noexcept { return coeff_; }
    /// Exponent alpha for powers, base a for exponentials, zero for constants.
    const Scalar& shape() const noexcept { return shape_; }

    /// Growth exponent seen by the closed-form rules: 0 for constants.
    Scalar power_exponent() const { return kind_ == Kind::power ? shape_ : Scalar(0); }

    /// Same family and shape, different coefficient.
    BoundFn with_coefficient(const Scalar& c) const;

    double value(double m) const;
    /// Natural log of value(m); finite even where value(m) overflows.
    double log_value(double m) const;

    /// Integer rounding with a guard that snaps near-integers first.
    /// Both saturate at INT64_MAX for values beyond the int64 range.
    std::int64_t ceil_at(std::int64_t m) const;
    std::int64_t floor_at(std::int64_t m) const;

    /// Increasing in m (power with alpha > 0, or exponential).
    bool is_growing() const noexcept { return kind_ != Kind::constant; }

    /// DSL spelling: const(k), pow(c,alpha), exp(c,a).
    std::string str() const;

    friend bool operator==(const BoundFn& a, const BoundFn& b) {
        return a.kind_ == b.kind_ && a.coeff_ == b.coeff_ && a.shape_ == b.shape_;
    }

private:
    BoundFn(Kind kind, Scalar coeff, Scalar shape) : kind_(kind), coeff_(coeff), shape_(shape) {}

    Kind kind_;
    Scalar coeff_;
    Scalar shape_;
};

/// Throws ValidationError unless upper(m) >= lower(m) >= 1 for every m >= 1.
/// Decided per family pair; power-under-exponential pairs scan up to the
/// analytic crossover where the log-ratio starts increasing.
void check_domination(const BoundFn& lower, const BoundFn& upper);

/// Snaps x to the nearest integer when it is within the rounding guard.
double snap_to_integer(double x);

}  // namespace gaussdens
