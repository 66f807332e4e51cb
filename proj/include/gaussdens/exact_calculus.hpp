#pragma once

/**
 * @file exact_calculus.hpp
 * @brief Exact densities by structural recursion over set expressions.
 *
 * Every rule either returns an exact value or gives up; nothing is
 * estimated here. Rational parameters produce rational densities; an
 * inexact delimiting exponent produces an ExactReal carrying its symbolic
 * form next to the double value. When no rule applies the result is
 * Unknown, and Unknown propagates through every combining rule.
 *
 * Rule names recorded in traces:
 *
 *   normalize                     the expression was rewritten first
 *   empty-set, full-quadrant, finite-set, upper-quadrant
 *   product-rule, multiples-rule  Cartesian products, 1/p per modulus
 *   finite-axis-section           a finite row/column union forces 0
 *   translation-invariance, dilation-rule
 *   complement-rule, difference-rule, inclusion-exclusion, distributivity
 *   heavy-tail                    intersecting with an upper quadrant
 *   residue-classes               eventually periodic sets: share of the
 *                                 residue classes in one period
 *   delimited-power-rule          1/(1+alpha) - 1/(1+beta)
 *   delimited-exponential-rule    1/(1+alpha) under an exponential bound
 *   exp-lower ⇒ 0                 exponential lower bound
 */

#include "gaussdens/set_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gaussdens {

struct DensityValue {
    enum class Kind { exact_rational, exact_real, unknown };

    Kind kind = Kind::unknown;
    std::optional<Rational> rational;  ///< set for exact_rational
    double value = 0.0;                ///< meaningless for unknown
    std::string symbolic;              ///< arithmetic form for exact_real
    std::vector<std::string> trace;    ///< rules in order of first use

    static DensityValue exact(const Rational& r, std::vector<std::string> trace);
    static DensityValue real(double v, std::string symbolic, std::vector<std::string> trace);
    static DensityValue unknown(std::vector<std::string> trace = {});

    bool known() const noexcept { return kind != Kind::unknown; }

    /// "rational", "real" or "unknown".
    std::string kind_name() const;
    /// "1/6", "0.4142... = 1/(1+0.5) - ...", or "unknown".
    std::string str() const;
    /// Decimal value with 17 significant digits; empty for unknown.
    std::string value_string() const;
};

DensityValue exact_density_1d(const IntSet& e);
DensityValue exact_density(const GaussSet& e);

enum class Finiteness { finite, infinite, unknown };

std::string to_string(Finiteness f);

/// Finiteness of sup_h (first coordinates that occur) and sup_v (second ones).
struct AxisFiniteness {
    Finiteness horizontal = Finiteness::unknown;
    Finiteness vertical = Finiteness::unknown;

    bool any_finite() const noexcept {
        return horizontal == Finiteness::finite || vertical == Finiteness::finite;
    }
};

/// Conservative structural analysis; the expression is not normalized first.
AxisFiniteness axis_section_finite(const GaussSet& e);

}  // namespace gaussdens
