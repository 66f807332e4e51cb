#pragma once

// Structural recognizers used by the series engine. Exposed for tests.

#include "gaussdens/set_model.hpp"

#include <cstdint>
#include <optional>

namespace gaussdens::detail {

/// Beyond `threshold`, membership depends only on n mod `period`.
struct Periodicity1D {
    std::int64_t threshold = 0;
    std::int64_t period = 1;
};

/// Outside the box [1,km] x [1,kn], membership is periodic:
///   m > km, n > kn  : depends on (m mod lm, n mod ln)
///   m <= km, n > kn : depends on (m, n mod ln)
///   m > km, n <= kn : depends on (m mod lm, n)
struct Periodicity2D {
    std::int64_t km = 0, kn = 0;
    std::int64_t lm = 1, ln = 1;
};

/// nullopt when thresholds or periods grow past 2^40.
std::optional<Periodicity1D> periodicity(const IntSet& e);
/// nullopt for sets containing a Delimited node, or on overflow.
std::optional<Periodicity2D> periodicity(const GaussSet& e);

/// Affine image of a delimited set, cut below:
///   {(a k + p, b j + q) : k >= k_lo, max(ceil f(k), j_lo) <= j <= floor g(k)}
struct RowFamily {
    std::int64_t a = 1, p = 0;
    std::int64_t b = 1, q = 0;
    std::int64_t k_lo = 1, j_lo = 1;
    BoundFn lower;
    BoundFn upper;

    bool contains(Point pt) const;
};

/// Recognizes Delimited under Translate, Dilate and intersection with an
/// UpperQuadrant or P^2.
std::optional<RowFamily> row_family(const GaussSet& e);

}  // namespace gaussdens::detail
