#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force reference computations, deliberately naive.
 *
 * Nothing here shares code with the series engine beyond the membership
 * predicate: plain loops, plain double accumulation, no closed forms. The
 * counting ratio is a box-counting analog of natural density; it agrees
 * with the Dirichlet density for product-like sets but not in general
 * (delimited sets that thin out near the axes count almost the whole box).
 */

#include "gaussdens/set_model.hpp"

#include <cstdint>

namespace gaussdens {

inline constexpr std::int64_t kMaxBruteSide = 10'000;
inline constexpr std::int64_t kMaxCountSide = 100'000;

/// sum over (m,n) in e cap [1,N]^2 of (mn)^-s by a plain double loop.
/// Throws ScaleError for N > 10^4, DomainError for s <= 1.
double brute_partial_sum(const GaussSet& e, double s, std::int64_t N);

struct CountReport {
    std::int64_t N = 0;
    std::uint64_t count = 0;  ///< points of e in [1,N]^2
    double ratio = 0.0;       ///< count / N^2
};

/// Throws ScaleError for N > 10^5, DomainError for N < 1.
CountReport counting_density(const GaussSet& e, std::int64_t N);

}  // namespace gaussdens
