#pragma once

/**
 * @file series_engine.hpp
 * @brief Zeta, Dirichlet range sums and the normalized double series at fixed s > 1.
 *
 * For a set A of Gaussian integers the engine evaluates
 *
 *     r_A(s) = zeta(s)^-2 * sum_{(m,n) in A} (mn)^-s
 *
 * together with a bound on |r_A(s) - value|. The limit s -> 1 is left to
 * the estimator. Evaluation paths, tried in order after normalization:
 *
 *   product-closed-form  lattices and products: r = (pq)^-s, or the product
 *                        of two one-dimensional residue-class sums
 *   rowwise              delimited sets (also translated, dilated or cut by
 *                        an upper quadrant): exact rows up to K, then an
 *                        enclosure of the remaining rows from the integral
 *                        comparison n^(1-s)/(s-1) +- n^-s
 *   residue-class        sets that are doubly periodic outside a finite box:
 *                        box + strips + quadrant, each a finite sum of
 *                        Hurwitz-type progression tails, no truncation
 *   composite            complement, dilation scaling, inclusion-exclusion
 *                        over structured parts
 *   direct               truncation to [1,N]^2 with the bound
 *                        2 zeta(s) N^(1-s) / (s-1) on the omitted mass
 *
 * The direct bound follows from splitting the complement of [1,N]^2 into
 * the two half-strips m > N and n > N, each dominated by zeta(s) times
 * sum_{k>N} k^-s <= N^(1-s)/(s-1) (integral test).
 */

#include "gaussdens/set_model.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace gaussdens {

/// Lowest s the density evaluators accept: 1 + 2^-10.
inline constexpr double kMinSeriesS = 1.0 + 1.0 / 1024.0;

enum class Method { direct, rowwise, product_closed_form, residue_class, composite };

std::string to_string(Method m);

struct SeriesEval {
    double s = 0.0;
    double value = 0.0;       ///< normalized series r_A(s)
    double tail_bound = 0.0;  ///< |r_A(s) - value| <= tail_bound
    std::uint64_t terms_used = 0;
    Method method = Method::direct;
};

struct EvalOptions {
    /// Upper limit on lattice points / rows / series terms for one evaluation.
    std::uint64_t term_budget = 100'000'000;
    /// 0 selects the hardware concurrency. Results never depend on this.
    unsigned workers = 0;
    /// Skip the structured paths and truncate directly.
    bool force_direct = false;
};

/// Riemann zeta for real s > 1; absolute error below 1e-12 for s >= 1.001.
double zeta(double s);

/// sum_{n=a}^{b} n^-s for 1 <= a <= b; direct when b - a <= 10^4.
double range_sum(std::int64_t a, std::int64_t b, double s);

/// sum_{j>=0} (first + j*step)^-s for first > 0, step > 0.
double progression_tail(double s, double first, double step);

/// sum over x = first, first+step, ..., last of x^-s (last on the grid).
double progression_sum(double s, double first, double step, double last);

/// Same, with the last term given by its logarithm; for ranges whose end
/// overflows a double. Misalignment of the end with the grid is ignored
/// (it moves the result by less than one term at the far end).
double progression_sum_log(double s, double first, double step, double log_last);

/// sum over (m,n) in e with m,n <= N of (mn)^-s: rows ascending, columns
/// ascending, compensated, deterministic for any worker count.
double partial_double_sum(const GaussSet& e, double s, std::int64_t N, unsigned workers = 0);

/// r_e(s) within eps. Throws DomainError for s < kMinSeriesS or eps <= 0,
/// BudgetExceeded when eps needs more than options.term_budget terms.
SeriesEval density_at(const GaussSet& e, double s, double eps, const EvalOptions& options = {});

/// Direct truncation bound on the normalized omitted mass for side N.
double direct_tail_bound(double s, std::int64_t N);

}  // namespace gaussdens
