#pragma once

/**
 * @file estimator.hpp
 * @brief Numerical s -> 1 limit: evaluate along a schedule, fit, extrapolate.
 *
 * The normalized series r_A(s) is evaluated at each scheduled s with
 * density_at. A polynomial in (s - 1) of degree fit_degree is fitted by
 * weighted least squares, weights 1 / max(tail_bound, per_point_eps)^2,
 * and its constant coefficient is the estimate. When a point exceeds the
 * term budget its eps is loosened tenfold, up to max_point_eps; points that
 * still fail are dropped from the fit and mark the report non-converged.
 */

#include "gaussdens/exact_calculus.hpp"
#include "gaussdens/series_engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gaussdens {

/// 1 + 0.5 * 2^-k for k = k0..k1.
std::vector<double> geometric_schedule(int k0, int k1);

struct EstimatorConfig {
    std::vector<double> s_schedule = geometric_schedule(0, 6);
    double per_point_eps = 1e-6;
    int fit_degree = 2;
    std::uint64_t term_budget = 100'000'000;
    unsigned workers = 0;
    /// Ceiling for the automatic loosening of per_point_eps.
    double max_point_eps = 1e-2;
    /// Convergence thresholds; residual_tol <= 0 means 10 * per_point_eps.
    double residual_tol = 0.0;
    double drift_tol = 0.05;

    double effective_residual_tol() const { return residual_tol > 0.0 ? residual_tol : 10.0 * per_point_eps; }

    /// Throws ValidationError: schedule strictly decreasing, every s >= 1 + 2^-10,
    /// at least fit_degree + 2 points, fit_degree >= 1, eps > 0.
    void validate() const;
};

struct EstimateReport {
    std::vector<SeriesEval> points;
    std::vector<double> point_eps;        ///< eps actually used per point
    std::vector<double> budget_exceeded;  ///< s values that failed at every eps
    std::vector<double> coefficients;     ///< fitted polynomial, constant term first
    double raw_extrapolated = 0.0;        ///< before clamping
    double extrapolated = 0.0;            ///< clamped to [0, 1]
    bool clamped = false;
    double fit_residual = 0.0;
    double drift = 0.0;  ///< |last point value - extrapolated|
    bool converged = false;
    std::optional<DensityValue> exact_reference;

    /// max(5e-3, 3 * fit_residual): agreement radius against exact values.
    double tolerance() const;
};

EstimateReport estimate_density(const GaussSet& e, const EstimatorConfig& cfg = {});

struct LimitPoint {
    double s = 0.0;
    double value = 0.0;
};

struct ZetaLimitReport {
    double alpha = 0.0;
    std::vector<LimitPoint> points;
    double extrapolated = 0.0;
    double target = 0.0;  ///< 1 / (1 + alpha)
};

/// zeta((alpha+1)s - alpha) (s - 1) along the schedule; any s > 1 is allowed.
ZetaLimitReport zeta_limit_check(double alpha, const std::vector<double>& s_schedule, int fit_degree = 2);

struct ThetaReport {
    EstimateReport first;   ///< delim(lower, c1 * u)
    EstimateReport second;  ///< delim(lower, c2 * u)
    double difference = 0.0;
    double tolerance = 0.0;  ///< sum of the two estimate tolerances
    bool agree = false;
};

/// Estimates delim(lower, c * u) for c = c1 and c = c2, which share their
/// limit; c1 == c2 is allowed and yields identical reports.
ThetaReport theta_invariance_check(const BoundFn& u, const Scalar& c1, const Scalar& c2, const EstimatorConfig& cfg,
                                   const BoundFn& lower = BoundFn::constant(1));

}  // namespace gaussdens
