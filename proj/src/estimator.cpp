#include "gaussdens/estimator.hpp"

#include "gaussdens/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace gaussdens {

namespace {

struct Fit {
    std::vector<double> coefficients;
    double residual = 0.0;
};

Fit weighted_polyfit(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& w,
                     int degree) {
    const auto n = static_cast<Eigen::Index>(x.size());
    const Eigen::Index cols = degree + 1;
    Eigen::MatrixXd A(n, cols);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double sw = std::sqrt(w[static_cast<std::size_t>(i)]);
        double p = 1.0;
        for (Eigen::Index j = 0; j < cols; ++j) {
            A(i, j) = sw * p;
            p *= x[static_cast<std::size_t>(i)];
        }
        b(i) = sw * y[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    Fit out;
    out.coefficients.assign(c.data(), c.data() + c.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double v = 0.0;
        for (Eigen::Index j = cols - 1; j >= 0; --j) v = v * x[i] + c(j);
        out.residual = std::max(out.residual, std::fabs(y[i] - v));
    }
    return out;
}

}  // namespace

std::vector<double> geometric_schedule(int k0, int k1) {
    std::vector<double> out;
    for (int k = k0; k <= k1; ++k) out.push_back(1.0 + 0.5 * std::ldexp(1.0, -k));
    return out;
}

void EstimatorConfig::validate() const {
    if (fit_degree < 1) throw ValidationError("fit degree must be >= 1");
    if (s_schedule.size() < static_cast<std::size_t>(fit_degree) + 2)
        throw ValidationError("schedule needs at least fit_degree + 2 points");
    for (std::size_t i = 0; i < s_schedule.size(); ++i) {
        if (!(s_schedule[i] >= kMinSeriesS) || !std::isfinite(s_schedule[i]))
            throw ValidationError("schedule values must be finite and >= 1 + 2^-10");
        if (i > 0 && !(s_schedule[i] < s_schedule[i - 1]))
            throw ValidationError("schedule must be strictly decreasing");
    }
    if (!(per_point_eps > 0.0)) throw ValidationError("per-point eps must be > 0");
    if (!(max_point_eps >= per_point_eps)) throw ValidationError("max point eps must be >= per-point eps");
    if (term_budget == 0) throw ValidationError("term budget must be > 0");
}

double EstimateReport::tolerance() const { return std::max(5e-3, 3.0 * fit_residual); }

EstimateReport estimate_density(const GaussSet& e, const EstimatorConfig& cfg) {
    cfg.validate();
    EstimateReport rep;
    const DensityValue exact = exact_density(e);
    if (exact.known()) rep.exact_reference = exact;

    EvalOptions opt;
    opt.term_budget = cfg.term_budget;
    opt.workers = cfg.workers;
    for (const double s : cfg.s_schedule) {
        double eps = cfg.per_point_eps;
        for (;;) {
            try {
                rep.points.push_back(density_at(e, s, eps, opt));
                rep.point_eps.push_back(eps);
                break;
            } catch (const BudgetExceeded&) {
                eps *= 10.0;
                if (eps > cfg.max_point_eps * (1.0 + 1e-12)) {
                    rep.budget_exceeded.push_back(s);
                    break;
                }
            }
        }
    }

    if (rep.points.size() < static_cast<std::size_t>(cfg.fit_degree) + 1) {
        // Too few points for a fit: report the last value, never converged.
        if (!rep.points.empty()) rep.raw_extrapolated = rep.points.back().value;
        rep.extrapolated = std::clamp(rep.raw_extrapolated, 0.0, 1.0);
        rep.clamped = rep.extrapolated != rep.raw_extrapolated;
        rep.fit_residual = std::numeric_limits<double>::infinity();
        rep.converged = false;
        return rep;
    }

    std::vector<double> x, y, w;
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        const auto& p = rep.points[i];
        x.push_back(p.s - 1.0);
        y.push_back(p.value);
        const double sigma = std::max(p.tail_bound, cfg.per_point_eps);
        w.push_back(1.0 / (sigma * sigma));
    }
    const Fit fit = weighted_polyfit(x, y, w, cfg.fit_degree);
    rep.coefficients = fit.coefficients;
    rep.raw_extrapolated = fit.coefficients.front();
    rep.extrapolated = std::clamp(rep.raw_extrapolated, 0.0, 1.0);
    rep.clamped = rep.extrapolated != rep.raw_extrapolated;
    rep.fit_residual = fit.residual;
    rep.drift = std::fabs(rep.points.back().value - rep.extrapolated);
    rep.converged = rep.budget_exceeded.empty() && rep.fit_residual <= cfg.effective_residual_tol() &&
                    rep.drift <= cfg.drift_tol;
    return rep;
}

ZetaLimitReport zeta_limit_check(double alpha, const std::vector<double>& s_schedule, int fit_degree) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("zeta_limit_check needs alpha >= 0");
    ZetaLimitReport rep;
    rep.alpha = alpha;
    rep.target = 1.0 / (1.0 + alpha);
    std::vector<double> x, y, w;
    for (const double s : s_schedule) {
        if (!(s > 1.0)) throw DomainError("zeta_limit_check needs s > 1");
        const double v = zeta((alpha + 1.0) * s - alpha) * (s - 1.0);
        rep.points.push_back({s, v});
        x.push_back(s - 1.0);
        y.push_back(v);
        w.push_back(1.0);
    }
    if (rep.points.size() >= static_cast<std::size_t>(fit_degree) + 1 && fit_degree >= 0)
        rep.extrapolated = weighted_polyfit(x, y, w, fit_degree).coefficients.front();
    else if (!rep.points.empty())
        rep.extrapolated = rep.points.back().value;
    return rep;
}

ThetaReport theta_invariance_check(const BoundFn& u, const Scalar& c1, const Scalar& c2, const EstimatorConfig& cfg,
                                   const BoundFn& lower) {
    ThetaReport rep;
    rep.first = estimate_density(GaussSet::delimited(lower, u.with_coefficient(c1)), cfg);
    rep.second = c1 == c2 ? rep.first : estimate_density(GaussSet::delimited(lower, u.with_coefficient(c2)), cfg);
    rep.difference = std::fabs(rep.first.extrapolated - rep.second.extrapolated);
    rep.tolerance = rep.first.tolerance() + rep.second.tolerance();
    rep.agree = rep.difference <= rep.tolerance;
    return rep;
}

}  // namespace gaussdens
