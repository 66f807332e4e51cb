#include "doctest.h"

#include "gaussdens/errors.hpp"
#include "gaussdens/estimator.hpp"
#include "gaussdens/parser.hpp"

#include <cmath>

using namespace gaussdens;

namespace {
GaussSet P(const char* text) { return parse_expression(text); }
}  // namespace

TEST_CASE("geometric schedule") {
    const auto s = geometric_schedule(0, 6);
    REQUIRE(s.size() == 7);
    CHECK(s.front() == 1.5);
    CHECK(s.back() == 1.0 + 1.0 / 128.0);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] < s[i - 1]);
}

TEST_CASE("config validation") {
    EstimatorConfig c;
    CHECK_NOTHROW(c.validate());
    c.s_schedule = {1.5, 1.25, 1.125};
    CHECK_THROWS_AS(c.validate(), ValidationError);  // needs fit_degree + 2 points
    c.s_schedule = {1.5, 1.25, 1.3, 1.1};
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c.s_schedule = {1.5, 1.25, 1.1, 1.0001};
    CHECK_THROWS_AS(c.validate(), ValidationError);  // below 1 + 2^-10
    c = EstimatorConfig{};
    c.per_point_eps = 0.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = EstimatorConfig{};
    c.fit_degree = 0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("estimates of worked sets") {
    const EstimateReport l = estimate_density(P("lattice(2,3)"));
    CHECK(std::fabs(l.extrapolated - 1.0 / 6.0) <= 5e-3);
    REQUIRE(l.exact_reference);
    CHECK(l.exact_reference->str() == "1/6");

    const EstimateReport f = estimate_density(GaussSet::full());
    CHECK(std::fabs(f.extrapolated - 1.0) <= 1e-9);
    CHECK(f.converged);

    const EstimateReport d = estimate_density(P("delim(pow(1,1),pow(1,3))"));
    CHECK(std::fabs(d.extrapolated - 0.25) <= 2e-2);
}

TEST_CASE("report invariants") {
    for (const char* text : {"lattice(4,5)", "prod({3},P)", "upper(5,5)", "delim(exp(1,2),exp(1,3))",
                             "compl(lattice(2,3))"}) {
        INFO(text);
        const EstimateReport r = estimate_density(P(text));
        CHECK(r.extrapolated >= 0.0);
        CHECK(r.extrapolated <= 1.0);
        CHECK(r.clamped == (r.extrapolated != r.raw_extrapolated));
        CHECK(r.points.size() == r.point_eps.size());
        CHECK(r.coefficients.size() == 3);
        CHECK(r.coefficients.front() == r.raw_extrapolated);
        CHECK(r.tolerance() >= 5e-3);
    }
}

TEST_CASE("budget failures mark the report non-converged") {
    EstimatorConfig cfg;
    cfg.term_budget = 2000;
    const EstimateReport r = estimate_density(P("union(lattice(2,1),delim(const(1),pow(1,2)))"), cfg);
    CHECK_FALSE(r.budget_exceeded.empty());
    CHECK_FALSE(r.converged);
    CHECK(r.points.size() + r.budget_exceeded.size() == cfg.s_schedule.size());
}

TEST_CASE("closer schedules tighten the fit") {
    EstimatorConfig close;
    close.s_schedule = geometric_schedule(3, 9);
    const EstimateReport r = estimate_density(P("lattice(2,3)"), close);
    CHECK(std::fabs(r.extrapolated - 1.0 / 6.0) <= 1e-4);
    CHECK(r.converged);
}

TEST_CASE("estimates do not depend on the worker count") {
    EstimatorConfig one, many;
    one.workers = 1;
    many.workers = 4;
    for (const char* text : {"union(lattice(2,1),lattice(1,2))", "delim(pow(1,1/2),pow(1,2))"}) {
        const EstimateReport a = estimate_density(P(text), one);
        const EstimateReport b = estimate_density(P(text), many);
        CHECK(a.extrapolated == b.extrapolated);
        CHECK(a.fit_residual == b.fit_residual);
    }
}

TEST_CASE("zeta limit") {
    const std::vector<double> sched{1.01, 1.001, 1.0001};
    for (const double alpha : {0.0, 1.0, 3.0}) {
        const ZetaLimitReport r = zeta_limit_check(alpha, sched);
        INFO("alpha=" << alpha);
        CHECK(r.target == doctest::Approx(1.0 / (1.0 + alpha)));
        CHECK(std::fabs(r.points.back().value - r.target) <= 1e-3);
        CHECK(std::fabs(r.extrapolated - r.target) <= 1e-6);
    }
    CHECK_THROWS_AS(zeta_limit_check(-1.0, sched), DomainError);
}

TEST_CASE("coefficients of the bounds do not change the limit") {
    const EstimatorConfig cfg;
    const ThetaReport sq = theta_invariance_check(BoundFn::power(1, 2), 1, 3, cfg);
    CHECK(std::fabs(sq.first.extrapolated - sq.second.extrapolated) <= 2e-2);
    CHECK(std::fabs(sq.first.extrapolated - 2.0 / 3.0) <= 2e-2);
    CHECK(std::fabs(sq.second.extrapolated - 2.0 / 3.0) <= 2e-2);
    CHECK(sq.agree);

    const ThetaReport lin = theta_invariance_check(BoundFn::power(1, 1), 1, 2, cfg);
    CHECK(std::fabs(lin.first.extrapolated - lin.second.extrapolated) <= 2e-2);
    CHECK(std::fabs(lin.first.extrapolated - 0.5) <= 2e-2);
    CHECK(std::fabs(lin.second.extrapolated - 0.5) <= 2e-2);

    const ThetaReport same = theta_invariance_check(BoundFn::power(1, 2), 2, 2, cfg);
    CHECK(same.difference == 0.0);
    CHECK(same.first.extrapolated == same.second.extrapolated);
    CHECK(same.first.fit_residual == same.second.fit_residual);
}

TEST_CASE("inclusion-exclusion on lattice pairs") {
    const char* lattices[] = {"lattice(2,3)", "lattice(3,2)", "lattice(4,1)", "lattice(2,2)"};
    for (const char* a : lattices)
        for (const char* b : lattices) {
            const GaussSet A = P(a), B = P(b);
            const EstimateReport ea = estimate_density(A), eb = estimate_density(B);
            const EstimateReport eu = estimate_density(GaussSet::unite(A, B));
            const EstimateReport ex = estimate_density(GaussSet::intersect(A, B));
            const double tol = std::max({ea.tolerance(), eb.tolerance(), eu.tolerance(), ex.tolerance()});
            CHECK(std::fabs(eu.extrapolated + ex.extrapolated - ea.extrapolated - eb.extrapolated) <= 4 * tol);
        }
}
