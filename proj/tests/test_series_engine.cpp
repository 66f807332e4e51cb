#include "doctest.h"
#include "generators.hpp"

#include "gaussdens/corpus.hpp"
#include "gaussdens/errors.hpp"
#include "gaussdens/parser.hpp"
#include "gaussdens/series_engine.hpp"

#include <cmath>
#include <set>

using namespace gaussdens;

namespace {

// Independent zeta: 10^7 direct terms summed from the small end, plus the
// first Euler-Maclaurin corrections for the remainder.
double zeta_reference(double s) {
    const std::int64_t N = 10'000'000;
    long double sum = 0.0L;
    for (std::int64_t n = N; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
    const long double x = N;
    const long double ls = s;
    sum += std::pow(x, 1.0L - ls) / (ls - 1.0L) - 0.5L * std::pow(x, -ls) + ls * std::pow(x, -ls - 1.0L) / 12.0L;
    return static_cast<double>(sum);
}

GaussSet P(const char* text) { return parse_expression(text); }

double rel_diff(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); }

}  // namespace

TEST_CASE("zeta against constants and the direct oracle") {
    const double pi = 3.14159265358979323846;
    CHECK(std::fabs(zeta(2.0) - pi * pi / 6.0) < 1e-9);
    CHECK(std::fabs(zeta(4.0) - std::pow(pi, 4) / 90.0) < 1e-9);
    CHECK(std::fabs(zeta(1.5) - 2.612375348685488) < 1e-9);
    for (const double s : {2.0, 4.0, 1.5}) CHECK(std::fabs(zeta(s) - zeta_reference(s)) < 1e-9);
    // mpmath, 30 digits
    CHECK(zeta(1.0 + 1.0 / 1024) == doctest::Approx(1024.5772867695046).epsilon(1e-12));
    CHECK(zeta(1.25) == doctest::Approx(4.5951118258429434).epsilon(1e-13));
    CHECK(zeta(3.0) == doctest::Approx(1.2020569031595943).epsilon(1e-14));
    CHECK_THROWS_AS(zeta(1.0), DomainError);
}

TEST_CASE("range_sum") {
    CHECK(range_sum(1, 3, 2.0) == doctest::Approx(49.0 / 36.0).epsilon(1e-15));
    for (const double s : {1.1, 2.0, 3.7}) CHECK(range_sum(2, 2, s) == doctest::Approx(std::pow(2.0, -s)).epsilon(1e-15));
    CHECK_THROWS_AS(range_sum(5, 4, 2.0), DomainError);

    // Chunked direct summation of 10^8 - 10^3 + 1 terms.
    const std::int64_t a = 1000, b = 100'000'000;
    long double total = 0.0L;
    for (std::int64_t lo = b; lo >= a; lo -= 1'000'000) {
        long double chunk = 0.0L;
        for (std::int64_t n = lo; n > std::max(lo - 1'000'000, a - 1); --n) chunk += std::pow(static_cast<double>(n), -1.25);
        total += chunk;
    }
    CHECK(rel_diff(range_sum(a, b, 1.25), static_cast<double>(total)) < 1e-9);
}

TEST_CASE("progression sums") {
    // sum_{j>=0} (3j + 2)^-2, against a long direct sum with an integral tail
    long double direct = 0.0L;
    const std::int64_t J = 2'000'000;
    for (std::int64_t j = J - 1; j >= 0; --j) direct += 1.0L / ((3.0L * j + 2) * (3.0L * j + 2));
    const long double last = 3.0L * J + 2;
    direct += 1.0L / (3.0L * (last - 1.5L));
    CHECK(rel_diff(progression_tail(2.0, 2.0, 3.0), static_cast<double>(direct)) < 1e-10);

    long double fin = 0.0L;
    for (int j = 0; j <= 10000; ++j) fin += std::pow(5.0L + 7.0L * j, -1.3L);
    CHECK(rel_diff(progression_sum(1.3, 5.0, 7.0, 5.0 + 7.0 * 10000), static_cast<double>(fin)) < 1e-12);
    CHECK(progression_sum(2.0, 5.0, 1.0, 4.0) == 0.0);
}

TEST_CASE("partial_double_sum: hand values") {
    CHECK(partial_double_sum(GaussSet::full(), 2.0, 1) == 1.0);
    CHECK(partial_double_sum(GaussSet::full(), 2.0, 2) == doctest::Approx(1.5625).epsilon(1e-15));
    CHECK(partial_double_sum(GaussSet::lattice(2, 2), 2.0, 4) == doctest::Approx(25.0 / 256.0).epsilon(1e-15));
}

TEST_CASE("partial_double_sum: identical across worker counts") {
    for (const auto& c : golden_corpus()) {
        const GaussSet e = P(c.expr.c_str());
        const double one = partial_double_sum(e, 1.5, 300, 1);
        CHECK(partial_double_sum(e, 1.5, 300, 3) == one);
        CHECK(partial_double_sum(e, 1.5, 300, 8) == one);
    }
}

TEST_CASE("density_at: closed forms") {
    const SeriesEval l = density_at(GaussSet::lattice(2, 2), 1.5, 1e-3);
    CHECK(l.value == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(l.tail_bound <= 1e-12);
    CHECK(l.method == Method::product_closed_form);

    const SeriesEval f = density_at(GaussSet::full(), 2.0, 1e-6);
    CHECK(std::fabs(f.value - 1.0) <= 1e-6);

    const SeriesEval pr = density_at(P("prod(mult(2),P)"), 1.25, 1e-8);
    CHECK(pr.value == doctest::Approx(std::pow(2.0, -1.25)).epsilon(1e-13));

    CHECK_THROWS_AS(density_at(GaussSet::full(), 1.0, 1e-3), DomainError);
    CHECK_THROWS_AS(density_at(GaussSet::full(), 2.0, 0.0), DomainError);
}

TEST_CASE("density_at: delimited sets against mpmath references") {
    // Row sums rewritten as Hurwitz zeta differences and summed with
    // mpmath's Euler-Maclaurin nsum at 25 digits.
    struct Ref {
        const char* expr;
        double s;
        double value;
    };
    const Ref refs[] = {
#include "delimited_references.inc"
    };
    for (const auto& r : refs) {
        for (const double eps : {1e-4, 1e-6}) {
            INFO(r.expr << " s=" << r.s << " eps=" << eps);
            const SeriesEval v = density_at(P(r.expr), r.s, eps);
            CHECK(v.tail_bound <= eps);
            CHECK(std::fabs(v.value - r.value) <= v.tail_bound + 1e-12);
        }
    }
}

TEST_CASE("density_at: delimited set against a truncated double loop") {
    // The box [1,N]^2 misses mass only outside the box, so its sum is a
    // lower bound, short by at most the generic tail.
    const GaussSet e = P("delim(pow(1,1/2),pow(1,2))");
    const double s = 1.25;
    const std::int64_t N = 4000;
    const SeriesEval v = density_at(e, s, 1e-4);
    const double z = zeta(s);
    const double box = partial_double_sum(e, s, N) / (z * z);
    CHECK(box <= v.value + v.tail_bound);
    CHECK(box >= v.value - v.tail_bound - direct_tail_bound(s, N));
}

TEST_CASE("density_at: fast paths agree with plain truncation") {
    EvalOptions direct;
    direct.force_direct = true;
    const std::pair<double, double> grid[] = {{1.5, 5e-2}, {2.0, 1e-3}, {3.0, 1e-5}};
    for (const auto& c : golden_corpus()) {
        const GaussSet e = P(c.expr.c_str());
        for (const auto& [s, eps] : grid) {
            INFO(c.name << " s=" << s);
            const SeriesEval fast = density_at(e, s, eps);
            const SeriesEval slow = density_at(e, s, eps, direct);
            CHECK(slow.method == Method::direct);
            CHECK(std::fabs(fast.value - slow.value) <= fast.tail_bound + slow.tail_bound + 1e-12);
            // The truncated sum never exceeds the full one.
            CHECK(slow.value <= fast.value + fast.tail_bound + 1e-12);
            CHECK(fast.value >= 0.0);
            CHECK(std::isfinite(fast.tail_bound));
        }
    }
}

TEST_CASE("density_at: budget exhaustion") {
    EvalOptions tight;
    tight.term_budget = 1000;
    CHECK_THROWS_AS(density_at(P("union(lattice(2,1),delim(const(1),pow(1,2)))"), 1.01, 1e-9, tight), BudgetExceeded);
}

TEST_CASE("property: partial sums grow with N and with the set") {
    testgen::ExprGen gen(2718);
    for (int i = 0; i < 40; ++i) {
        const GaussSet a = gen.expr(2);
        const GaussSet b = gen.expr(2);
        const GaussSet u = GaussSet::unite(a, b);
        INFO(u.str());
        double prev = 0.0;
        for (const std::int64_t N : {1, 5, 20, 60, 61, 150}) {
            const double v = partial_double_sum(a, 1.5, N);
            CHECK(v >= prev);
            prev = v;
            CHECK(v <= partial_double_sum(u, 1.5, N));
        }
    }
}

TEST_CASE("property: pre-limit additivity on disjoint sets") {
    testgen::ExprGen gen(1618);
    for (int i = 0; i < 40; ++i) {
        const GaussSet a = gen.expr(2);
        const GaussSet b = GaussSet::difference(gen.expr(2), a);
        const double sa = partial_double_sum(a, 1.7, 120);
        const double sb = partial_double_sum(b, 1.7, 120);
        const double su = partial_double_sum(GaussSet::unite(a, b), 1.7, 120);
        CHECK(std::fabs(su - (sa + sb)) <= 1e-13 * std::max(su, 1e-300) + 1e-300);
    }
}

TEST_CASE("unitary translation bracketing") {
    for (const auto& c : golden_corpus()) {
        const GaussSet e = P(c.expr.c_str());
        const GaussSet t = GaussSet::translate(e, 1, 0);
        for (const double s : {1.5, 2.0}) {
            const std::int64_t N = 200;
            const double diff = partial_double_sum(e, s, N) - partial_double_sum(t, s, N + 1);
            double rows = 0.0, cols = 0.0;
            for (std::int64_t n = 1; n <= N; ++n) rows += std::pow(static_cast<double>(n), -s);
            for (std::int64_t m = 1; m <= N; ++m) {
                bool occurs = false;
                for (std::int64_t n = 1; n <= N && !occurs; ++n) occurs = e.contains(m, n);
                if (occurs) cols += s * std::pow(static_cast<double>(m), -(s + 1.0));
            }
            INFO(c.name << " s=" << s);
            CHECK(diff >= -1e-12);
            CHECK(diff <= rows * cols + 1e-12);
        }
    }
}
