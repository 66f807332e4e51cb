#include "doctest.h"

#include "gaussdens/scalar.hpp"
#include "gaussdens/summation.hpp"

#include <cmath>
#include <random>

using namespace gaussdens;

TEST_CASE("parse_rational") {
    CHECK(parse_rational("12") == Rational(12));
    CHECK(parse_rational("-3") == Rational(-3));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("2.5e-3") == Rational(1, 400));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK_FALSE(parse_rational("1/0"));
    CHECK_FALSE(parse_rational("abc"));
    CHECK_FALSE(parse_rational(""));
}

TEST_CASE("rational printing and lcm") {
    CHECK(to_string(Rational(1, 6)) == "1/6");
    CHECK(to_string(Rational(4, 2)) == "2");
    CHECK(lcm(BigInt(4), BigInt(6)) == 12);
    CHECK(checked_lcm(4, 6) == 12);
    CHECK_FALSE(checked_lcm(std::int64_t(1) << 40, (std::int64_t(1) << 40) - 1));
}

TEST_CASE("scalar equality") {
    CHECK(Scalar(Rational(1, 2)) == Scalar(Rational(2, 4)));
    CHECK_FALSE(Scalar(Rational(1, 2)) == Scalar::inexact(0.5));
    CHECK(Scalar::inexact(0.5).str() == "0.5");
    CHECK(Scalar(Rational(1, 3)).str() == "1/3");
}

TEST_CASE("compensated sum beats naive summation") {
    CompensatedSum c;
    double naive = 0.0;
    c += 1.0;
    naive += 1.0;
    for (int i = 0; i < 1000000; ++i) {
        c += 1e-16;
        naive += 1e-16;
    }
    CHECK(naive == 1.0);
    CHECK(c.value() == doctest::Approx(1.0 + 1e-10).epsilon(1e-15));
}

TEST_CASE("reduce_blocks is independent of the worker count") {
    auto body = [](std::int64_t lo, std::int64_t hi) {
        CompensatedSum s;
        for (std::int64_t i = lo; i < hi; ++i) s += 1.0 / static_cast<double>(i * i);
        return s;
    };
    const double one = reduce_blocks(1, 200001, 997, 1, body).value();
    for (unsigned w : {2u, 3u, 8u}) CHECK(reduce_blocks(1, 200001, 997, w, body).value() == one);
}
