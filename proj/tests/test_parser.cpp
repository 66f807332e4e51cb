#include "doctest.h"
#include "generators.hpp"

#include "gaussdens/corpus.hpp"
#include "gaussdens/errors.hpp"
#include "gaussdens/parser.hpp"

using namespace gaussdens;
using testgen::ExprGen;
using testgen::same_members;

TEST_CASE("parse: worked expressions") {
    CHECK(parse_expression("inter(lattice(2,3), lattice(3,2))") ==
          GaussSet::intersect(GaussSet::lattice(2, 3), GaussSet::lattice(3, 2)));
    CHECK(parse_expression("delim(pow(1,0.5), pow(1,2))") ==
          GaussSet::delimited(BoundFn::power(1, Rational(1, 2)), BoundFn::power(1, 2)));
    CHECK_THROWS_AS(parse_expression("delim(pow(1,2), pow(1,0.5))"), ValidationError);
}

TEST_CASE("parse: decimal and rational literals agree") {
    CHECK(parse_bound("pow(1,0.5)") == parse_bound("pow(1,1/2)"));
    CHECK(parse_bound("exp(3, 2.5e0)") == parse_bound("exp(3,5/2)"));
    CHECK(parse_bound("const(2)") == BoundFn::constant(2));
}

TEST_CASE("parse: whitespace is insignificant") {
    CHECK(parse_expression(" union ( lattice( 2 ,1 ) ,\n\tcompl( upper(3, 4) ) ) ") ==
          parse_expression("union(lattice(2,1),compl(upper(3,4)))"));
    CHECK(parse_int_set("union( mult(2), {3, 5} )") ==
          IntSet::unite(IntSet::multiples(2), IntSet::finite({3, 5})));
}

TEST_CASE("parse: every constructor") {
    CHECK(parse_expression("P2") == GaussSet::full());
    CHECK(parse_expression("empty") == GaussSet::empty());
    CHECK(parse_expression("finite{(1,1),(2,5)}") == GaussSet::finite({{1, 1}, {2, 5}}));
    CHECK(parse_expression("prod(compl(mult(3)),P)") ==
          GaussSet::product(IntSet::complement(IntSet::multiples(3)), IntSet::full()));
    CHECK(parse_expression("translate(P2,1,0)") == GaussSet::translate(GaussSet::full(), 1, 0));
    CHECK(parse_expression("dilate(2,5,P2)") == GaussSet::dilate(2, 5, GaussSet::full()));
    CHECK(parse_expression("diff(P2,lattice(3,3))") == GaussSet::difference(GaussSet::full(), GaussSet::lattice(3, 3)));
    CHECK(parse_expression("upper(5,5)") == GaussSet::upper(5, 5));
}

TEST_CASE("parse: error positions") {
    auto position = [](const char* text) {
        try {
            parse_expression(text);
        } catch (const ParseError& e) {
            return std::pair<std::size_t, std::size_t>(e.line(), e.column());
        }
        return std::pair<std::size_t, std::size_t>(0, 0);
    };
    CHECK(position("lattice(2,") == std::pair<std::size_t, std::size_t>(1, 11));
    CHECK(position("union(P2,\n  bogus)") == std::pair<std::size_t, std::size_t>(2, 3));
    CHECK(position("P2 P2").first == 1);
    CHECK(position("lattice(2,3").second == 12);
    CHECK_THROWS_AS(parse_expression(""), ParseError);
    CHECK_THROWS_AS(parse_expression("lattice(0,3)"), ValidationError);
    CHECK_THROWS_AS(parse_expression("finite{(0,1)}"), ValidationError);
    CHECK_THROWS_AS(parse_bound("pow(1,x)"), ParseError);
}

TEST_CASE("round trip: corpus") {
    for (const auto& c : golden_corpus()) {
        INFO(c.expr);
        const GaussSet e = parse_expression(c.expr);
        const GaussSet again = parse_expression(e.str());
        CHECK(again == e);
        CHECK(same_members(e, again));
    }
}

TEST_CASE("property: round trip on generated expressions") {
    ExprGen gen(4242);
    for (int i = 0; i < 300; ++i) {
        const GaussSet e = gen.expr(3);
        INFO(e.str());
        const GaussSet again = parse_expression(e.str());
        CHECK(again == e);
    }
    ExprGen gen2(17);
    for (int i = 0; i < 60; ++i) {
        const GaussSet e = gen2.expr(3);
        INFO(e.str());
        CHECK(same_members(e, parse_expression(e.str())));
    }
}
