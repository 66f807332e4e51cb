#include "gaussdens/parser.hpp"

#include "gaussdens/errors.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>

namespace gaussdens {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    GaussSet gauss() {
        skip_space();
        const std::size_t at = pos_;
        const std::string word = ident();
        if (word == "P2") return GaussSet::full();
        if (word == "empty") return GaussSet::empty();
        if (word == "finite") return finite_pairs();
        static const char* const known[] = {"lattice", "upper", "prod",  "translate", "dilate",
                                            "union",   "inter", "diff",  "compl",     "delim"};
        if (std::find(std::begin(known), std::end(known), word) == std::end(known))
            fail("unknown set constructor '" + word + "'", at);
        expect('(');
        GaussSet out = GaussSet::empty();
        if (word == "lattice") {
            const auto p = integer();
            expect(',');
            const auto q = integer();
            out = GaussSet::lattice(p, q);
        } else if (word == "upper") {
            const auto m0 = integer();
            expect(',');
            const auto n0 = integer();
            out = GaussSet::upper(m0, n0);
        } else if (word == "prod") {
            IntSet h = ints();
            expect(',');
            IntSet v = ints();
            out = GaussSet::product(std::move(h), std::move(v));
        } else if (word == "translate") {
            GaussSet inner = gauss();
            expect(',');
            const auto m0 = integer();
            expect(',');
            const auto n0 = integer();
            out = GaussSet::translate(std::move(inner), m0, n0);
        } else if (word == "dilate") {
            const auto a = integer();
            expect(',');
            const auto b = integer();
            expect(',');
            out = GaussSet::dilate(a, b, gauss());
        } else if (word == "union" || word == "inter" || word == "diff") {
            GaussSet lhs = gauss();
            expect(',');
            GaussSet rhs = gauss();
            if (word == "union") out = GaussSet::unite(std::move(lhs), std::move(rhs));
            else if (word == "inter") out = GaussSet::intersect(std::move(lhs), std::move(rhs));
            else out = GaussSet::difference(std::move(lhs), std::move(rhs));
        } else if (word == "compl") {
            out = GaussSet::complement(gauss());
        } else if (word == "delim") {
            BoundFn lower = bound();
            expect(',');
            BoundFn upper = bound();
            out = GaussSet::delimited(std::move(lower), std::move(upper));
        } else {
            fail("unknown set constructor '" + word + "'", at);
        }
        expect(')');
        return out;
    }

    IntSet ints() {
        skip_space();
        if (peek() == '{') {
            ++pos_;
            std::vector<std::int64_t> elements;
            if (!accept('}')) {
                do elements.push_back(integer());
                while (accept(','));
                expect('}');
            }
            return IntSet::finite(std::move(elements));
        }
        const std::size_t at = pos_;
        const std::string word = ident();
        if (word == "P") return IntSet::full();
        if (word != "mult" && word != "union" && word != "inter" && word != "compl")
            fail("unknown integer-set constructor '" + word + "'", at);
        expect('(');
        IntSet out = IntSet::full();
        if (word == "mult") {
            out = IntSet::multiples(integer());
        } else if (word == "union" || word == "inter") {
            IntSet lhs = ints();
            expect(',');
            IntSet rhs = ints();
            out = word == "union" ? IntSet::unite(std::move(lhs), std::move(rhs))
                                  : IntSet::intersect(std::move(lhs), std::move(rhs));
        } else if (word == "compl") {
            out = IntSet::complement(ints());
        } else {
            fail("unknown integer-set constructor '" + word + "'", at);
        }
        expect(')');
        return out;
    }

    BoundFn bound() {
        skip_space();
        const std::size_t at = pos_;
        const std::string word = ident();
        if (word != "const" && word != "pow" && word != "exp") fail("unknown bound function '" + word + "'", at);
        expect('(');
        if (word == "const") {
            const Scalar k = real();
            expect(')');
            return BoundFn::constant(k);
        }
        const Scalar c = real();
        expect(',');
        const Scalar shape = real();
        expect(')');
        return word == "pow" ? BoundFn::power(c, shape) : BoundFn::exponential(c, shape);
    }

    void finish() {
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input", pos_);
    }

private:
    GaussSet finite_pairs() {
        expect('{');
        std::vector<Point> points;
        if (!accept('}')) {
            do {
                expect('(');
                const auto m = integer();
                expect(',');
                const auto n = integer();
                expect(')');
                points.push_back({m, n});
                if (points.size() > kMaxFinitePairs) throw ValidationError("finite set has more than 10^6 points");
            } while (accept(','));
            expect('}');
        }
        return GaussSet::finite(std::move(points));
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) {
            const std::string got = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
            fail(std::string("expected '") + c + "', found " + got, pos_);
        }
    }

    std::string ident() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (start == pos_) fail("expected a name", start);
        return std::string(text_.substr(start, pos_ - start));
    }

    std::int64_t integer() {
        skip_space();
        const std::size_t start = pos_;
        bool negative = false;
        if (peek() == '-' || peek() == '+') {
            negative = peek() == '-';
            ++pos_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer", start);
        std::int64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            const int d = text_[pos_] - '0';
            if (v > (std::numeric_limits<std::int64_t>::max() - d) / 10) fail("integer out of range", start);
            v = v * 10 + d;
            ++pos_;
        }
        return negative ? -v : v;
    }

    Scalar real() {
        skip_space();
        const std::size_t start = pos_;
        auto digits = [&] {
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        };
        if (peek() == '-' || peek() == '+') ++pos_;
        digits();
        if (peek() == '.') {
            ++pos_;
            digits();
        }
        if (peek() == 'e' || peek() == 'E') {
            ++pos_;
            if (peek() == '-' || peek() == '+') ++pos_;
            digits();
        }
        if (peek() == '/') {
            ++pos_;
            digits();
        }
        const auto r = parse_rational(text_.substr(start, pos_ - start));
        if (!r) fail("expected a number", start);
        return Scalar(*r);
    }

    [[noreturn]] void fail(const std::string& what, std::size_t at) const {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(what, line, column);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

GaussSet parse_expression(std::string_view text) {
    Parser p(text);
    GaussSet out = p.gauss();
    p.finish();
    return out;
}

IntSet parse_int_set(std::string_view text) {
    Parser p(text);
    IntSet out = p.ints();
    p.finish();
    return out;
}

BoundFn parse_bound(std::string_view text) {
    Parser p(text);
    BoundFn out = p.bound();
    p.finish();
    return out;
}

}  // namespace gaussdens
