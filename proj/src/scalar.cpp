#include "gaussdens/scalar.hpp"

#include <cctype>
#include <cstdio>

namespace gaussdens {

std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return a / boost::multiprecision::gcd(a, b) * b;
}

std::optional<std::int64_t> checked_lcm(std::int64_t a, std::int64_t b) {
    const BigInt l = lcm(BigInt(a), BigInt(b));
    if (l > (BigInt(1) << 62)) return std::nullopt;
    return l.convert_to<std::int64_t>();
}

namespace {

std::optional<BigInt> parse_digits(std::string_view text) {
    if (text.empty()) return std::nullopt;
    BigInt out = 0;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        out = out * 10 + (c - '0');
    }
    return out;
}

BigInt pow10(unsigned k) {
    BigInt p = 1;
    for (unsigned i = 0; i < k; ++i) p *= 10;
    return p;
}

// Unsigned decimal with optional fraction and exponent.
std::optional<Rational> parse_decimal(std::string_view text) {
    std::string_view mantissa = text;
    long long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        std::string_view exp_text = text.substr(e + 1);
        bool neg = false;
        if (!exp_text.empty() && (exp_text[0] == '+' || exp_text[0] == '-')) {
            neg = exp_text[0] == '-';
            exp_text.remove_prefix(1);
        }
        auto digits = parse_digits(exp_text);
        if (!digits || *digits > 4000) return std::nullopt;
        exponent = digits->convert_to<long long>();
        if (neg) exponent = -exponent;
    }
    std::string_view int_part = mantissa;
    std::string_view frac_part;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        int_part = mantissa.substr(0, dot);
        frac_part = mantissa.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) return std::nullopt;
    BigInt num = 0;
    if (!int_part.empty()) {
        auto v = parse_digits(int_part);
        if (!v) return std::nullopt;
        num = *v;
    }
    if (!frac_part.empty()) {
        auto v = parse_digits(frac_part);
        if (!v) return std::nullopt;
        num = num * pow10(static_cast<unsigned>(frac_part.size())) + *v;
    }
    exponent -= static_cast<long long>(frac_part.size());
    if (exponent >= 0) return Rational(num * pow10(static_cast<unsigned>(exponent)));
    return Rational(num, pow10(static_cast<unsigned>(-exponent)));
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        negative = text[0] == '-';
        text.remove_prefix(1);
    }
    std::optional<Rational> out;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_decimal(text.substr(0, slash));
        auto den = parse_decimal(text.substr(slash + 1));
        if (!num || !den || *den == 0) return std::nullopt;
        out = *num / *den;
    } else {
        out = parse_decimal(text);
    }
    if (out && negative) *out = -*out;
    return out;
}

std::string Scalar::str() const {
    if (exact_) return to_string(*exact_);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value_);
    return buf;
}

}  // namespace gaussdens
