#include "gaussdens/bound_fn.hpp"

#include "gaussdens/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gaussdens {

namespace {

constexpr double kInt64Limit = 9.2e18;
constexpr double kSnapAbsolute = 1e-9;

// Relative slack for comparing two bound values that may be analytically equal.
constexpr double kCompareSlack = 1e-12;

std::int64_t saturate(double x) {
    if (!(x < kInt64Limit)) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(x);
}

bool geq(double lhs, double rhs) { return lhs >= rhs - kCompareSlack * std::max(1.0, std::fabs(rhs)); }

}  // namespace

double snap_to_integer(double x) {
    const double r = std::nearbyint(x);
    const double tol = std::max(kSnapAbsolute, 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(x));
    return std::fabs(x - r) <= tol ? r : x;
}

BoundFn BoundFn::constant(const Scalar& k) {
    if (!(k.value() >= 1.0)) throw ValidationError("const(k) requires k >= 1, got " + k.str());
    return BoundFn(Kind::constant, k, Scalar(0));
}

BoundFn BoundFn::power(const Scalar& c, const Scalar& alpha) {
    if (!(c.value() > 0.0)) throw ValidationError("pow(c,alpha) requires c > 0, got " + c.str());
    if (!(alpha.value() >= 0.0) || !std::isfinite(alpha.value()))
        throw ValidationError("pow(c,alpha) requires alpha >= 0, got " + alpha.str());
    if (alpha.value() == 0.0) return constant(c);
    return BoundFn(Kind::power, c, alpha);
}

BoundFn BoundFn::exponential(const Scalar& c, const Scalar& base) {
    if (!(c.value() > 0.0)) throw ValidationError("exp(c,a) requires c > 0, got " + c.str());
    if (!(base.value() > 1.0) || !std::isfinite(base.value()))
        throw ValidationError("exp(c,a) requires a > 1, got " + base.str());
    return BoundFn(Kind::exponential, c, base);
}

BoundFn BoundFn::with_coefficient(const Scalar& c) const {
    switch (kind_) {
        case Kind::constant: return constant(c);
        case Kind::power: return power(c, shape_);
        case Kind::exponential: return exponential(c, shape_);
    }
    return *this;
}

double BoundFn::value(double m) const {
    switch (kind_) {
        case Kind::constant: return coeff_.value();
        case Kind::power: return coeff_.value() * std::pow(m, shape_.value());
        case Kind::exponential: return coeff_.value() * std::pow(shape_.value(), m);
    }
    return 0.0;
}

double BoundFn::log_value(double m) const {
    switch (kind_) {
        case Kind::constant: return std::log(coeff_.value());
        case Kind::power: return std::log(coeff_.value()) + shape_.value() * std::log(m);
        case Kind::exponential: return std::log(coeff_.value()) + m * std::log(shape_.value());
    }
    return 0.0;
}

std::int64_t BoundFn::ceil_at(std::int64_t m) const {
    return saturate(std::ceil(snap_to_integer(value(static_cast<double>(m)))));
}

std::int64_t BoundFn::floor_at(std::int64_t m) const {
    return saturate(std::floor(snap_to_integer(value(static_cast<double>(m)))));
}

std::string BoundFn::str() const {
    switch (kind_) {
        case Kind::constant: return "const(" + coeff_.str() + ")";
        case Kind::power: return "pow(" + coeff_.str() + "," + shape_.str() + ")";
        case Kind::exponential: return "exp(" + coeff_.str() + "," + shape_.str() + ")";
    }
    return {};
}

void check_domination(const BoundFn& lower, const BoundFn& upper) {
    using K = BoundFn::Kind;
    auto fail = [&](const std::string& why) {
        throw ValidationError("delim(" + lower.str() + ", " + upper.str() + "): " + why);
    };

    // lower >= 1 everywhere; every family attains its minimum at m = 1.
    if (!geq(lower.value(1.0), 1.0)) fail("lower bound drops below 1 at m = 1");

    const double lc = lower.coefficient().value();
    const double uc = upper.coefficient().value();

    switch (lower.kind()) {
        case K::constant:
            // upper is nondecreasing in m for every family.
            if (!geq(upper.value(1.0), lc)) fail("upper < lower at m = 1");
            return;
        case K::power: {
            const double alpha = lower.shape().value();
            if (upper.kind() == K::constant) fail("a constant cannot dominate a growing power");
            if (upper.kind() == K::power) {
                const double beta = upper.shape().value();
                if (beta < alpha) fail("upper exponent is smaller than lower exponent");
                // (uc/lc) m^(beta-alpha) is minimal at m = 1.
                if (!geq(uc, lc)) fail("upper < lower at m = 1");
                return;
            }
            // log(upper/lower) = log(uc/lc) + m log a - alpha log m is increasing
            // for m > alpha / log a, so the integers up to that point plus one suffice.
            const double log_a = std::log(upper.shape().value());
            const double crossover = alpha / log_a;
            const double last = std::min(std::ceil(crossover) + 1.0, 1e7);
            for (double m = 1.0; m <= last; m += 1.0) {
                if (upper.log_value(m) < lower.log_value(m) - kCompareSlack * std::max(1.0, std::fabs(lower.log_value(m))))
                    fail("upper < lower at m = " + std::to_string(static_cast<long long>(m)));
            }
            return;
        }
        case K::exponential: {
            if (upper.kind() != K::exponential) fail("an exponential lower bound outgrows any power or constant");
            const double la = std::log(lower.shape().value());
            const double ua = std::log(upper.shape().value());
            if (ua < la) fail("upper base is smaller than lower base");
            // log ratio is affine and nondecreasing in m: check m = 1.
            if (!geq(upper.log_value(1.0), lower.log_value(1.0))) fail("upper < lower at m = 1");
            return;
        }
    }
}

}  // namespace gaussdens
