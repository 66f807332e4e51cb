#include "gaussdens/series_engine.hpp"

#include "gaussdens/detail/structure.hpp"
#include "gaussdens/errors.hpp"
#include "gaussdens/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace gaussdens {

namespace {

// B_2k / (2k)! for k = 1..8.
constexpr double kBernoulli[] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
};

constexpr std::int64_t kDirectRangeLimit = 10'000;
constexpr std::int64_t kShortRun = 64;

// Bound values up to e^36 (~4e15) are converted to exact integer indices.
constexpr double kLogExact = 36.0;

// Relative rounding allowance for paths that omit no terms.
constexpr double kRoundingRel = 1e-14;

// Work charged per row of the row-wise kernel (one short sum or one tail).
constexpr std::uint64_t kRowCost = 24;

constexpr int kMaxCompositeDepth = 8;

void require_s(double s) {
    if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("series evaluation needs finite s > 1");
}

// Euler-Maclaurin switches on once x >= em_start * step; the eighth-order
// remainder is then far below double precision.
double em_start(double s) { return 12.0 + s; }

// sum_k B_2k/(2k)! (s)_{2k-1} r^{2k-1}
double em_corrections(double s, double r) {
    double acc = 0.0;
    double term = s * r;
    for (int k = 0; k < 8; ++k) {
        acc += kBernoulli[k] * term;
        term *= (s + 2 * k + 1) * (s + 2 * k + 2) * r * r;
    }
    return acc;
}

// sum_{j>=0} (x + j step)^-s, x large enough for the expansion.
double tail_em(double s, double x, double step) {
    const double fx = std::pow(x, -s);
    return fx * (x / (step * (s - 1.0)) + 0.5 + em_corrections(s, step / x));
}

// Sum over the progression from x to x * e^log_ratio, x large enough.
double range_em(double s, double x, double step, double log_ratio) {
    const double fa = std::pow(x, -s);
    const double fb = fa * std::exp(-s * log_ratio);
    const double integral = x * fa * -std::expm1((1.0 - s) * log_ratio) / (step * (s - 1.0));
    const double rb = (step / x) * std::exp(-log_ratio);
    const double corr = fa * em_corrections(s, step / x) - fb * em_corrections(s, rb);
    return integral + 0.5 * (fa + fb) + corr;
}

double log_pow_neg(double base, double s) { return std::exp(-s * std::log(base)); }

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::direct: return "direct";
        case Method::rowwise: return "rowwise";
        case Method::product_closed_form: return "product-closed-form";
        case Method::residue_class: return "residue-class";
        case Method::composite: return "composite";
    }
    return "direct";
}

double progression_tail(double s, double first, double step) {
    require_s(s);
    if (!(first > 0.0) || !(step > 0.0)) throw DomainError("progression_tail needs first > 0 and step > 0");
    CompensatedSum acc;
    double x = first;
    const double start = em_start(s) * step;
    while (x < start) {
        acc += std::pow(x, -s);
        x += step;
    }
    acc += tail_em(s, x, step);
    return acc.value();
}

double progression_sum(double s, double first, double step, double last) {
    require_s(s);
    if (!(first > 0.0) || !(step > 0.0)) throw DomainError("progression_sum needs first > 0 and step > 0");
    if (last < first) return 0.0;
    double count = std::nearbyint((last - first) / step) + 1.0;
    CompensatedSum acc;
    double x = first;
    const double start = em_start(s) * step;
    while (count > 0.0 && (count <= kShortRun || x < start)) {
        acc += std::pow(x, -s);
        x += step;
        count -= 1.0;
    }
    if (count > 0.0) acc += range_em(s, x, step, std::log1p((count - 1.0) * step / x));
    return acc.value();
}

double progression_sum_log(double s, double first, double step, double log_last) {
    require_s(s);
    if (!(first > 0.0) || !(step > 0.0)) throw DomainError("progression_sum needs first > 0 and step > 0");
    if (log_last <= kLogExact) {
        const double last_value = std::exp(log_last);
        if (last_value < first) return 0.0;
        const double steps = std::floor((last_value - first) / step);
        return progression_sum(s, first, step, first + steps * step);
    }
    CompensatedSum acc;
    double x = first;
    const double start = em_start(s) * step;
    while (x < start) {
        acc += std::pow(x, -s);
        x += step;
    }
    const double log_ratio = log_last - std::log(x);
    if (log_ratio > 0.0) acc += range_em(s, x, step, log_ratio);
    return acc.value();
}

double zeta(double s) {
    if (!(s > 1.0)) throw DomainError("zeta(s) is only evaluated for s > 1");
    return progression_tail(s, 1.0, 1.0);
}

double range_sum(std::int64_t a, std::int64_t b, double s) {
    if (!(s > 1.0)) throw DomainError("range_sum needs s > 1");
    if (a < 1 || b < a) throw DomainError("range_sum needs 1 <= a <= b");
    if (b - a <= kDirectRangeLimit) {
        CompensatedSum acc;
        for (std::int64_t n = a; n <= b; ++n) acc += std::pow(static_cast<double>(n), -s);
        return acc.value();
    }
    return progression_sum(s, static_cast<double>(a), 1.0, static_cast<double>(b));
}

double partial_double_sum(const GaussSet& e, double s, std::int64_t N, unsigned workers) {
    require_s(s);
    if (N < 1) return 0.0;
    std::vector<double> pw(static_cast<std::size_t>(N) + 1);
    for (std::int64_t i = 1; i <= N; ++i) pw[static_cast<std::size_t>(i)] = std::pow(static_cast<double>(i), -s);
    const auto total = reduce_blocks(1, N, 64, workers, [&](std::int64_t lo, std::int64_t hi) {
        CompensatedSum acc;
        for (std::int64_t n = lo; n <= hi; ++n) {
            const double pn = pw[static_cast<std::size_t>(n)];
            for (std::int64_t m = 1; m <= N; ++m)
                if (e.contains(m, n)) acc += pw[static_cast<std::size_t>(m)] * pn;
        }
        return acc;
    });
    return total.value();
}

double direct_tail_bound(double s, std::int64_t N) {
    require_s(s);
    if (N < 1) throw DomainError("direct_tail_bound needs N >= 1");
    return 2.0 * std::pow(static_cast<double>(N), 1.0 - s) / ((s - 1.0) * zeta(s));
}

namespace {

using detail::RowFamily;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct RowBlock {
    CompensatedSum value;
    double err = 0.0;
};

/// Row-wise kernel for {(a k + p, b j + q) : k >= k_lo, max(ceil f(k), j_lo) <= j <= floor g(k)}.
///
/// With V(J) = sum_{j>=J} (b j + q)^-s the k-th row sums to V(J_lo) - V(J_hi + 1).
/// Rows k <= K are summed exactly. Beyond K each side sum_k w_k V(J(k)),
/// w_k = (a k + p)^-s, is enclosed separately:
///   constant bound     exact product of two progression tails
///   exponential bound  term by term, geometric remainder
///   power bound        V(J) = b^-s (H^(1-s)/(s-1) + e), H = h(k) + q/b, where
///                      |e| <= 0.5005 H^-s + 0.5005 s H^(-s-1) (integral comparison
///                      plus the first Euler-Maclaurin correction, with the
///                      rounding of h absorbed), and sum_k w_k H^(1-s) is
///                      bracketed by second-order expansions of (1 + p/(ak))^-s
///                      and (1 + q/(b c k^alpha))^(1-s) in Hurwitz-type tails.
class RowwiseKernel {
public:
    RowwiseKernel(const RowFamily& fam, double s, const EvalOptions& opt)
        : f_(fam), s_(s), opt_(opt), delta_(static_cast<double>(fam.q) / static_cast<double>(fam.b)),
          bs_(log_pow_neg(static_cast<double>(fam.b), s)), z_(zeta(s)), z2_(z_ * z_) {}

    SeriesEval run(double eps) {
        const bool power_side = f_.lower.kind() == BoundFn::Kind::power || f_.upper.kind() == BoundFn::Kind::power;
        std::int64_t K = std::max<std::int64_t>(tail_start(), f_.k_lo - 1 + 256);
        std::int64_t done = f_.k_lo - 1;
        RowBlock head;
        for (;;) {
            extend_head(head, done, K);
            done = K;
            const Interval lower = side_tail(f_.lower, true, K);
            const Interval upper = side_tail(f_.upper, false, K);
            const double t_lo = lower.lo - upper.hi;
            const double t_hi = lower.hi - upper.lo;
            const double h = head.value.value();
            const double center = h + 0.5 * (t_lo + t_hi);
            const double slack = kRoundingRel * (std::fabs(h) + std::fabs(lower.hi) + std::fabs(upper.hi));
            const double half = (head.err + 0.5 * (t_hi - t_lo) + slack) / z2_;
            if (half <= eps) {
                SeriesEval out;
                out.value = std::max(0.0, center / z2_);
                out.tail_bound = half;
                out.terms_used = terms_;
                out.method = Method::rowwise;
                return out;
            }
            if (!power_side) throw BudgetExceeded("rowwise: requested eps is below the attainable accuracy");
            const std::int64_t next = K * 2;
            const std::uint64_t rows = static_cast<std::uint64_t>(next - f_.k_lo + 1);
            if (next > (std::int64_t{1} << 40) || rows * kRowCost + terms_ > opt_.term_budget)
                throw BudgetExceeded("rowwise: eps needs more than the term budget");
            K = next;
        }
    }

private:
    double weight(std::int64_t k) const {
        return log_pow_neg(static_cast<double>(f_.a) * static_cast<double>(k) + static_cast<double>(f_.p), s_);
    }

    // V(J) for an exactly representable index.
    double v_exact(std::int64_t J) const {
        return progression_tail(s_, static_cast<double>(f_.b) * static_cast<double>(J) + static_cast<double>(f_.q),
                                static_cast<double>(f_.b));
    }

    // Enclosure of V(J) for J within rounding of h, given log h.
    Interval v_closed(double log_h) const {
        const double log_H = log_h + std::log1p(delta_ * std::exp(-log_h));
        const double center = bs_ * std::exp((1.0 - s_) * log_H) / (s_ - 1.0);
        const double err = bs_ * (0.5005 * std::exp(-s_ * log_H) + 0.5005 * s_ * std::exp(-(s_ + 1.0) * log_H));
        return {center - err, center + err};
    }

    std::int64_t j_lower(std::int64_t k) const { return std::max(f_.lower.ceil_at(k), f_.j_lo); }

    Interval side_v(const BoundFn& h, bool lower, std::int64_t k) const {
        const double lv = h.log_value(static_cast<double>(k));
        if (lv > kLogExact) return v_closed(lv);
        const std::int64_t J = lower ? j_lower(k) : std::max(h.floor_at(k) + 1, j_lower(k));
        const double v = v_exact(J);
        return {v, v};
    }

    // Row sum times its weight, with an error radius.
    std::pair<double, double> row(std::int64_t k) const {
        const double w = weight(k);
        const bool lower_exact = f_.lower.log_value(static_cast<double>(k)) <= kLogExact;
        const bool upper_exact = f_.upper.log_value(static_cast<double>(k)) <= kLogExact;
        if (lower_exact && upper_exact) {
            const std::int64_t jl = j_lower(k);
            const std::int64_t jh = f_.upper.floor_at(k);
            if (jh < jl) return {0.0, 0.0};
            const double b = static_cast<double>(f_.b);
            const double q = static_cast<double>(f_.q);
            return {w * progression_sum(s_, b * static_cast<double>(jl) + q, b, b * static_cast<double>(jh) + q), 0.0};
        }
        const Interval vl = side_v(f_.lower, true, k);
        const Interval vu = side_v(f_.upper, false, k);
        return {w * 0.5 * ((vl.lo + vl.hi) - (vu.lo + vu.hi)), w * 0.5 * ((vl.hi - vl.lo) + (vu.hi - vu.lo))};
    }

    void extend_head(RowBlock& head, std::int64_t from, std::int64_t to) {
        if (to <= from) return;
        const auto blocks = map_blocks<RowBlock>(from + 1, to, 4096, opt_.workers, [&](std::int64_t lo, std::int64_t hi) {
            RowBlock out;
            for (std::int64_t k = lo; k <= hi; ++k) {
                const auto [v, e] = row(k);
                out.value += v;
                out.err += e;
            }
            return out;
        });
        for (const auto& b : blocks) {
            head.value += b.value;
            head.err += b.err;
        }
        terms_ += static_cast<std::uint64_t>(to - from) * kRowCost;
    }

    // Smallest K from which the tail enclosures are valid.
    std::int64_t tail_start() const {
        constexpr double kLimit = 1099511627776.0;  // 2^40
        double K = static_cast<double>(f_.k_lo - 1);
        const BoundFn& lo = f_.lower;
        if (lo.is_growing() && f_.j_lo > 1 && lo.ceil_at(f_.k_lo) < f_.j_lo) {
            std::int64_t good = std::max<std::int64_t>(f_.k_lo, 1);
            while (lo.ceil_at(good) < f_.j_lo) {
                if (good > (std::int64_t{1} << 40)) throw BudgetExceeded("rowwise: lower bound never reaches the cut");
                good *= 2;
            }
            std::int64_t bad = good / 2;
            while (good - bad > 1) {
                const std::int64_t mid = bad + (good - bad) / 2;
                (lo.ceil_at(mid) >= f_.j_lo ? good : bad) = mid;
            }
            K = std::max(K, static_cast<double>(good - 1));
        }
        for (const BoundFn* h : {&f_.lower, &f_.upper}) {
            if (h->kind() != BoundFn::Kind::power) continue;
            const double P = static_cast<double>(f_.p) / static_cast<double>(f_.a);
            K = std::max(K, std::ceil(2.0 * s_ * P));
            const double D = delta_ / h->coefficient().value();
            if (D > 0.0) K = std::max(K, std::ceil(std::pow(2.0 * (s_ - 1.0) * D, 1.0 / h->shape().value())));
        }
        if (!(K <= kLimit)) throw BudgetExceeded("rowwise: tail expansion needs too many exact rows");
        return static_cast<std::int64_t>(K);
    }

    // Enclosure of sum_{k>K} w_k V(J_side(k)).
    Interval side_tail(const BoundFn& h, bool lower, std::int64_t K) {
        switch (h.kind()) {
            case BoundFn::Kind::constant: return constant_tail(h, lower, K);
            case BoundFn::Kind::power: return power_tail(h, K);
            case BoundFn::Kind::exponential: return exponential_tail(h, lower, K);
        }
        return {};
    }

    Interval constant_tail(const BoundFn& h, bool lower, std::int64_t K) {
        const std::int64_t jl = std::max(f_.lower.ceil_at(1), f_.j_lo);
        const std::int64_t J = lower ? jl : std::max(h.floor_at(1) + 1, jl);
        const double W = progression_tail(s_, static_cast<double>(f_.a) * static_cast<double>(K + 1) + static_cast<double>(f_.p),
                                          static_cast<double>(f_.a));
        terms_ += 2 * kRowCost;
        const double v = v_exact(J) * W;
        return {v, v};
    }

    Interval power_tail(const BoundFn& h, std::int64_t K) {
        const double c = h.coefficient().value();
        const double alpha = h.shape().value();
        const double s = s_;
        const double g = s - 1.0;
        const double P = static_cast<double>(f_.p) / static_cast<double>(f_.a);
        const double D = delta_ / c;
        const double first = static_cast<double>(K + 1);
        auto Z = [&](double t) { return progression_tail(t, first, 1.0); };
        const double sigma = s + alpha * g;
        const double as = log_pow_neg(static_cast<double>(f_.a), s);
        const double base = as * std::pow(c, 1.0 - s);

        const double lo = base * (Z(sigma) - s * P * Z(sigma + 1.0) - g * D * Z(sigma + alpha) +
                                  s * g * P * D * Z(sigma + 1.0 + alpha));
        const double width = base * (0.5 * s * (s + 1.0) * P * P * Z(sigma + 2.0) +
                                     0.5 * g * (g + 1.0) * D * D * Z(sigma + 2.0 * alpha));
        const double err = as * (0.5005 * std::pow(c, -s) * Z(s * (1.0 + alpha)) +
                                 0.5005 * s * std::pow(c, -s - 1.0) * Z(s + alpha * (s + 1.0)));
        terms_ += 8 * kRowCost;
        return {bs_ * (lo / g - err), bs_ * ((lo + width) / g + err)};
    }

    Interval exponential_tail(const BoundFn& h, bool lower, std::int64_t K) {
        const double log_c = std::log(h.coefficient().value());
        const double log_A = std::log(h.shape().value());
        const double s = s_;
        // 1 - A^(1-s)
        const double denom = -std::expm1((1.0 - s) * log_A);
        const double scale = 1.001 * bs_ * (1.0 / (s - 1.0) + 1.0);
        CompensatedSum lo, hi;
        double remainder = std::numeric_limits<double>::infinity();
        const std::uint64_t cap = opt_.term_budget > terms_ ? (opt_.term_budget - terms_) / 2 : 0;
        std::uint64_t used = 0;
        std::int64_t k = K + 1;
        for (;; ++k) {
            const Interval v = side_v(h, lower, k);
            const double w = weight(k);
            lo += w * v.lo;
            hi += w * v.hi;
            ++used;
            if (used % 64 == 0 || used >= cap) {
                const double kn = static_cast<double>(k + 1);
                remainder = weight(k + 1) * scale * std::exp((1.0 - s) * (log_c + kn * log_A)) / denom;
                if (remainder <= 1e-17 * hi.value() || used >= cap) break;
            }
        }
        terms_ += used * (kRowCost / 4);
        return {lo.value(), hi.value() + remainder};
    }

    const RowFamily& f_;
    double s_;
    const EvalOptions& opt_;
    double delta_;
    double bs_;
    double z_;
    double z2_;
    std::uint64_t terms_ = 0;
};

class Evaluator {
public:
    Evaluator(double s, const EvalOptions& opt) : s_(s), opt_(opt), z_(zeta(s)), z2_(z_ * z_) {}

    SeriesEval eval(const GaussSet& raw, double eps, int depth) {
        const GaussSet e = normalize(raw);
        if (opt_.force_direct) return direct(e, eps);
        if (auto r = closed_form(e)) return *r;

        if (const auto* c = e.as<gauss::Complement>()) {
            auto r = eval(c->inner, eps, depth + 1);
            return composite(1.0 - r.value, r.tail_bound, r.terms_used);
        }
        if (const auto* d = e.as<gauss::Dilate>()) {
            const double scale = std::exp(-s_ * (std::log(static_cast<double>(d->a)) + std::log(static_cast<double>(d->b))));
            auto r = eval(d->inner, eps / scale, depth + 1);
            return composite(scale * r.value, scale * r.tail_bound, r.terms_used);
        }
        if (auto fam = detail::row_family(e)) return RowwiseKernel(*fam, s_, opt_).run(eps);
        if (auto r = residue_class(e)) return *r;
        if (depth < kMaxCompositeDepth) {
            try {
                if (auto r = split(e, eps, depth)) return *r;
            } catch (const BudgetExceeded&) {
                // the pieces were harder than the whole; truncate the whole instead
            }
        }
        return direct(e, eps);
    }

private:
    SeriesEval make(double value, double tail, std::uint64_t terms, Method m) const {
        SeriesEval out;
        out.s = s_;
        out.value = std::max(0.0, value);
        out.tail_bound = tail;
        out.terms_used = terms;
        out.method = m;
        return out;
    }

    SeriesEval composite(double value, double tail, std::uint64_t terms) const {
        return make(value, tail + kRoundingRel * std::fabs(value), terms, Method::composite);
    }

    // sum_{n in h} n^-s, exact up to rounding, or nullopt when too costly.
    std::optional<std::pair<double, std::uint64_t>> one_d_sum(const IntSet& raw) const {
        const IntSet h = normalize(raw);
        if (h.as<int_set::FullP>()) return std::pair{z_, std::uint64_t{1}};
        if (const auto* mu = h.as<int_set::Multiples>())
            return std::pair{log_pow_neg(static_cast<double>(mu->p), s_) * z_, std::uint64_t{1}};
        const auto per = detail::periodicity(h);
        if (!per) return std::nullopt;
        const auto cost = static_cast<std::uint64_t>(per->threshold + per->period);
        if (cost > opt_.term_budget) return std::nullopt;
        CompensatedSum acc;
        for (std::int64_t n = 1; n <= per->threshold; ++n)
            if (h.contains(n)) acc += std::pow(static_cast<double>(n), -s_);
        for (std::int64_t r = 1; r <= per->period; ++r) {
            const std::int64_t n = per->threshold + r;
            if (h.contains(n)) acc += progression_tail(s_, static_cast<double>(n), static_cast<double>(per->period));
        }
        return std::pair{acc.value(), cost};
    }

    std::optional<SeriesEval> closed_form(const GaussSet& e) const {
        constexpr auto pcf = Method::product_closed_form;
        if (e.as<gauss::Empty>()) return make(0.0, 0.0, 0, pcf);
        if (e.as<gauss::FullQuadrant>()) return make(1.0, 0.0, 0, pcf);
        if (const auto* l = e.as<gauss::Lattice>()) {
            const double v = std::exp(-s_ * (std::log(static_cast<double>(l->p)) + std::log(static_cast<double>(l->q))));
            return make(v, 0.0, 1, pcf);
        }
        if (const auto* u = e.as<gauss::UpperQuadrant>()) {
            const double v = progression_tail(s_, static_cast<double>(u->m0), 1.0) *
                             progression_tail(s_, static_cast<double>(u->n0), 1.0) / z2_;
            return make(v, kRoundingRel * v, 2, pcf);
        }
        if (const auto* p = e.as<gauss::Product>()) {
            const auto h = one_d_sum(p->horizontal);
            const auto v = one_d_sum(p->vertical);
            if (!h || !v) return std::nullopt;
            const double val = h->first * v->first / z2_;
            return make(val, kRoundingRel * val, h->second + v->second, pcf);
        }
        if (const auto* f = e.as<gauss::FinitePairs>()) {
            CompensatedSum acc;
            for (const auto& pt : f->points)
                acc += std::pow(static_cast<double>(pt.m) * static_cast<double>(pt.n), -s_);
            const double val = acc.value() / z2_;
            return make(val, kRoundingRel * val, f->points.size(), Method::direct);
        }
        return std::nullopt;
    }

    std::optional<SeriesEval> residue_class(const GaussSet& e) const {
        const auto per = detail::periodicity(e);
        if (!per) return std::nullopt;
        const double cost = static_cast<double>(per->km) * static_cast<double>(per->kn) +
                            static_cast<double>(per->km) * static_cast<double>(per->ln) +
                            static_cast<double>(per->lm) * static_cast<double>(per->kn) +
                            static_cast<double>(per->lm) * static_cast<double>(per->ln);
        if (cost > static_cast<double>(opt_.term_budget)) return std::nullopt;
        const std::int64_t km = per->km, kn = per->kn, lm = per->lm, ln = per->ln;

        auto powers = [&](std::int64_t n) {
            std::vector<double> out(static_cast<std::size_t>(n) + 1);
            for (std::int64_t i = 1; i <= n; ++i) out[static_cast<std::size_t>(i)] = std::pow(static_cast<double>(i), -s_);
            return out;
        };
        auto tails = [&](std::int64_t k, std::int64_t l) {
            std::vector<double> out(static_cast<std::size_t>(l) + 1);
            for (std::int64_t r = 1; r <= l; ++r)
                out[static_cast<std::size_t>(r)] = progression_tail(s_, static_cast<double>(k + r), static_cast<double>(l));
            return out;
        };
        const auto pm = powers(km), pn = powers(kn);
        const auto tm = tails(km, lm), tn = tails(kn, ln);

        // Rows n of the box and the strip below the quadrant, then the
        // residue rows of the upper strip and the quadrant.
        const auto lower_rows = reduce_blocks(1, kn, 64, opt_.workers, [&](std::int64_t lo, std::int64_t hi) {
            CompensatedSum acc;
            for (std::int64_t n = lo; n <= hi; ++n) {
                const double wn = pn[static_cast<std::size_t>(n)];
                for (std::int64_t m = 1; m <= km; ++m)
                    if (e.contains(m, n)) acc += pm[static_cast<std::size_t>(m)] * wn;
                for (std::int64_t r = 1; r <= lm; ++r)
                    if (e.contains(km + r, n)) acc += tm[static_cast<std::size_t>(r)] * wn;
            }
            return acc;
        });
        const auto upper_rows = reduce_blocks(1, ln, 64, opt_.workers, [&](std::int64_t lo, std::int64_t hi) {
            CompensatedSum acc;
            for (std::int64_t r = lo; r <= hi; ++r) {
                const double wn = tn[static_cast<std::size_t>(r)];
                const std::int64_t n = kn + r;
                for (std::int64_t m = 1; m <= km; ++m)
                    if (e.contains(m, n)) acc += pm[static_cast<std::size_t>(m)] * wn;
                for (std::int64_t t = 1; t <= lm; ++t)
                    if (e.contains(km + t, n)) acc += tm[static_cast<std::size_t>(t)] * wn;
            }
            return acc;
        });
        CompensatedSum total = lower_rows;
        total += upper_rows;
        const double val = total.value() / z2_;
        return make(val, kRoundingRel * val, static_cast<std::uint64_t>(cost), Method::residue_class);
    }

    // Inclusion-exclusion over structured parts.
    std::optional<SeriesEval> split(const GaussSet& e, double eps, int depth) {
        auto combine = [&](std::initializer_list<std::pair<double, GaussSet>> parts) {
            const double share = eps / static_cast<double>(parts.size());
            double value = 0.0, tail = 0.0;
            std::uint64_t terms = 0;
            for (const auto& [sign, part] : parts) {
                const auto r = eval(part, share, depth + 1);
                value += sign * r.value;
                tail += r.tail_bound;
                terms += r.terms_used;
            }
            return composite(value, tail, terms);
        };
        if (const auto* u = e.as<gauss::Union>())
            return combine({{1.0, u->lhs}, {1.0, u->rhs}, {-1.0, GaussSet::intersect(u->lhs, u->rhs)}});
        if (const auto* d = e.as<gauss::Difference>())
            return combine({{1.0, d->minuend}, {-1.0, GaussSet::intersect(d->minuend, d->subtrahend)}});
        if (const auto* i = e.as<gauss::Intersection>()) {
            for (const auto& [x, y] : {std::pair{i->lhs, i->rhs}, std::pair{i->rhs, i->lhs}}) {
                if (const auto* c = y.as<gauss::Complement>())
                    return combine({{1.0, x}, {-1.0, GaussSet::intersect(x, c->inner)}});
                if (const auto* u = y.as<gauss::Union>())
                    return combine({{1.0, GaussSet::intersect(x, u->lhs)},
                                    {1.0, GaussSet::intersect(x, u->rhs)},
                                    {-1.0, GaussSet::intersect(x, GaussSet::intersect(u->lhs, u->rhs))}});
            }
        }
        if (const auto* t = e.as<gauss::Translate>()) {
            auto shift = [&](const GaussSet& x) { return GaussSet::translate(x, t->m0, t->n0); };
            if (const auto* u = t->inner.as<gauss::Union>())
                return eval(GaussSet::unite(shift(u->lhs), shift(u->rhs)), eps, depth + 1);
            if (const auto* i = t->inner.as<gauss::Intersection>())
                return eval(GaussSet::intersect(shift(i->lhs), shift(i->rhs)), eps, depth + 1);
            if (const auto* c = t->inner.as<gauss::Complement>())
                return eval(GaussSet::difference(GaussSet::upper(t->m0 + 1, t->n0 + 1), shift(c->inner)), eps,
                            depth + 1);
            if (const auto* d = t->inner.as<gauss::Difference>())
                return eval(GaussSet::difference(shift(d->minuend), shift(d->subtrahend)), eps, depth + 1);
        }
        return std::nullopt;
    }

    SeriesEval direct(const GaussSet& e, double eps) const {
        // 2 N^(1-s) / ((s-1) zeta) <= eps, with a little room for rounding.
        const double target = 0.99 * eps;
        const double log_n = std::log(2.0 / ((s_ - 1.0) * z_ * target)) / (s_ - 1.0);
        const double side = std::ceil(std::exp(std::max(0.0, log_n)));
        if (!(log_n < 31.0 * std::log(2.0)) || side * side > static_cast<double>(opt_.term_budget))
            throw BudgetExceeded("direct truncation at s = " + std::to_string(s_) + " needs side " +
                                 (std::isfinite(side) ? std::to_string(static_cast<long long>(side)) : "inf") +
                                 ", beyond the term budget");
        const auto N = static_cast<std::int64_t>(side);
        const double val = partial_double_sum(e, s_, N, opt_.workers) / z2_;
        return make(val, direct_tail_bound(s_, N) + kRoundingRel * val,
                    static_cast<std::uint64_t>(N) * static_cast<std::uint64_t>(N), Method::direct);
    }

    double s_;
    const EvalOptions& opt_;
    double z_;
    double z2_;
};

}  // namespace

SeriesEval density_at(const GaussSet& e, double s, double eps, const EvalOptions& options) {
    if (!(s >= kMinSeriesS) || !std::isfinite(s))
        throw DomainError("density_at needs s >= 1 + 2^-10, got " + std::to_string(s));
    if (!(eps > 0.0)) throw DomainError("density_at needs eps > 0");
    Evaluator ev(s, options);
    SeriesEval out = ev.eval(e, eps, 0);
    out.s = s;
    return out;
}

}  // namespace gaussdens
