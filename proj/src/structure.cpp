#include "gaussdens/detail/structure.hpp"

#include "gaussdens/scalar.hpp"

#include <algorithm>

namespace gaussdens::detail {

namespace {

constexpr std::int64_t kLimit = std::int64_t{1} << 40;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::optional<std::int64_t> bounded(std::int64_t v) {
    if (v < 0 || v > kLimit) return std::nullopt;
    return v;
}

std::optional<std::int64_t> mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
    return bounded(out);
}

std::optional<std::int64_t> add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) return std::nullopt;
    return bounded(out);
}

std::optional<std::int64_t> period_lcm(std::int64_t a, std::int64_t b) {
    auto l = checked_lcm(a, b);
    if (!l) return std::nullopt;
    return bounded(*l);
}

std::optional<Periodicity1D> combine(const std::optional<Periodicity1D>& a, const std::optional<Periodicity1D>& b) {
    if (!a || !b) return std::nullopt;
    auto period = period_lcm(a->period, b->period);
    if (!period) return std::nullopt;
    return Periodicity1D{std::max(a->threshold, b->threshold), *period};
}

std::optional<Periodicity2D> combine(const std::optional<Periodicity2D>& a, const std::optional<Periodicity2D>& b) {
    if (!a || !b) return std::nullopt;
    auto lm = period_lcm(a->lm, b->lm);
    auto ln = period_lcm(a->ln, b->ln);
    if (!lm || !ln) return std::nullopt;
    return Periodicity2D{std::max(a->km, b->km), std::max(a->kn, b->kn), *lm, *ln};
}

std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
    if (num <= 0) return 0;
    return (num + den - 1) / den;
}

}  // namespace

std::optional<Periodicity1D> periodicity(const IntSet& e) {
    return std::visit(overloaded{
                          [](const int_set::FullP&) { return std::optional<Periodicity1D>(Periodicity1D{0, 1}); },
                          [](const int_set::Finite& f) {
                              const std::int64_t top = f.elements.empty() ? 0 : f.elements.back();
                              if (!bounded(top)) return std::optional<Periodicity1D>();
                              return std::optional<Periodicity1D>(Periodicity1D{top, 1});
                          },
                          [](const int_set::Multiples& mu) {
                              if (!bounded(mu.p)) return std::optional<Periodicity1D>();
                              return std::optional<Periodicity1D>(Periodicity1D{0, mu.p});
                          },
                          [](const int_set::Union& u) { return combine(periodicity(u.lhs), periodicity(u.rhs)); },
                          [](const int_set::Intersection& i) {
                              return combine(periodicity(i.lhs), periodicity(i.rhs));
                          },
                          [](const int_set::Complement& c) { return periodicity(c.inner); },
                      },
                      e.node().v);
}

std::optional<Periodicity2D> periodicity(const GaussSet& e) {
    using R = std::optional<Periodicity2D>;
    return std::visit(
        overloaded{
            [](const gauss::Empty&) { return R(Periodicity2D{}); },
            [](const gauss::FullQuadrant&) { return R(Periodicity2D{}); },
            [](const gauss::FinitePairs& f) {
                std::int64_t km = 0, kn = 0;
                for (const auto& p : f.points) {
                    km = std::max(km, p.m);
                    kn = std::max(kn, p.n);
                }
                if (!bounded(km) || !bounded(kn)) return R();
                return R(Periodicity2D{km, kn, 1, 1});
            },
            [](const gauss::Product& p) {
                auto h = periodicity(p.horizontal);
                auto v = periodicity(p.vertical);
                if (!h || !v) return R();
                return R(Periodicity2D{h->threshold, v->threshold, h->period, v->period});
            },
            [](const gauss::Lattice& l) {
                if (!bounded(l.p) || !bounded(l.q)) return R();
                return R(Periodicity2D{0, 0, l.p, l.q});
            },
            [](const gauss::Translate& t) {
                auto inner = periodicity(t.inner);
                if (!inner) return R();
                auto km = add(inner->km, t.m0);
                auto kn = add(inner->kn, t.n0);
                if (!km || !kn) return R();
                return R(Periodicity2D{*km, *kn, inner->lm, inner->ln});
            },
            [](const gauss::Dilate& d) {
                auto inner = periodicity(d.inner);
                if (!inner) return R();
                auto km = mul(inner->km, d.a);
                auto kn = mul(inner->kn, d.b);
                auto lm = mul(inner->lm, d.a);
                auto ln = mul(inner->ln, d.b);
                if (!km || !kn || !lm || !ln) return R();
                return R(Periodicity2D{*km, *kn, *lm, *ln});
            },
            [](const gauss::Union& u) { return combine(periodicity(u.lhs), periodicity(u.rhs)); },
            [](const gauss::Intersection& i) { return combine(periodicity(i.lhs), periodicity(i.rhs)); },
            [](const gauss::Complement& c) { return periodicity(c.inner); },
            [](const gauss::Difference& d) { return combine(periodicity(d.minuend), periodicity(d.subtrahend)); },
            [](const gauss::UpperQuadrant& u) {
                if (!bounded(u.m0) || !bounded(u.n0)) return R();
                return R(Periodicity2D{u.m0 - 1, u.n0 - 1, 1, 1});
            },
            [](const gauss::Delimited&) { return R(); },
        },
        e.node().v);
}

bool RowFamily::contains(Point pt) const {
    if (pt.m < 1 || pt.n < 1) return false;
    if (pt.m <= p || pt.n <= q) return false;
    if ((pt.m - p) % a != 0 || (pt.n - q) % b != 0) return false;
    const std::int64_t k = (pt.m - p) / a;
    const std::int64_t j = (pt.n - q) / b;
    if (k < k_lo || j < j_lo) return false;
    return j >= lower.ceil_at(k) && j <= upper.floor_at(k);
}

std::optional<RowFamily> row_family(const GaussSet& e) {
    if (const auto* d = e.as<gauss::Delimited>()) return RowFamily{1, 0, 1, 0, 1, 1, d->lower, d->upper};
    if (const auto* t = e.as<gauss::Translate>()) {
        auto f = row_family(t->inner);
        if (!f) return std::nullopt;
        auto p = add(f->p, t->m0);
        auto q = add(f->q, t->n0);
        if (!p || !q) return std::nullopt;
        f->p = *p;
        f->q = *q;
        return f;
    }
    if (const auto* dl = e.as<gauss::Dilate>()) {
        auto f = row_family(dl->inner);
        if (!f) return std::nullopt;
        auto a = mul(f->a, dl->a);
        auto p = mul(f->p, dl->a);
        auto b = mul(f->b, dl->b);
        auto q = mul(f->q, dl->b);
        if (!a || !p || !b || !q) return std::nullopt;
        f->a = *a;
        f->p = *p;
        f->b = *b;
        f->q = *q;
        return f;
    }
    if (const auto* i = e.as<gauss::Intersection>()) {
        const GaussSet* rest = nullptr;
        const gauss::UpperQuadrant* cut = nullptr;
        if ((cut = i->rhs.as<gauss::UpperQuadrant>())) rest = &i->lhs;
        else if ((cut = i->lhs.as<gauss::UpperQuadrant>())) rest = &i->rhs;
        if (!cut) {
            if (i->rhs.as<gauss::FullQuadrant>()) return row_family(i->lhs);
            if (i->lhs.as<gauss::FullQuadrant>()) return row_family(i->rhs);
            return std::nullopt;
        }
        auto f = row_family(*rest);
        if (!f) return std::nullopt;
        f->k_lo = std::max(f->k_lo, ceil_div(cut->m0 - f->p, f->a));
        f->j_lo = std::max(f->j_lo, ceil_div(cut->n0 - f->q, f->b));
        return f;
    }
    return std::nullopt;
}

}  // namespace gaussdens::detail
