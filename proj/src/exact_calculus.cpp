#include "gaussdens/exact_calculus.hpp"

#include "gaussdens/detail/structure.hpp"

#include <algorithm>
#include <cstdio>

namespace gaussdens {

namespace {

// Largest period product enumerated by the residue-class rule.
constexpr std::int64_t kMaxResidueCells = 1'000'000;

// Guards the distributive rewrites against pathological nesting.
constexpr int kMaxDepth = 64;

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void add_rule(std::vector<std::string>& trace, const std::string& rule) {
    if (std::find(trace.begin(), trace.end(), rule) == trace.end()) trace.push_back(rule);
}

void merge(std::vector<std::string>& into, const std::vector<std::string>& from) {
    for (const auto& r : from) add_rule(into, r);
}

std::string sym(const DensityValue& d) {
    if (d.kind == DensityValue::Kind::exact_rational) return to_string(*d.rational);
    return "(" + d.symbolic + ")";
}

DensityValue with_rule(DensityValue d, const std::string& rule) {
    if (d.known()) add_rule(d.trace, rule);
    return d;
}

// Known operands only; callers check for unknown first.
DensityValue linear(const std::vector<std::pair<int, DensityValue>>& terms, const std::string& rule) {
    std::vector<std::string> trace;
    bool all_rational = true;
    for (const auto& [sign, d] : terms) {
        merge(trace, d.trace);
        all_rational = all_rational && d.kind == DensityValue::Kind::exact_rational;
    }
    add_rule(trace, rule);
    if (all_rational) {
        Rational acc = 0;
        for (const auto& [sign, d] : terms) acc += sign * *d.rational;
        return DensityValue::exact(acc, std::move(trace));
    }
    double v = 0.0;
    std::string text;
    for (const auto& [sign, d] : terms) {
        v += sign * d.value;
        if (text.empty()) text = sign < 0 ? "-" + sym(d) : sym(d);
        else text += (sign < 0 ? " - " : " + ") + sym(d);
    }
    return DensityValue::real(v, text, std::move(trace));
}

DensityValue one_minus(const DensityValue& d, const std::string& rule) {
    return linear({{1, DensityValue::exact(1, {})}, {-1, d}}, rule);
}

DensityValue scaled(const DensityValue& d, const Rational& factor, const std::string& rule) {
    auto trace = d.trace;
    add_rule(trace, rule);
    if (d.kind == DensityValue::Kind::exact_rational) return DensityValue::exact(*d.rational * factor, std::move(trace));
    return DensityValue::real(d.value * to_double(factor), sym(d) + " * " + to_string(factor), std::move(trace));
}

bool any_unknown(std::initializer_list<const DensityValue*> ds) {
    return std::any_of(ds.begin(), ds.end(), [](const DensityValue* d) { return !d->known(); });
}

// 1/(1+a) as an exact rational when a is exact.
DensityValue reciprocal_one_plus(const Scalar& a) {
    if (a.is_exact()) return DensityValue::exact(Rational(1) / (1 + a.exact()), {});
    return DensityValue::real(1.0 / (1.0 + a.value()), "1/(1+" + a.str() + ")", {});
}

// ---------------------------------------------------------------------------
// one dimension
// ---------------------------------------------------------------------------

DensityValue residue_1d(const IntSet& e) {
    const auto per = detail::periodicity(e);
    if (!per || per->period > kMaxResidueCells) return DensityValue::unknown();
    std::int64_t count = 0;
    for (std::int64_t r = 1; r <= per->period; ++r) count += e.contains(per->threshold + r) ? 1 : 0;
    return DensityValue::exact(Rational(count, per->period), {"residue-classes"});
}

DensityValue derive_1d(const IntSet& e) {
    if (e.as<int_set::FullP>()) return DensityValue::exact(1, {"full-set"});
    if (e.as<int_set::Finite>()) return DensityValue::exact(0, {"finite-set"});
    if (const auto* m = e.as<int_set::Multiples>()) return DensityValue::exact(Rational(1, m->p), {"multiples-rule"});
    if (const auto* c = e.as<int_set::Complement>()) {
        const auto inner = derive_1d(c->inner);
        if (inner.known()) return one_minus(inner, "complement-rule");
    }
    if (const auto* u = e.as<int_set::Union>()) {
        const auto a = derive_1d(u->lhs);
        const auto b = derive_1d(u->rhs);
        const auto ab = derive_1d(normalize(IntSet::intersect(u->lhs, u->rhs)));
        if (!any_unknown({&a, &b, &ab})) return linear({{1, a}, {1, b}, {-1, ab}}, "inclusion-exclusion");
    }
    if (const auto* i = e.as<int_set::Intersection>()) {
        for (const auto& [x, y] : {std::pair{i->lhs, i->rhs}, std::pair{i->rhs, i->lhs}}) {
            if (const auto* c = y.as<int_set::Complement>()) {
                const auto dx = derive_1d(x);
                const auto dxy = derive_1d(normalize(IntSet::intersect(x, c->inner)));
                if (!any_unknown({&dx, &dxy})) return linear({{1, dx}, {-1, dxy}}, "difference-rule");
            }
        }
    }
    return residue_1d(e);
}

// ---------------------------------------------------------------------------
// axis sections
// ---------------------------------------------------------------------------

Finiteness int_finiteness(const IntSet& e) {
    if (e.as<int_set::Finite>()) return Finiteness::finite;
    if (e.as<int_set::FullP>() || e.as<int_set::Multiples>()) return Finiteness::infinite;
    if (const auto* u = e.as<int_set::Union>()) {
        const auto a = int_finiteness(u->lhs), b = int_finiteness(u->rhs);
        if (a == Finiteness::infinite || b == Finiteness::infinite) return Finiteness::infinite;
        if (a == Finiteness::finite && b == Finiteness::finite) return Finiteness::finite;
        return Finiteness::unknown;
    }
    if (const auto* i = e.as<int_set::Intersection>()) {
        if (int_finiteness(i->lhs) == Finiteness::finite || int_finiteness(i->rhs) == Finiteness::finite)
            return Finiteness::finite;
        return Finiteness::unknown;
    }
    if (const auto* c = e.as<int_set::Complement>()) {
        if (int_finiteness(c->inner) == Finiteness::finite) return Finiteness::infinite;
    }
    return Finiteness::unknown;
}

// True only when the set is known to have an element.
bool int_nonempty(const IntSet& e) {
    if (const auto* f = e.as<int_set::Finite>()) return !f->elements.empty();
    return int_finiteness(e) == Finiteness::infinite;
}

Finiteness either_infinite(Finiteness a, Finiteness b) {
    if (a == Finiteness::infinite || b == Finiteness::infinite) return Finiteness::infinite;
    if (a == Finiteness::finite && b == Finiteness::finite) return Finiteness::finite;
    return Finiteness::unknown;
}

Finiteness either_finite(Finiteness a, Finiteness b) {
    if (a == Finiteness::finite || b == Finiteness::finite) return Finiteness::finite;
    return Finiteness::unknown;
}

// ---------------------------------------------------------------------------
// two dimensions
// ---------------------------------------------------------------------------

DensityValue residue_2d(const GaussSet& e) {
    const auto per = detail::periodicity(e);
    if (!per) return DensityValue::unknown();
    if (per->lm > kMaxResidueCells || per->ln > kMaxResidueCells / per->lm) return DensityValue::unknown();
    std::int64_t count = 0;
    for (std::int64_t r = 1; r <= per->lm; ++r)
        for (std::int64_t t = 1; t <= per->ln; ++t) count += e.contains(per->km + r, per->kn + t) ? 1 : 0;
    return DensityValue::exact(Rational(count, per->lm * per->ln), {"residue-classes"});
}

DensityValue delimited_rule(const gauss::Delimited& d) {
    if (d.lower.kind() == BoundFn::Kind::exponential) return DensityValue::exact(0, {"exp-lower ⇒ 0"});
    const auto head = reciprocal_one_plus(d.lower.power_exponent());
    if (d.upper.kind() == BoundFn::Kind::exponential) return with_rule(head, "delimited-exponential-rule");
    const auto tail = reciprocal_one_plus(d.upper.power_exponent());
    return linear({{1, head}, {-1, tail}}, "delimited-power-rule");
}

DensityValue derive(const GaussSet& e, int depth);

DensityValue derive_normalized(const GaussSet& e, int depth) { return derive(normalize(e), depth + 1); }

DensityValue derive(const GaussSet& e, int depth) {
    if (depth > kMaxDepth) return DensityValue::unknown();

    if (e.as<gauss::Empty>()) return DensityValue::exact(0, {"empty-set"});
    if (e.as<gauss::FullQuadrant>()) return DensityValue::exact(1, {"full-quadrant"});
    if (e.as<gauss::FinitePairs>()) return DensityValue::exact(0, {"finite-set"});
    if (e.as<gauss::UpperQuadrant>()) return DensityValue::exact(1, {"upper-quadrant"});
    if (const auto* l = e.as<gauss::Lattice>())
        return DensityValue::exact(Rational(1, l->p) / l->q, {"product-rule", "multiples-rule"});
    if (const auto* p = e.as<gauss::Product>()) {
        const auto h = derive_1d(p->horizontal);
        const auto v = derive_1d(p->vertical);
        if (!any_unknown({&h, &v})) {
            std::vector<std::string> trace{"product-rule"};
            merge(trace, h.trace);
            merge(trace, v.trace);
            if (h.kind == DensityValue::Kind::exact_rational && v.kind == DensityValue::Kind::exact_rational)
                return DensityValue::exact(*h.rational * *v.rational, std::move(trace));
            return DensityValue::real(h.value * v.value, sym(h) + " * " + sym(v), std::move(trace));
        }
    }
    if (const auto* d = e.as<gauss::Delimited>()) return delimited_rule(*d);

    if (axis_section_finite(e).any_finite()) return DensityValue::exact(0, {"finite-axis-section"});

    if (const auto* t = e.as<gauss::Translate>()) return with_rule(derive(t->inner, depth + 1), "translation-invariance");
    if (const auto* d = e.as<gauss::Dilate>()) {
        const auto inner = derive(d->inner, depth + 1);
        if (inner.known()) return scaled(inner, Rational(1, d->a) / d->b, "dilation-rule");
    }
    if (const auto* c = e.as<gauss::Complement>()) {
        const auto inner = derive(c->inner, depth + 1);
        if (inner.known()) return one_minus(inner, "complement-rule");
    }
    if (const auto* d = e.as<gauss::Difference>()) {
        const auto b = derive(d->minuend, depth + 1);
        const auto ab = derive_normalized(GaussSet::intersect(d->minuend, d->subtrahend), depth);
        if (!any_unknown({&b, &ab})) return linear({{1, b}, {-1, ab}}, "difference-rule");
    }
    if (const auto* u = e.as<gauss::Union>()) {
        const auto a = derive(u->lhs, depth + 1);
        const auto b = derive(u->rhs, depth + 1);
        const auto ab = derive_normalized(GaussSet::intersect(u->lhs, u->rhs), depth);
        if (!any_unknown({&a, &b, &ab})) return linear({{1, a}, {1, b}, {-1, ab}}, "inclusion-exclusion");
    }
    if (const auto* i = e.as<gauss::Intersection>()) {
        for (const auto& [x, y] : {std::pair{i->lhs, i->rhs}, std::pair{i->rhs, i->lhs}}) {
            if (y.as<gauss::UpperQuadrant>()) {
                const auto dx = derive(x, depth + 1);
                if (dx.known()) return with_rule(dx, "heavy-tail");
            }
        }
        for (const auto& [x, y] : {std::pair{i->lhs, i->rhs}, std::pair{i->rhs, i->lhs}}) {
            if (const auto* c = y.as<gauss::Complement>()) {
                const auto dx = derive(x, depth + 1);
                const auto dxy = derive_normalized(GaussSet::intersect(x, c->inner), depth);
                if (!any_unknown({&dx, &dxy})) return linear({{1, dx}, {-1, dxy}}, "difference-rule");
            }
            if (const auto* u = y.as<gauss::Union>()) {
                const auto a = derive_normalized(GaussSet::intersect(x, u->lhs), depth);
                const auto b = derive_normalized(GaussSet::intersect(x, u->rhs), depth);
                const auto ab =
                    derive_normalized(GaussSet::intersect(x, GaussSet::intersect(u->lhs, u->rhs)), depth);
                if (!any_unknown({&a, &b, &ab})) return linear({{1, a}, {1, b}, {-1, ab}}, "distributivity");
            }
        }
    }
    return residue_2d(e);
}

}  // namespace

DensityValue DensityValue::exact(const Rational& r, std::vector<std::string> trace) {
    DensityValue d;
    d.kind = Kind::exact_rational;
    d.rational = r;
    d.value = to_double(r);
    d.trace = std::move(trace);
    return d;
}

DensityValue DensityValue::real(double v, std::string symbolic, std::vector<std::string> trace) {
    DensityValue d;
    d.kind = Kind::exact_real;
    d.value = v;
    d.symbolic = std::move(symbolic);
    d.trace = std::move(trace);
    return d;
}

DensityValue DensityValue::unknown(std::vector<std::string> trace) {
    DensityValue d;
    d.trace = std::move(trace);
    return d;
}

std::string DensityValue::kind_name() const {
    switch (kind) {
        case Kind::exact_rational: return "rational";
        case Kind::exact_real: return "real";
        case Kind::unknown: return "unknown";
    }
    return "unknown";
}

std::string DensityValue::str() const {
    switch (kind) {
        case Kind::exact_rational: return to_string(*rational);
        case Kind::exact_real: return format17(value) + " = " + symbolic;
        case Kind::unknown: return "unknown";
    }
    return "unknown";
}

std::string DensityValue::value_string() const { return known() ? format17(value) : std::string(); }

DensityValue exact_density_1d(const IntSet& e) {
    const IntSet n = normalize(e);
    DensityValue d = derive_1d(n);
    if (d.known() && !(n == e)) d.trace.insert(d.trace.begin(), "normalize");
    if (!d.known()) d.trace.clear();
    return d;
}

DensityValue exact_density(const GaussSet& e) {
    const GaussSet n = normalize(e);
    DensityValue d = derive(n, 0);
    if (d.known() && !(n == e) && std::find(d.trace.begin(), d.trace.end(), "normalize") == d.trace.end())
        d.trace.insert(d.trace.begin(), "normalize");
    if (!d.known()) d.trace.clear();
    return d;
}

std::string to_string(Finiteness f) {
    switch (f) {
        case Finiteness::finite: return "finite";
        case Finiteness::infinite: return "infinite";
        case Finiteness::unknown: return "unknown";
    }
    return "unknown";
}

AxisFiniteness axis_section_finite(const GaussSet& e) {
    using F = Finiteness;
    if (e.as<gauss::Empty>() || e.as<gauss::FinitePairs>()) return {F::finite, F::finite};
    if (e.as<gauss::FullQuadrant>() || e.as<gauss::Lattice>() || e.as<gauss::UpperQuadrant>() ||
        e.as<gauss::Delimited>())
        return {F::infinite, F::infinite};
    if (const auto* p = e.as<gauss::Product>()) {
        const F h = int_finiteness(p->horizontal);
        const F v = int_finiteness(p->vertical);
        // A section survives only if the other factor has an element.
        auto through = [](F own, const IntSet& other) {
            if (own == F::finite) return F::finite;
            if (own == F::infinite && int_nonempty(other)) return F::infinite;
            return F::unknown;
        };
        return {through(h, p->vertical), through(v, p->horizontal)};
    }
    if (const auto* t = e.as<gauss::Translate>()) return axis_section_finite(t->inner);
    if (const auto* d = e.as<gauss::Dilate>()) return axis_section_finite(d->inner);
    if (const auto* u = e.as<gauss::Union>()) {
        const auto a = axis_section_finite(u->lhs), b = axis_section_finite(u->rhs);
        return {either_infinite(a.horizontal, b.horizontal), either_infinite(a.vertical, b.vertical)};
    }
    if (const auto* i = e.as<gauss::Intersection>()) {
        const auto a = axis_section_finite(i->lhs), b = axis_section_finite(i->rhs);
        return {either_finite(a.horizontal, b.horizontal), either_finite(a.vertical, b.vertical)};
    }
    if (const auto* c = e.as<gauss::Complement>()) {
        // Everything outside a set with a finite axis section contains whole
        // columns (or rows) beyond it, so both sections are infinite.
        if (axis_section_finite(c->inner).any_finite()) return {F::infinite, F::infinite};
        return {F::unknown, F::unknown};
    }
    if (const auto* d = e.as<gauss::Difference>()) {
        const auto b = axis_section_finite(d->minuend);
        return {b.horizontal == F::finite ? F::finite : F::unknown, b.vertical == F::finite ? F::finite : F::unknown};
    }
    return {F::unknown, F::unknown};
}

}  // namespace gaussdens
