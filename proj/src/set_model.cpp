#include "gaussdens/set_model.hpp"

#include "gaussdens/errors.hpp"

#include <algorithm>
#include <type_traits>

namespace gaussdens {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <class N, class T>
std::shared_ptr<const N> make_node(T&& alt) {
    return std::make_shared<const N>(N{std::forward<T>(alt)});
}

void require_positive(std::int64_t v, const char* what) {
    if (v < 1) throw ValidationError(std::string(what) + " must be >= 1, got " + std::to_string(v));
}

void require_nonnegative(std::int64_t v, const char* what) {
    if (v < 0) throw ValidationError(std::string(what) + " must be >= 0, got " + std::to_string(v));
}

std::optional<std::int64_t> checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out) || out > (std::int64_t{1} << 62)) return std::nullopt;
    return out;
}

std::optional<std::int64_t> checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) return std::nullopt;
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// IntSet
// ---------------------------------------------------------------------------

IntSet IntSet::full() { return IntSet(make_node<IntNode>(int_set::FullP{})); }

IntSet IntSet::finite(std::vector<std::int64_t> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (!elements.empty()) require_positive(elements.front(), "finite set element");
    return IntSet(make_node<IntNode>(int_set::Finite{std::move(elements)}));
}

IntSet IntSet::multiples(std::int64_t p) {
    require_positive(p, "modulus");
    return IntSet(make_node<IntNode>(int_set::Multiples{p}));
}

IntSet IntSet::unite(IntSet a, IntSet b) {
    return IntSet(make_node<IntNode>(int_set::Union{std::move(a), std::move(b)}));
}

IntSet IntSet::intersect(IntSet a, IntSet b) {
    return IntSet(make_node<IntNode>(int_set::Intersection{std::move(a), std::move(b)}));
}

IntSet IntSet::complement(IntSet a) { return IntSet(make_node<IntNode>(int_set::Complement{std::move(a)})); }

bool IntSet::contains(std::int64_t n) const {
    if (n < 1) return false;
    return std::visit(overloaded{
                          [](const int_set::FullP&) { return true; },
                          [n](const int_set::Finite& f) {
                              return std::binary_search(f.elements.begin(), f.elements.end(), n);
                          },
                          [n](const int_set::Multiples& mu) { return n % mu.p == 0; },
                          [n](const int_set::Union& u) { return u.lhs.contains(n) || u.rhs.contains(n); },
                          [n](const int_set::Intersection& i) { return i.lhs.contains(n) && i.rhs.contains(n); },
                          [n](const int_set::Complement& c) { return !c.inner.contains(n); },
                      },
                      node_->v);
}

std::string IntSet::str() const {
    return std::visit(overloaded{
                          [](const int_set::FullP&) { return std::string("P"); },
                          [](const int_set::Finite& f) {
                              std::string out = "{";
                              for (std::size_t i = 0; i < f.elements.size(); ++i) {
                                  if (i) out += ",";
                                  out += std::to_string(f.elements[i]);
                              }
                              return out + "}";
                          },
                          [](const int_set::Multiples& mu) { return "mult(" + std::to_string(mu.p) + ")"; },
                          [](const int_set::Union& u) { return "union(" + u.lhs.str() + "," + u.rhs.str() + ")"; },
                          [](const int_set::Intersection& i) {
                              return "inter(" + i.lhs.str() + "," + i.rhs.str() + ")";
                          },
                          [](const int_set::Complement& c) { return "compl(" + c.inner.str() + ")"; },
                      },
                      node_->v);
}

bool operator==(const IntSet& a, const IntSet& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->v.index() != b.node_->v.index()) return false;
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            const T& rhs = std::get<T>(b.node_->v);
            if constexpr (std::is_same_v<T, int_set::FullP>) return true;
            else if constexpr (std::is_same_v<T, int_set::Finite>) return lhs.elements == rhs.elements;
            else if constexpr (std::is_same_v<T, int_set::Multiples>) return lhs.p == rhs.p;
            else if constexpr (std::is_same_v<T, int_set::Complement>) return lhs.inner == rhs.inner;
            else return lhs.lhs == rhs.lhs && lhs.rhs == rhs.rhs;
        },
        a.node_->v);
}

// ---------------------------------------------------------------------------
// GaussSet
// ---------------------------------------------------------------------------

GaussSet GaussSet::empty() { return GaussSet(make_node<GaussNode>(gauss::Empty{})); }

GaussSet GaussSet::full() { return GaussSet(make_node<GaussNode>(gauss::FullQuadrant{})); }

GaussSet GaussSet::finite(std::vector<Point> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() > kMaxFinitePairs)
        throw ValidationError("finite set has " + std::to_string(points.size()) + " points; limit is " +
                              std::to_string(kMaxFinitePairs));
    for (const Point& p : points) {
        require_positive(p.m, "finite point coordinate");
        require_positive(p.n, "finite point coordinate");
    }
    return GaussSet(make_node<GaussNode>(gauss::FinitePairs{std::move(points)}));
}

GaussSet GaussSet::product(IntSet horizontal, IntSet vertical) {
    return GaussSet(make_node<GaussNode>(gauss::Product{std::move(horizontal), std::move(vertical)}));
}

GaussSet GaussSet::lattice(std::int64_t p, std::int64_t q) {
    require_positive(p, "lattice modulus p");
    require_positive(q, "lattice modulus q");
    return GaussSet(make_node<GaussNode>(gauss::Lattice{p, q}));
}

GaussSet GaussSet::translate(GaussSet inner, std::int64_t m0, std::int64_t n0) {
    require_nonnegative(m0, "translation offset m0");
    require_nonnegative(n0, "translation offset n0");
    return GaussSet(make_node<GaussNode>(gauss::Translate{std::move(inner), m0, n0}));
}

GaussSet GaussSet::dilate(std::int64_t a, std::int64_t b, GaussSet inner) {
    require_positive(a, "dilation factor a");
    require_positive(b, "dilation factor b");
    return GaussSet(make_node<GaussNode>(gauss::Dilate{a, b, std::move(inner)}));
}

GaussSet GaussSet::unite(GaussSet a, GaussSet b) {
    return GaussSet(make_node<GaussNode>(gauss::Union{std::move(a), std::move(b)}));
}

GaussSet GaussSet::intersect(GaussSet a, GaussSet b) {
    return GaussSet(make_node<GaussNode>(gauss::Intersection{std::move(a), std::move(b)}));
}

GaussSet GaussSet::complement(GaussSet a) { return GaussSet(make_node<GaussNode>(gauss::Complement{std::move(a)})); }

GaussSet GaussSet::difference(GaussSet b, GaussSet a) {
    return GaussSet(make_node<GaussNode>(gauss::Difference{std::move(b), std::move(a)}));
}

GaussSet GaussSet::upper(std::int64_t m0, std::int64_t n0) {
    require_positive(m0, "upper quadrant corner m0");
    require_positive(n0, "upper quadrant corner n0");
    return GaussSet(make_node<GaussNode>(gauss::UpperQuadrant{m0, n0}));
}

GaussSet GaussSet::delimited(BoundFn lower, BoundFn upper) {
    check_domination(lower, upper);
    return GaussSet(make_node<GaussNode>(gauss::Delimited{std::move(lower), std::move(upper)}));
}

bool GaussSet::contains(Point pt) const {
    const std::int64_t m = pt.m;
    const std::int64_t n = pt.n;
    if (m < 1 || n < 1) return false;
    return std::visit(
        overloaded{
            [](const gauss::Empty&) { return false; },
            [](const gauss::FullQuadrant&) { return true; },
            [pt](const gauss::FinitePairs& f) { return std::binary_search(f.points.begin(), f.points.end(), pt); },
            [m, n](const gauss::Product& p) { return p.horizontal.contains(m) && p.vertical.contains(n); },
            [m, n](const gauss::Lattice& l) { return m % l.p == 0 && n % l.q == 0; },
            [m, n](const gauss::Translate& t) {
                return m > t.m0 && n > t.n0 && t.inner.contains(m - t.m0, n - t.n0);
            },
            [m, n](const gauss::Dilate& d) {
                return m % d.a == 0 && n % d.b == 0 && d.inner.contains(m / d.a, n / d.b);
            },
            [pt](const gauss::Union& u) { return u.lhs.contains(pt) || u.rhs.contains(pt); },
            [pt](const gauss::Intersection& i) { return i.lhs.contains(pt) && i.rhs.contains(pt); },
            [pt](const gauss::Complement& c) { return !c.inner.contains(pt); },
            [pt](const gauss::Difference& d) { return d.minuend.contains(pt) && !d.subtrahend.contains(pt); },
            [m, n](const gauss::UpperQuadrant& u) { return m >= u.m0 && n >= u.n0; },
            [m, n](const gauss::Delimited& d) { return n >= d.lower.ceil_at(m) && n <= d.upper.floor_at(m); },
        },
        node_->v);
}

std::string GaussSet::str() const {
    auto pair = [](std::int64_t a, std::int64_t b) { return std::to_string(a) + "," + std::to_string(b); };
    return std::visit(
        overloaded{
            [](const gauss::Empty&) { return std::string("empty"); },
            [](const gauss::FullQuadrant&) { return std::string("P2"); },
            [&](const gauss::FinitePairs& f) {
                std::string out = "finite{";
                for (std::size_t i = 0; i < f.points.size(); ++i) {
                    if (i) out += ",";
                    out += "(" + pair(f.points[i].m, f.points[i].n) + ")";
                }
                return out + "}";
            },
            [](const gauss::Product& p) {
                return "prod(" + p.horizontal.str() + "," + p.vertical.str() + ")";
            },
            [&](const gauss::Lattice& l) { return "lattice(" + pair(l.p, l.q) + ")"; },
            [&](const gauss::Translate& t) { return "translate(" + t.inner.str() + "," + pair(t.m0, t.n0) + ")"; },
            [&](const gauss::Dilate& d) { return "dilate(" + pair(d.a, d.b) + "," + d.inner.str() + ")"; },
            [](const gauss::Union& u) { return "union(" + u.lhs.str() + "," + u.rhs.str() + ")"; },
            [](const gauss::Intersection& i) { return "inter(" + i.lhs.str() + "," + i.rhs.str() + ")"; },
            [](const gauss::Complement& c) { return "compl(" + c.inner.str() + ")"; },
            [](const gauss::Difference& d) {
                return "diff(" + d.minuend.str() + "," + d.subtrahend.str() + ")";
            },
            [&](const gauss::UpperQuadrant& u) { return "upper(" + pair(u.m0, u.n0) + ")"; },
            [](const gauss::Delimited& d) { return "delim(" + d.lower.str() + "," + d.upper.str() + ")"; },
        },
        node_->v);
}

bool operator==(const GaussSet& a, const GaussSet& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->v.index() != b.node_->v.index()) return false;
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            const T& rhs = std::get<T>(b.node_->v);
            if constexpr (std::is_same_v<T, gauss::Empty> || std::is_same_v<T, gauss::FullQuadrant>) return true;
            else if constexpr (std::is_same_v<T, gauss::FinitePairs>) return lhs.points == rhs.points;
            else if constexpr (std::is_same_v<T, gauss::Product>)
                return lhs.horizontal == rhs.horizontal && lhs.vertical == rhs.vertical;
            else if constexpr (std::is_same_v<T, gauss::Lattice>) return lhs.p == rhs.p && lhs.q == rhs.q;
            else if constexpr (std::is_same_v<T, gauss::Translate>)
                return lhs.m0 == rhs.m0 && lhs.n0 == rhs.n0 && lhs.inner == rhs.inner;
            else if constexpr (std::is_same_v<T, gauss::Dilate>)
                return lhs.a == rhs.a && lhs.b == rhs.b && lhs.inner == rhs.inner;
            else if constexpr (std::is_same_v<T, gauss::Complement>) return lhs.inner == rhs.inner;
            else if constexpr (std::is_same_v<T, gauss::Difference>)
                return lhs.minuend == rhs.minuend && lhs.subtrahend == rhs.subtrahend;
            else if constexpr (std::is_same_v<T, gauss::UpperQuadrant>) return lhs.m0 == rhs.m0 && lhs.n0 == rhs.n0;
            else if constexpr (std::is_same_v<T, gauss::Delimited>)
                return lhs.lower == rhs.lower && lhs.upper == rhs.upper;
            else return lhs.lhs == rhs.lhs && lhs.rhs == rhs.rhs;
        },
        a.node_->v);
}

Section row_section(const GaussSet& e, std::int64_t n) { return Section(e, Section::Axis::row, n); }

Section col_section(const GaussSet& e, std::int64_t m) { return Section(e, Section::Axis::column, m); }

// ---------------------------------------------------------------------------
// normalize
// ---------------------------------------------------------------------------

namespace {

bool is_empty_finite(const IntSet& s) {
    const auto* f = s.as<int_set::Finite>();
    return f && f->elements.empty();
}

// FullP counts as Multiples(1) when forming lattices.
std::optional<std::int64_t> multiples_modulus(const IntSet& s) {
    if (const auto* mu = s.as<int_set::Multiples>()) return mu->p;
    if (s.as<int_set::FullP>()) return 1;
    return std::nullopt;
}

template <class Complement, class Set>
bool complementary(const Set& a, const Set& b) {
    if (const auto* c = a.template as<Complement>(); c && c->inner == b) return true;
    if (const auto* c = b.template as<Complement>(); c && c->inner == a) return true;
    return false;
}

struct ProductView {
    IntSet h, v;
};

std::optional<ProductView> as_product(const GaussSet& e) {
    if (const auto* p = e.as<gauss::Product>()) return ProductView{p->horizontal, p->vertical};
    if (const auto* l = e.as<gauss::Lattice>()) return ProductView{IntSet::multiples(l->p), IntSet::multiples(l->q)};
    return std::nullopt;
}

GaussSet make_product(const IntSet& h, const IntSet& v) {
    if (is_empty_finite(h) || is_empty_finite(v)) return GaussSet::empty();
    auto p = multiples_modulus(h);
    auto q = multiples_modulus(v);
    if (p && q) return GaussSet::lattice(*p, *q);
    return GaussSet::product(h, v);
}

IntSet normalize_union(const IntSet& a, const IntSet& b) {
    if (a.as<int_set::FullP>() || b.as<int_set::FullP>()) return IntSet::full();
    if (is_empty_finite(a)) return b;
    if (is_empty_finite(b)) return a;
    if (a == b) return a;
    if (complementary<int_set::Complement>(a, b)) return IntSet::full();
    const auto* fa = a.as<int_set::Finite>();
    const auto* fb = b.as<int_set::Finite>();
    if (fa && fb) {
        std::vector<std::int64_t> merged(fa->elements);
        merged.insert(merged.end(), fb->elements.begin(), fb->elements.end());
        return IntSet::finite(std::move(merged));
    }
    return IntSet::unite(a, b);
}

IntSet normalize_intersection(const IntSet& a, const IntSet& b) {
    if (a.as<int_set::FullP>()) return b;
    if (b.as<int_set::FullP>()) return a;
    if (is_empty_finite(a)) return a;
    if (is_empty_finite(b)) return b;
    if (a == b) return a;
    if (complementary<int_set::Complement>(a, b)) return IntSet::finite({});
    const auto* ma = a.as<int_set::Multiples>();
    const auto* mb = b.as<int_set::Multiples>();
    if (ma && mb) {
        if (auto l = checked_lcm(ma->p, mb->p)) return *l == 1 ? IntSet::full() : IntSet::multiples(*l);
    }
    // A finite operand is filtered by the other's membership.
    const auto* fa = a.as<int_set::Finite>();
    const auto* fb = b.as<int_set::Finite>();
    if (fa || fb) {
        const auto& elems = fa ? fa->elements : fb->elements;
        const IntSet& other = fa ? b : a;
        std::vector<std::int64_t> kept;
        for (auto x : elems)
            if (other.contains(x)) kept.push_back(x);
        return IntSet::finite(std::move(kept));
    }
    return IntSet::intersect(a, b);
}

}  // namespace

IntSet normalize(const IntSet& e) {
    return std::visit(overloaded{
                          [&](const int_set::FullP&) { return e; },
                          [&](const int_set::Finite&) { return e; },
                          [&](const int_set::Multiples& mu) { return mu.p == 1 ? IntSet::full() : e; },
                          [](const int_set::Union& u) { return normalize_union(normalize(u.lhs), normalize(u.rhs)); },
                          [](const int_set::Intersection& i) {
                              return normalize_intersection(normalize(i.lhs), normalize(i.rhs));
                          },
                          [](const int_set::Complement& c) {
                              IntSet inner = normalize(c.inner);
                              if (const auto* cc = inner.as<int_set::Complement>()) return cc->inner;
                              if (inner.as<int_set::FullP>()) return IntSet::finite({});
                              return IntSet::complement(inner);
                          },
                      },
                      e.node().v);
}

namespace {

GaussSet normalize_translate(const GaussSet& inner, std::int64_t m0, std::int64_t n0) {
    if (m0 == 0 && n0 == 0) return inner;
    if (const auto* t = inner.as<gauss::Translate>()) {
        auto mm = checked_add(t->m0, m0);
        auto nn = checked_add(t->n0, n0);
        if (mm && nn) return GaussSet::translate(t->inner, *mm, *nn);
    }
    return GaussSet::translate(inner, m0, n0);
}

GaussSet normalize_dilate(std::int64_t a, std::int64_t b, const GaussSet& inner) {
    if (a == 1 && b == 1) return inner;
    if (inner.as<gauss::Empty>()) return inner;
    if (inner.as<gauss::FullQuadrant>()) return GaussSet::lattice(a, b);
    if (const auto* l = inner.as<gauss::Lattice>()) {
        auto p = checked_mul(a, l->p);
        auto q = checked_mul(b, l->q);
        if (p && q) return GaussSet::lattice(*p, *q);
    }
    if (const auto* d = inner.as<gauss::Dilate>()) {
        auto aa = checked_mul(a, d->a);
        auto bb = checked_mul(b, d->b);
        if (aa && bb) return GaussSet::dilate(*aa, *bb, d->inner);
    }
    return GaussSet::dilate(a, b, inner);
}

GaussSet normalize_union(const GaussSet& a, const GaussSet& b) {
    if (a.as<gauss::FullQuadrant>() || b.as<gauss::FullQuadrant>()) return GaussSet::full();
    if (a.as<gauss::Empty>()) return b;
    if (b.as<gauss::Empty>()) return a;
    if (a == b) return a;
    if (complementary<gauss::Complement>(a, b)) return GaussSet::full();
    return GaussSet::unite(a, b);
}

GaussSet normalize_intersection(const GaussSet& a, const GaussSet& b) {
    if (a.as<gauss::Empty>()) return a;
    if (b.as<gauss::Empty>()) return b;
    if (a.as<gauss::FullQuadrant>()) return b;
    if (b.as<gauss::FullQuadrant>()) return a;
    if (a == b) return a;
    if (complementary<gauss::Complement>(a, b)) return GaussSet::empty();
    if (auto pa = as_product(a)) {
        if (auto pb = as_product(b)) {
            return make_product(normalize(IntSet::intersect(pa->h, pb->h)),
                                normalize(IntSet::intersect(pa->v, pb->v)));
        }
    }
    const auto* ua = a.as<gauss::UpperQuadrant>();
    const auto* ub = b.as<gauss::UpperQuadrant>();
    if (ua && ub) return GaussSet::upper(std::max(ua->m0, ub->m0), std::max(ua->n0, ub->n0));
    const auto* ta = a.as<gauss::Translate>();
    const auto* tb = b.as<gauss::Translate>();
    if (ta && tb && ta->m0 == tb->m0 && ta->n0 == tb->n0)
        return normalize_translate(normalize_intersection(ta->inner, tb->inner), ta->m0, ta->n0);
    const auto* da = a.as<gauss::Dilate>();
    const auto* db = b.as<gauss::Dilate>();
    if (da && db && da->a == db->a && da->b == db->b)
        return normalize_dilate(da->a, da->b, normalize_intersection(da->inner, db->inner));
    return GaussSet::intersect(a, b);
}

}  // namespace

GaussSet normalize(const GaussSet& e) {
    return std::visit(
        overloaded{
            [&](const gauss::Empty&) { return e; },
            [&](const gauss::FullQuadrant&) { return e; },
            [&](const gauss::FinitePairs& f) { return f.points.empty() ? GaussSet::empty() : e; },
            [](const gauss::Product& p) { return make_product(normalize(p.horizontal), normalize(p.vertical)); },
            [&](const gauss::Lattice&) { return e; },
            [](const gauss::Translate& t) { return normalize_translate(normalize(t.inner), t.m0, t.n0); },
            [](const gauss::Dilate& d) { return normalize_dilate(d.a, d.b, normalize(d.inner)); },
            [](const gauss::Union& u) { return normalize_union(normalize(u.lhs), normalize(u.rhs)); },
            [](const gauss::Intersection& i) { return normalize_intersection(normalize(i.lhs), normalize(i.rhs)); },
            [](const gauss::Complement& c) {
                GaussSet inner = normalize(c.inner);
                if (const auto* cc = inner.as<gauss::Complement>()) return cc->inner;
                if (inner.as<gauss::Empty>()) return GaussSet::full();
                if (inner.as<gauss::FullQuadrant>()) return GaussSet::empty();
                return GaussSet::complement(inner);
            },
            [](const gauss::Difference& d) {
                GaussSet b = normalize(d.minuend);
                GaussSet a = normalize(d.subtrahend);
                if (a.as<gauss::Empty>()) return b;
                if (b.as<gauss::Empty>() || a.as<gauss::FullQuadrant>() || a == b) return GaussSet::empty();
                return GaussSet::difference(b, a);
            },
            [&](const gauss::UpperQuadrant& u) { return u.m0 == 1 && u.n0 == 1 ? GaussSet::full() : e; },
            [&](const gauss::Delimited&) { return e; },
        },
        e.node().v);
}

}  // namespace gaussdens
