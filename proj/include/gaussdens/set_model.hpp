#pragma once

/**
 * @file set_model.hpp
 * @brief Expression language for sets of Gaussian integers in the open first quadrant.
 *
 * A Gaussian integer m + in is the pair (m, n) with m, n >= 1. Sets are
 * immutable expression trees: IntSet describes subsets of the positive
 * integers (factors of Cartesian products), GaussSet describes subsets of
 * P^2 closed under union, intersection, complement, difference, translation
 * and dilation. Every expression has a total membership predicate.
 *
 * Trees share structure through shared_ptr<const ...>; copying an
 * expression is cheap and all operations are safe to call concurrently.
 */

#include "gaussdens/bound_fn.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace gaussdens {

struct Point {
    std::int64_t m = 1;
    std::int64_t n = 1;
    friend auto operator<=>(const Point&, const Point&) = default;
};

/// Largest FinitePairs set accepted; anything bigger has density 0 anyway.
inline constexpr std::size_t kMaxFinitePairs = 1'000'000;

struct IntNode;

/// Subset of the positive integers.
class IntSet {
public:
    static IntSet full();
    /// Sorted and deduplicated; elements must be >= 1.
    static IntSet finite(std::vector<std::int64_t> elements);
    /// Multiples of p, p >= 1.
    static IntSet multiples(std::int64_t p);
    static IntSet unite(IntSet a, IntSet b);
    static IntSet intersect(IntSet a, IntSet b);
    static IntSet complement(IntSet a);

    const IntNode& node() const { return *node_; }
    template <class T>
    const T* as() const;

    bool contains(std::int64_t n) const;

    /// DSL spelling used inside prod(...): P, mult(p), {a,b}, union/inter/compl.
    std::string str() const;

    friend bool operator==(const IntSet& a, const IntSet& b);

private:
    explicit IntSet(std::shared_ptr<const IntNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const IntNode> node_;
};

namespace int_set {
struct FullP {};
struct Finite {
    std::vector<std::int64_t> elements;  // strictly increasing, >= 1
};
struct Multiples {
    std::int64_t p;
};
struct Union {
    IntSet lhs, rhs;
};
struct Intersection {
    IntSet lhs, rhs;
};
struct Complement {
    IntSet inner;
};
}  // namespace int_set

struct IntNode {
    std::variant<int_set::FullP, int_set::Finite, int_set::Multiples, int_set::Union,
                 int_set::Intersection, int_set::Complement>
        v;
};

template <class T>
const T* IntSet::as() const {
    return std::get_if<T>(&node_->v);
}

struct GaussNode;

/// Subset of P^2.
class GaussSet {
public:
    static GaussSet empty();
    static GaussSet full();
    /// Sorted and deduplicated; coordinates >= 1, at most kMaxFinitePairs points.
    static GaussSet finite(std::vector<Point> points);
    static GaussSet product(IntSet horizontal, IntSet vertical);
    /// M_(p,q): multiples of p times multiples of q.
    static GaussSet lattice(std::int64_t p, std::int64_t q);
    /// inner shifted by (m0, n0), both >= 0.
    static GaussSet translate(GaussSet inner, std::int64_t m0, std::int64_t n0);
    /// inner scaled coordinate-wise by (a, b), both >= 1.
    static GaussSet dilate(std::int64_t a, std::int64_t b, GaussSet inner);
    static GaussSet unite(GaussSet a, GaussSet b);
    static GaussSet intersect(GaussSet a, GaussSet b);
    /// Complement relative to P^2.
    static GaussSet complement(GaussSet a);
    /// b minus a.
    static GaussSet difference(GaussSet b, GaussSet a);
    /// {(m,n) : m >= m0, n >= n0}, m0, n0 >= 1.
    static GaussSet upper(std::int64_t m0, std::int64_t n0);
    /// {(m,n) : lower(m) <= n <= upper(m)}; throws ValidationError unless upper >= lower >= 1.
    static GaussSet delimited(BoundFn lower, BoundFn upper);

    const GaussNode& node() const { return *node_; }
    template <class T>
    const T* as() const;

    bool contains(Point p) const;
    bool contains(std::int64_t m, std::int64_t n) const { return contains(Point{m, n}); }

    /// DSL spelling; parse(str()) denotes the same set.
    std::string str() const;

    friend bool operator==(const GaussSet& a, const GaussSet& b);

private:
    explicit GaussSet(std::shared_ptr<const GaussNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const GaussNode> node_;
};

namespace gauss {
struct Empty {};
struct FullQuadrant {};
struct FinitePairs {
    std::vector<Point> points;  // lexicographically increasing
};
struct Product {
    IntSet horizontal, vertical;
};
struct Lattice {
    std::int64_t p, q;
};
struct Translate {
    GaussSet inner;
    std::int64_t m0, n0;
};
struct Dilate {
    std::int64_t a, b;
    GaussSet inner;
};
struct Union {
    GaussSet lhs, rhs;
};
struct Intersection {
    GaussSet lhs, rhs;
};
struct Complement {
    GaussSet inner;
};
struct Difference {
    GaussSet minuend, subtrahend;
};
struct UpperQuadrant {
    std::int64_t m0, n0;
};
struct Delimited {
    BoundFn lower, upper;
};
}  // namespace gauss

struct GaussNode {
    std::variant<gauss::Empty, gauss::FullQuadrant, gauss::FinitePairs, gauss::Product,
                 gauss::Lattice, gauss::Translate, gauss::Dilate, gauss::Union,
                 gauss::Intersection, gauss::Complement, gauss::Difference,
                 gauss::UpperQuadrant, gauss::Delimited>
        v;
};

template <class T>
const T* GaussSet::as() const {
    return std::get_if<T>(&node_->v);
}

/// A row or column of a set with the other coordinate fixed.
class Section {
public:
    enum class Axis { row, column };

    Section(GaussSet set, Axis axis, std::int64_t fixed)
        : set_(std::move(set)), axis_(axis), fixed_(fixed) {}

    /// Membership of the free coordinate.
    bool operator()(std::int64_t x) const {
        return axis_ == Axis::row ? set_.contains(x, fixed_) : set_.contains(fixed_, x);
    }

    Axis axis() const noexcept { return axis_; }
    std::int64_t fixed() const noexcept { return fixed_; }

private:
    GaussSet set_;
    Axis axis_;
    std::int64_t fixed_;
};

/// Row A_n = {m : (m, n) in e}.
Section row_section(const GaussSet& e, std::int64_t n);
/// Column A^m = {n : (m, n) in e}.
Section col_section(const GaussSet& e, std::int64_t m);

/// Membership-preserving rewrites: lattice dilation and lcm intersection,
/// product-of-multiples to lattice, Multiples(1) to P, nested translate and
/// dilate folding, double complement, and a few identity/annihilator rules.
GaussSet normalize(const GaussSet& e);
IntSet normalize(const IntSet& e);

}  // namespace gaussdens
