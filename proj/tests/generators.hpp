#pragma once

// Seeded random expression generators for the property tests.

#include "gaussdens/errors.hpp"
#include "gaussdens/set_model.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace gaussdens::testgen {

class ExprGen {
public:
    explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t pick(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }

    IntSet int_set(int depth) {
        const int k = static_cast<int>(pick(0, depth > 0 ? 5 : 2));
        switch (k) {
            case 0: return IntSet::full();
            case 1: return IntSet::multiples(pick(1, 6));
            case 2: {
                std::vector<std::int64_t> el;
                const auto n = pick(1, 4);
                for (int i = 0; i < n; ++i) el.push_back(pick(1, 40));
                return IntSet::finite(el);
            }
            case 3: return IntSet::unite(int_set(depth - 1), int_set(depth - 1));
            case 4: return IntSet::intersect(int_set(depth - 1), int_set(depth - 1));
            default: return IntSet::complement(int_set(depth - 1));
        }
    }

    BoundFn bound(bool lower) {
        static const Rational halves[] = {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2),
                                          Rational(3)};
        const auto k = pick(0, 2);
        if (k == 0) return BoundFn::constant(lower ? pick(1, 3) : pick(1, 40));
        if (k == 1) return BoundFn::power(pick(1, 3), halves[pick(lower ? 1 : 2, 5)]);
        return BoundFn::exponential(pick(1, 2), Rational(pick(3, 6), 2));
    }

    GaussSet delimited() {
        for (;;) {
            try {
                return GaussSet::delimited(bound(true), bound(false));
            } catch (const ValidationError&) {
            }
        }
    }

    GaussSet leaf() {
        switch (pick(0, 7)) {
            case 0: return GaussSet::full();
            case 1: return GaussSet::empty();
            case 2: return GaussSet::lattice(pick(1, 6), pick(1, 6));
            case 3: return GaussSet::upper(pick(1, 9), pick(1, 9));
            case 4: {
                std::vector<Point> pts;
                const auto n = pick(1, 5);
                for (int i = 0; i < n; ++i) pts.push_back({pick(1, 64), pick(1, 64)});
                return GaussSet::finite(pts);
            }
            case 5: return GaussSet::product(int_set(2), int_set(2));
            default: return delimited();
        }
    }

    GaussSet expr(int depth) {
        if (depth <= 0) return leaf();
        switch (pick(0, 8)) {
            case 0: return GaussSet::translate(expr(depth - 1), pick(0, 5), pick(0, 5));
            case 1: return GaussSet::dilate(pick(1, 3), pick(1, 3), expr(depth - 1));
            case 2: return GaussSet::unite(expr(depth - 1), expr(depth - 1));
            case 3: return GaussSet::intersect(expr(depth - 1), expr(depth - 1));
            case 4: return GaussSet::complement(expr(depth - 1));
            case 5: return GaussSet::difference(expr(depth - 1), expr(depth - 1));
            default: return leaf();
        }
    }

private:
    std::mt19937_64 rng_;
};

inline bool same_members(const GaussSet& a, const GaussSet& b, std::int64_t side = 64) {
    for (std::int64_t m = 1; m <= side; ++m)
        for (std::int64_t n = 1; n <= side; ++n)
            if (a.contains(m, n) != b.contains(m, n)) return false;
    return true;
}

}  // namespace gaussdens::testgen
