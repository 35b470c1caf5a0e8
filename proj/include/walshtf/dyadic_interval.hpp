#pragma once

// Half-open dyadic interval [n*2^j, (n+1)*2^j).  Two dyadic intervals are
// either nested or disjoint; there is no partial overlap.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>

#include "walshtf/exact_scalar.hpp"

namespace walshtf {

// floor(n / 2^d) without undefined behaviour for large d.
inline long floor_shift(long n, long d) {
    if (d <= 0) return n;
    if (d >= 63) return n >= 0 ? 0 : -1;
    return n >> d;
}

struct DyadicInterval {
    long scale = 0;  // j
    long index = 0;  // n

    friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;

    ExactScalar measure() const { return ExactScalar::pow2(scale); }

    mpq_class measure_q() const { return pow2_q(scale); }

    mpq_class lower_q() const { return mpq_class(index) * pow2_q(scale); }

    mpq_class upper_q() const { return mpq_class(index + 1) * pow2_q(scale); }

    DyadicInterval parent() const { return {scale + 1, floor_shift(index, 1)}; }

    // half = 0 for the left child, 1 for the right child.
    DyadicInterval child(int half) const { return {scale - 1, 2 * index + half}; }

    // The ancestor at scale s >= this->scale containing this interval.
    DyadicInterval ancestor_at(long s) const {
        return {s, floor_shift(index, s - scale)};
    }

    static mpq_class pow2_q(long e) {
        mpz_class p(1);
        p <<= static_cast<unsigned long>(e >= 0 ? e : -e);
        mpq_class q = e >= 0 ? mpq_class(p) : mpq_class(1) / mpq_class(p);
        q.canonicalize();
        return q;
    }

    friend std::ostream& operator<<(std::ostream& os, const DyadicInterval& I) {
        return os << "[" << I.index << "*2^" << I.scale << ", " << (I.index + 1)
                  << "*2^" << I.scale << ")";
    }
};

// Strict ordering for use as a map key; unrelated to containment.
struct IntervalLess {
    bool operator()(const DyadicInterval& a, const DyadicInterval& b) const {
        if (a.scale != b.scale) return a.scale < b.scale;
        return a.index < b.index;
    }
};

enum class IntervalRelation {
    equal,
    first_inside_second,  // first is a proper subset of second
    second_inside_first,
    disjoint,
};

inline IntervalRelation interval_relate(const DyadicInterval& I,
                                        const DyadicInterval& J) {
    if (I.scale == J.scale)
        return I.index == J.index ? IntervalRelation::equal
                                  : IntervalRelation::disjoint;
    if (I.scale < J.scale)
        return floor_shift(I.index, J.scale - I.scale) == J.index
                   ? IntervalRelation::first_inside_second
                   : IntervalRelation::disjoint;
    return floor_shift(J.index, I.scale - J.scale) == I.index
               ? IntervalRelation::second_inside_first
               : IntervalRelation::disjoint;
}

// I subset of J, allowing equality.
inline bool interval_subset(const DyadicInterval& I, const DyadicInterval& J) {
    auto r = interval_relate(I, J);
    return r == IntervalRelation::equal || r == IntervalRelation::first_inside_second;
}

inline bool interval_proper_subset(const DyadicInterval& I, const DyadicInterval& J) {
    return interval_relate(I, J) == IntervalRelation::first_inside_second;
}

inline bool interval_disjoint(const DyadicInterval& I, const DyadicInterval& J) {
    return interval_relate(I, J) == IntervalRelation::disjoint;
}

// Smallest dyadic interval containing both I and J, if one exists within
// max_span scale steps above the finer of the two (positions on opposite
// sides of zero never share an ancestor).
inline std::optional<DyadicInterval> common_ancestor(DyadicInterval I,
                                                     DyadicInterval J,
                                                     long max_span = 128) {
    if (I.scale > J.scale) std::swap(I, J);
    DyadicInterval a = I.ancestor_at(J.scale);
    DyadicInterval b = J;
    for (long step = 0; step <= max_span; ++step) {
        if (a.index == b.index) return a;
        a = a.parent();
        b = b.parent();
    }
    return std::nullopt;
}

}  // namespace walshtf
