#pragma once

#include <algorithm>

#include "errors.hpp"
#include "rational.hpp"

namespace diophant {

// Closed interval with exact rational endpoints. "Dyadic" refers to the
// refinement discipline (widths driven below 2^-k), not the endpoint type:
// some enclosures carry exact non-dyadic endpoints on purpose.
struct DyadicInterval {
    ExactRational lo;
    ExactRational hi;

    DyadicInterval() : lo(0), hi(0) {}
    DyadicInterval(ExactRational l, ExactRational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw InvalidArgument("interval with lo > hi");
    }

    static DyadicInterval point(const ExactRational& v) { return {v, v}; }

    ExactRational width() const { return hi - lo; }
    ExactRational mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const ExactRational& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }

    // sign is decided only when zero is excluded
    bool certainly_positive() const { return lo > 0; }
    bool certainly_negative() const { return hi < 0; }
};

inline DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

inline DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

inline DyadicInterval operator-(const DyadicInterval& a) {
    return {-a.hi, -a.lo};
}

inline DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b) {
    ExactRational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

inline DyadicInterval scale(const DyadicInterval& a, const ExactRational& c) {
    if (c >= 0) return {a.lo * c, a.hi * c};
    return {a.hi * c, a.lo * c};
}

inline DyadicInterval shift(const DyadicInterval& a, const ExactRational& c) {
    return {a.lo + c, a.hi + c};
}

inline DyadicInterval abs_of(const DyadicInterval& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return -a;
    return {ExactRational(0), std::max(ExactRational(-a.lo), a.hi)};
}

inline DyadicInterval pow_nonneg(const DyadicInterval& a, unsigned long e) {
    if (a.lo < 0) throw InvalidArgument("pow_nonneg: negative endpoint");
    return {pow_rat(a.lo, e), pow_rat(a.hi, e)};
}

// a / b where b is strictly positive
inline DyadicInterval div_pos(const DyadicInterval& a, const DyadicInterval& b) {
    if (b.lo <= 0) throw InvalidArgument("div_pos: divisor not certainly positive");
    ExactRational p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

// Smallest enclosing interval with endpoints on the grid Z/2^m.
inline DyadicInterval outward_round(const DyadicInterval& a, unsigned long m) {
    BigInt two_m = pow2(m);
    BigInt lo_n = floor_of(a.lo * two_m);
    BigInt hi_n = ceil_of(a.hi * two_m);
    return {make_rational(lo_n, two_m), make_rational(hi_n, two_m)};
}

inline DyadicInterval intersect(const DyadicInterval& a, const DyadicInterval& b) {
    ExactRational l = std::max(a.lo, b.lo), h = std::min(a.hi, b.hi);
    if (l > h) throw InvalidArgument("intersect: disjoint intervals");
    return {l, h};
}

inline bool overlaps(const DyadicInterval& a, const DyadicInterval& b) {
    return a.lo <= b.hi && b.lo <= a.hi;
}

} // namespace diophant
