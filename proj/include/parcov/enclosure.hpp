#pragma once

// Certified double-precision enclosures: lo <= true value <= hi always.
// Outward rounding is implemented by widening each rounded-to-nearest
// result one ulp in both directions (the rounding error of a single
// IEEE operation is at most half an ulp, so one step suffices).

#include "parcov/rational.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace parcov {

inline double step_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double step_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

struct Enclosure {
    double lo = 0.0;
    double hi = 0.0;

    Enclosure() = default;
    Enclosure(double l, double h) : lo(l), hi(h) { assert(!(l > h)); }

    static Enclosure exact(double x) { return {x, x}; }
    static Enclosure zero() { return {0.0, 0.0}; }

    static Enclosure of(const Rational& q) {
        const double d = q.approx();  // mpq_get_d truncates toward zero, error < 1 ulp
        return {step_down(d), step_up(d)};
    }
    static Enclosure of(const mpz_class& z) {
        const double d = z.get_d();
        return {step_down(d), step_up(d)};
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Enclosure& o) const { return lo <= o.lo && o.hi <= hi; }

    // True only when the ordering is certain.
    bool certainly_lt(const Enclosure& o) const { return hi < o.lo; }

    // hi <= q resp. hi < q, compared exactly (doubles convert to mpq exactly).
    bool certainly_le(const Rational& q) const;
    bool certainly_lt(const Rational& q) const;

    friend Enclosure operator+(const Enclosure& a, const Enclosure& b) {
        return {step_down(a.lo + b.lo), step_up(a.hi + b.hi)};
    }
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b) {
        return {step_down(a.lo - b.hi), step_up(a.hi - b.lo)};
    }
    friend Enclosure operator-(const Enclosure& a) { return {-a.hi, -a.lo}; }
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b) {
        const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return {step_down(std::min(std::min(p1, p2), std::min(p3, p4))),
                step_up(std::max(std::max(p1, p2), std::max(p3, p4)))};
    }

    Enclosure& operator+=(const Enclosure& b) { *this = *this + b; return *this; }

    // Requires a nonnegative enclosure.
    Enclosure sqrt() const {
        assert(lo >= 0.0);
        return {step_down(std::sqrt(lo)), step_up(std::sqrt(hi))};
    }

    // Widens relatively by eps on both sides (used where an error model,
    // not interval arithmetic, bounds the computation).
    Enclosure inflate_rel(double eps) const {
        const double m = std::max(std::fabs(lo), std::fabs(hi));
        const double pad = m * eps;
        return {step_down(lo - pad), step_up(hi + pad)};
    }

    Enclosure hull(const Enclosure& o) const { return {std::min(lo, o.lo), std::max(hi, o.hi)}; }
};

inline bool Enclosure::certainly_le(const Rational& q) const {
    mpq_class h(hi);
    return cmp(h, q.raw()) <= 0;
}
inline bool Enclosure::certainly_lt(const Rational& q) const {
    mpq_class h(hi);
    return cmp(h, q.raw()) < 0;
}

}  // namespace parcov
