#pragma once

// Minimal double-double arithmetic (~106-bit significand) for box-index
// computations where 1/delta exceeds double resolution. Standard
// error-free transformations; products use std::fma.

#include <cmath>
#include <cstdint>

namespace parcov {

struct DD {
    double hi = 0.0, lo = 0.0;
};

inline DD quick_two_sum(double a, double b) {  // requires |a| >= |b|
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double v = s - a;
    return {s, (a - (s - v)) + (b - v)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_add_d(DD a, double b) {
    DD s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_mul_d(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div_d(double a, double b) {
    const double q0 = a / b;
    const DD r = two_prod(q0, b);
    const double q1 = ((a - r.hi) - r.lo) / b;
    return quick_two_sum(q0, q1);
}

inline DD dd_div(DD a, DD b) {
    const double q0 = a.hi / b.hi;
    DD r = dd_mul_d(b, q0);
    DD d = dd_add(a, DD{-r.hi, -r.lo});
    const double q1 = d.hi / b.hi;
    return quick_two_sum(q0, q1);
}

inline DD dd_sqrt(DD a) {
    if (a.hi <= 0.0) return {0.0, 0.0};
    const double s0 = std::sqrt(a.hi);
    const DD s0sq = two_prod(s0, s0);
    const double e = ((a.hi - s0sq.hi) - s0sq.lo) + a.lo;
    return quick_two_sum(s0, e / (2.0 * s0));
}

inline __int128 dd_floor(DD a) {
    const double f = std::floor(a.hi);
    const double d = a.hi - f;  // exact
    const double s = d + a.lo;
    __int128 r = static_cast<__int128>(f);
    if (s < 0.0) r -= 1;
    else if (s >= 1.0) r += 1;
    return r;
}

}  // namespace parcov
