#include "parcov/quad_poly.hpp"

#include <cassert>

namespace parcov {

RootData classify(const IntegerQuadratic& f) {
    RootData r;
    r.discriminant = discriminant(f);
    const Rational two_a2(2 * f.a2);
    const Rational mid = Rational(-f.a1) / two_a2;
    if (r.discriminant > 0) {
        r.kind = RootKind::distinct_real;
        const Rational d(r.discriminant);
        const Rational inv = Rational(1) / two_a2;
        r.alpha1 = QuadIrr(mid, -inv, d);
        r.alpha2 = QuadIrr(mid, inv, d);
        r.deriv_abs = QuadIrr(Rational(0), Rational(1), d);
    } else if (r.discriminant == 0) {
        r.kind = RootKind::repeated;
        r.alpha1 = QuadIrr(mid);
        r.alpha2 = QuadIrr(mid);
        r.deriv_abs = QuadIrr(Rational(0));
        // F = k(ux - v)^2 from the reduced root v/u: k = a2 / u^2.
        RepeatedParams p;
        assert(mid.den().fits_slong_p() && mid.num().fits_slong_p());
        p.u = mid.den().get_si();
        p.v = mid.num().get_si();
        assert(p.u > 0);
        assert(f.a2 % (p.u * p.u) == 0);
        p.k = f.a2 / (p.u * p.u);
        assert(p.k * p.u * p.u == f.a2);
        assert(-2 * p.k * p.u * p.v == f.a1);
        assert(p.k * p.v * p.v == f.a0);
        r.repeated = p;
    } else {
        r.kind = RootKind::complex_pair;
    }
    return r;
}

std::uint64_t block_pair_count(int n) {
    // Pairs with max(a2,|a1|) < 2^{n+1} minus those with max < 2^n.
    const auto below = [](std::uint64_t b) {  // 1 <= a2 < b, |a1| < b
        return (b - 1) * (2 * b - 1);
    };
    return below(std::uint64_t{1} << (n + 1)) - below(std::uint64_t{1} << n);
}

std::uint64_t block_triple_count(int n) {
    return block_pair_count(n) * ((std::uint64_t{1} << (n + 3)) - 1);
}

bool deriv_bound_check(const IntegerQuadratic& f, int n) {
    const std::int64_t d = discriminant(f);
    return d >= 1 && d <= std::int64_t{100} * (std::int64_t{1} << (2 * n));
}

}  // namespace parcov
