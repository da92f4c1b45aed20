#include "parcov/approx_sets.hpp"

#include <cassert>

namespace parcov {

namespace {

Rational exact_psi_or_throw(const PsiSpec& psi, int n) {
    if (auto t = psi_exact_pow2(psi, n)) return *t;
    throw DomainError("psi(2^" + std::to_string(n) +
                      ") is not exactly representable; this operation needs an exact threshold");
}

}  // namespace

std::vector<QiInterval> delta_components(const IntegerQuadratic& f, const Rational& t,
                                         bool exclude_midpoint) {
    if (t.sign() <= 0) throw DomainError("delta_components: threshold must be positive");
    const std::int64_t disc = discriminant(f);
    const Rational four_a2_t = Rational(4 * f.a2) * t;
    const Rational d_out = Rational(disc) + four_a2_t;  // roots of F = +t
    if (d_out.sign() <= 0) return {};                   // F - t >= 0 everywhere
    const Rational d_in = Rational(disc) - four_a2_t;   // roots of F = -t
    const Rational mid = Rational(-f.a1) / Rational(2 * f.a2);
    const Rational inv = Rational(1) / Rational(2 * f.a2);

    const QuadIrr l_out(mid, -inv, d_out);
    const QuadIrr r_out(mid, inv, d_out);
    std::vector<QiInterval> comps;
    if (d_in.sign() > 0) {
        comps.push_back({l_out, QuadIrr(mid, -inv, d_in), true, true});
        comps.push_back({QuadIrr(mid, inv, d_in), r_out, true, true});
    } else if (d_in.sign() == 0) {
        // F(mid) = -t exactly: the vertex is excluded from the open set.
        comps.push_back({l_out, QuadIrr(mid), true, true});
        comps.push_back({QuadIrr(mid), r_out, true, true});
    } else if (exclude_midpoint) {
        comps.push_back({l_out, QuadIrr(mid), true, true});
        comps.push_back({QuadIrr(mid), r_out, true, true});
    } else {
        comps.push_back({l_out, r_out, true, true});
    }
    return comps;
}

IntervalUnion delta_set(const IntegerQuadratic& f, const Rational& t) {
    std::vector<QiInterval> comps = delta_components(f, t, false);
    for (auto& c : comps) c = c.clipped_unit();
    return IntervalUnion::from_parts(std::move(comps));
}

std::pair<IntervalUnion, IntervalUnion> split_delta(const IntegerQuadratic& f, const Rational& t) {
    if (discriminant(f) <= 0)
        throw DomainError("split_delta: polynomial must have distinct real roots");
    const Rational mid = Rational(-f.a1) / Rational(2 * f.a2);
    std::vector<QiInterval> comps = delta_components(f, t, true);
    std::vector<QiInterval> left, right;
    for (auto& c : comps) {
        const QiInterval cc = c.clipped_unit();
        if (cc.empty()) continue;
        if (c.hi.compare(mid) != std::strong_ordering::greater) {
            left.push_back(cc);
        } else {
            right.push_back(cc);
        }
    }
    return {IntervalUnion::from_parts(std::move(left)), IntervalUnion::from_parts(std::move(right))};
}

bool width_bound_check(const IntegerQuadratic& f, const Rational& t) {
    const std::int64_t disc = discriminant(f);
    if (disc <= 0) throw DomainError("width_bound_check: needs distinct real roots");
    auto [d1, d2] = split_delta(f, t);
    const Rational d(disc);
    const Rational mid = Rational(-f.a1) / Rational(2 * f.a2);
    const Rational inv = Rational(1) / Rational(2 * f.a2);
    const Rational w = Rational(2) * t / d;  // 2t/sqrt(D) = (2t/D)*sqrt(D)
    // Bands (alpha_i - 2t/sqrt(D), alpha_i + 2t/sqrt(D)), open.
    const IntervalUnion band1 = IntervalUnion::from_parts(
        {{QuadIrr(mid, -inv - w, d), QuadIrr(mid, -inv + w, d), true, true}});
    const IntervalUnion band2 = IntervalUnion::from_parts(
        {{QuadIrr(mid, inv - w, d), QuadIrr(mid, inv + w, d), true, true}});
    return band1.contains(d1) && band2.contains(d2);
}

std::pair<IntervalUnion, IntervalUnion> sigma_sets(const IntegerQuadratic& f, int n,
                                                   const PsiSpec& psi) {
    const std::int64_t disc = discriminant(f);
    if (disc <= 0) throw DomainError("sigma_sets: needs distinct real roots");
    const Rational t = exact_psi_or_throw(psi, n);
    const Rational d(disc);
    const Rational mid = Rational(-f.a1) / Rational(2 * f.a2);
    const Rational inv = Rational(1) / Rational(2 * f.a2);

    const Rational rho1 = t / (Rational(20) * Rational::pow2(n));
    const QuadIrr alpha1(mid, -inv, d);
    const QiInterval s1{alpha1.sub_rational(rho1), alpha1.add_rational(rho1), false, false};
    // alpha_1 ± t/(2 sqrt(D)) = mid + (-inv ± t/(2D)) sqrt(D).
    const Rational rho2_coeff = t / (Rational(2) * d);
    const QiInterval s2{QuadIrr(mid, -inv - rho2_coeff, d), QuadIrr(mid, -inv + rho2_coeff, d),
                        false, false};
    return {IntervalUnion::from_parts({s1.clipped_unit()}),
            IntervalUnion::from_parts({s2.clipped_unit()})};
}

bool inclusion_check(const IntegerQuadratic& f, int n, const PsiSpec& psi) {
    const Rational t = exact_psi_or_throw(psi, n);
    auto [s1, s2] = sigma_sets(f, n, psi);
    const IntervalUnion delta1 = split_delta(f, t).first;
    return s2.contains(s1) && delta1.contains(s2);
}

A0Range relevant_a0_range(std::int64_t a2, std::int64_t a1, const Rational& t, int n) {
    assert(a2 > 0);
    // Range of P(x) = a2 x^2 + a1 x over [0,1].
    const Rational p1(a2 + a1);
    Rational pmax = p1 > Rational(0) ? p1 : Rational(0);
    Rational pmin = p1 < Rational(0) ? p1 : Rational(0);
    if (0 < -a1 && -a1 < 2 * a2) {
        pmin = Rational(-a1 * a1, 4 * a2);  // interior vertex value
    }
    // Delta nonempty iff a0 in (-pmax - t, -pmin + t).
    const Rational lo_bound = -pmax - t;
    const Rational hi_bound = -pmin + t;
    A0Range r;
    const std::int64_t cap = (std::int64_t{1} << (n + 2)) - 1;
    const mpz_class lo = lo_bound.floor() + 1;
    const mpz_class hi = hi_bound.ceil() - 1;
    assert(lo.fits_slong_p() && hi.fits_slong_p());
    r.lo = std::max<std::int64_t>(lo.get_si(), -cap);
    r.hi = std::min<std::int64_t>(hi.get_si(), cap);
    return r;
}

IntervalUnion pair_union(std::int64_t a2, std::int64_t a1, int n, const Rational& t) {
    const A0Range range = relevant_a0_range(a2, a1, t, n);
    std::vector<QiInterval> comps;
    for (std::int64_t a0 = range.lo; a0 <= range.hi; ++a0) {
        const IntegerQuadratic f{a2, a1, a0};
        if (discriminant(f) <= 0) continue;  // distinct real roots only
        for (auto& c : delta_components(f, t, true)) {
            const QiInterval cc = c.clipped_unit();
            if (!cc.empty()) comps.push_back(cc);
        }
    }
    return IntervalUnion::from_parts(std::move(comps));
}

LemmaOneReport lemma1_verify(std::int64_t a2, std::int64_t a1, int n, const PsiSpec& psi) {
    LemmaOneReport rep;
    rep.a2 = a2;
    rep.a1 = a1;
    rep.n = n;
    const Rational t = exact_psi_or_throw(psi, n);
    rep.bound = Rational(16) * t;
    const IntervalUnion u = pair_union(a2, a1, n, t);
    rep.measure = u.measure();
    rep.component_count = u.size();
    rep.passed = rep.measure.certainly_le(rep.bound);
    return rep;
}

}  // namespace parcov
