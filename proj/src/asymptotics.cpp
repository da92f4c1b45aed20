#include "parcov/asymptotics.hpp"

#include "parcov/cover.hpp"
#include "parcov/errors.hpp"
#include "parcov/sweep.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace parcov {

std::string to_string(SeriesClass c) {
    switch (c) {
        case SeriesClass::convergent: return "convergent";
        case SeriesClass::divergent: return "divergent";
        default: return "boundary-undecided";
    }
}

namespace {

// A double evaluator of term(q) = g(psi(q)/q) * q^2; accurate to a few
// ulps per factor, which is all the corroborating sums need.
struct TermFun {
    double tau, s, eps;
    std::vector<double> alphas, betas;

    static TermFun of(const PsiSpec& psi, const DimFnSpec& g) {
        TermFun t;
        t.tau = psi.tau.approx();
        t.s = g.s.approx();
        t.eps = psi.eps.approx();
        for (const auto& a : psi.alphas) t.alphas.push_back(a.approx());
        for (const auto& b : g.betas) t.betas.push_back(b.approx());
        return t;
    }

    // log r for r = psi(q)/q, and the term itself.
    double log_r(double lq) const {  // lq = log q
        double lr = -(tau + 1.0) * lq;
        double l = lq;
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            l = std::log(l);  // log_{i+1} q
            double e = -alphas[i];
            if (i + 1 == alphas.size()) e -= eps;
            lr += e * l;
        }
        return lr;
    }
    double eval(double q) const {
        const double lq = std::log(q);
        const double lr = log_r(lq);
        double lg = s * lr;  // log g(r)
        double l = -lr;      // log(1/r)
        for (const double b : betas) {
            lg += b * std::log(l);
            l = std::log(l);
        }
        return std::exp(lg + 2.0 * std::log(q));
    }
};

// First integer q where both psi(q) and psi(q)/q are inside their
// domains (all iterated logs > 1, argument of g below its threshold).
long series_start(const PsiSpec& psi, const DimFnSpec& g) {
    for (long q = 2; q < 100000; ++q) {
        const Rational qq(q);
        if (!psi_in_domain(psi, qq)) continue;
        const Enclosure r = psi_eval(psi, qq) * Enclosure::of(Rational(1) / qq);
        if (r.lo <= 0.0) continue;
        if (g_in_domain(g, Rational(mpq_class(r.hi))) &&
            g_in_domain(g, Rational(mpq_class(r.lo))))
            return q;
    }
    throw DomainError("series: no valid starting index below 100000");
}

}  // namespace

SeriesReport classify_series(const PsiSpec& psi, const DimFnSpec& g, long q_max,
                             int condensation_levels) {
    psi.validate();
    g.validate();
    SeriesReport rep;

    // Combined exponents of the general term.
    rep.power_exponent = Rational(2) - g.s * (psi.tau + Rational(1));
    const std::size_t depth = std::max(psi.alphas.size(), g.betas.size());
    for (std::size_t i = 0; i < depth; ++i) {
        Rational e(0);
        if (i < psi.alphas.size()) {
            e -= g.s * psi.alphas[i];
            if (i + 1 == psi.alphas.size()) e -= g.s * psi.eps;
        }
        if (i < g.betas.size()) e += g.betas[i];
        rep.log_exponents.push_back(e);
    }

    // Iterated Bertrand rule, exact over rationals.
    constexpr std::size_t kMaxCascade = 16;
    if (depth > kMaxCascade) {
        rep.classification = SeriesClass::boundary_undecided;
    } else {
        rep.exact_rule_applied = true;
        const Rational minus_one(-1);
        if (rep.power_exponent < minus_one) {
            rep.classification = SeriesClass::convergent;
        } else if (rep.power_exponent > minus_one) {
            rep.classification = SeriesClass::divergent;
        } else {
            rep.classification = SeriesClass::divergent;  // all -1: diverges
            for (const Rational& e : rep.log_exponents) {
                if (e == minus_one) continue;
                rep.classification =
                    e < minus_one ? SeriesClass::convergent : SeriesClass::divergent;
                break;
            }
        }
    }

    // Numerical corroboration: partial sums at decade checkpoints.
    const TermFun term = TermFun::of(psi, g);
    const long q0 = series_start(psi, g);
    double sum = 0.0;
    long next_checkpoint = 100;
    while (next_checkpoint < q0 * 2) next_checkpoint *= 10;
    for (long q = q0; q <= q_max; ++q) {
        sum += term.eval(static_cast<double>(q));
        if (q == next_checkpoint || q == q_max) {
            rep.partial_sums.emplace_back(q, Enclosure::exact(sum).inflate_rel(1e-9));
            if (q == next_checkpoint) next_checkpoint *= 10;
        }
    }

    for (const auto& cr : condensation_compare(psi, g, 2, condensation_levels))
        rep.condensation_ratio.emplace_back(cr.n, cr.ratio);
    return rep;
}

std::vector<CondensationRatio> condensation_compare(const PsiSpec& psi, const DimFnSpec& g,
                                                    long base, int n_max) {
    if (base < 2) throw DomainError("condensation: base must be >= 2");
    const TermFun term = TermFun::of(psi, g);
    const long q0 = series_start(psi, g);

    // Condensed term a^{3n} g(psi(a^n)/a^n) = term(a^n) * a^n.
    std::vector<double> condensed(static_cast<std::size_t>(n_max) + 2, 0.0);
    for (int n = 1; n <= n_max + 1; ++n) {
        const double an = std::pow(static_cast<double>(base), n);
        condensed[static_cast<std::size_t>(n)] = term.eval(an) * an;
    }

    std::vector<CondensationRatio> out;
    for (int n = 1; n <= n_max; ++n) {
        const long lo = static_cast<long>(std::llround(std::pow(double(base), n)));
        const long hi = static_cast<long>(std::llround(std::pow(double(base), n + 1)));
        if (lo < q0) continue;
        if (hi - lo > 20'000'000)
            throw ResourceCapError("condensation: block too large at n=" + std::to_string(n));
        double block = 0.0;
        for (long q = lo; q < hi; ++q) block += term.eval(static_cast<double>(q));
        CondensationRatio cr;
        cr.n = n;
        const double c = condensed[static_cast<std::size_t>(n)];
        cr.ratio = Enclosure::exact(block / c).inflate_rel(1e-9);
        // Monotone brackets: block terms are at most g(r(a^n)) a^{2n+2}
        // each and at least g(r(a^{n+1})) a^{2n} each.
        cr.upper_bracket = static_cast<double>(base - 1) * static_cast<double>(base * base);
        cr.lower_bracket = (static_cast<double>(base - 1) /
                            std::pow(static_cast<double>(base), 3.0)) *
                           condensed[static_cast<std::size_t>(n + 1)] / c;
        out.push_back(cr);
    }
    return out;
}

DimensionReport estimate_dimension(const Rational& tau, int n_min, int n_max, int threads) {
    if (!(tau > Rational(2))) throw DomainError("estimate_dimension: needs tau > 2");
    if (n_min < 2 || n_max < n_min) throw DomainError("estimate_dimension: bad level range");
    PsiSpec psi;
    psi.tau = tau;

    DimensionReport rep;
    rep.tau = tau;
    rep.target = Rational(3) / (tau + Rational(1));
    rep.too_few_levels = (n_max - n_min + 1) < 3;

    std::vector<double> xs, ys;
    for (int n = n_min; n <= n_max; ++n) {
        const SweepStats s = sweep_level(n, psi, {}, /*want_boxes=*/true, threads);
        const std::uint64_t rep_boxes = repeated_box_count(n, psi);
        const std::uint64_t count = s.box_count + rep_boxes;
        double delta;
        if (auto ex = psi_exact_pow2(psi, n)) {
            delta = Enclosure::of(*ex / (Rational(20) * Rational::pow2(n))).mid();
        } else {
            delta = psi_eval(psi, Rational::pow2(n)).mid() /
                    (20.0 * static_cast<double>(std::int64_t{1} << n));
        }
        rep.levels.push_back(n);
        rep.box_counts.emplace_back(n, count, delta);
        if (count > 0) {
            xs.push_back(std::log(1.0 / delta));
            ys.push_back(std::log(static_cast<double>(count)));
        }
    }

    // Least squares of log(count) against log(1/delta).
    if (xs.size() >= 2) {
        const double k = static_cast<double>(xs.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        rep.slope_estimate = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    } else {
        rep.slope_estimate = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

PointwiseExponent pointwise_exponent(const Rational& x, std::int64_t q_max) {
    if (x < Rational(0) || x > Rational(1)) throw DomainError("pointwise_exponent: x must be in [0,1]");
    if (q_max < 2) throw DomainError("pointwise_exponent: q_max must be >= 2");
    if (q_max > 4096) throw ResourceCapError("pointwise_exponent: q_max capped at 4096");
    PointwiseExponent out;
    const Rational x2 = x * x;
    for (std::int64_t a2 = 1; a2 <= q_max; ++a2) {
        for (std::int64_t a1 = -q_max; a1 <= q_max; ++a1) {
            const std::int64_t h = std::max(a2, a1 < 0 ? -a1 : a1);
            if (h < 2) continue;
            // Best a0 is the nearest integer to -P(x).
            const Rational p = Rational(a2) * x2 + Rational(a1) * x;
            const Rational frac = p - Rational(p.floor());
            const Rational dist = std::min(frac, Rational(1) - frac);
            if (dist.is_zero()) {
                ++out.algebraic_hits;
                continue;
            }
            const double e = -std::log(dist.approx()) / std::log(static_cast<double>(h));
            if (e > out.exponent) {
                out.exponent = e;
                out.argmax_a2 = a2;
                out.argmax_a1 = a1;
                mpz_class a0 = -p.floor();
                if (!(frac < Rational(1, 2))) a0 -= 1;
                out.argmax_a0 = a0.get_si();
            }
        }
    }
    return out;
}

}  // namespace parcov
