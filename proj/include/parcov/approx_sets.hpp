#pragma once

// Exact solution sets of |F(x)| < t on [0,1] and everything §-shaped
// built from them: the near-left/near-right split at the rational
// midpoint -a1/(2a2), the closed auxiliary intervals sigma_1/sigma_2
// around the left root, and the fixed-pair union with its
// Lebesgue-measure bound (Lemma 1 machinery).

#include "parcov/enclosure.hpp"
#include "parcov/errors.hpp"
#include "parcov/interval_union.hpp"
#include "parcov/quad_poly.hpp"
#include "parcov/scale_functions.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace parcov {

// Unclipped real-line components of {x : |F(x)| < t}; 0, 1 or 2 open
// intervals. With exclude_midpoint the equidistant point -a1/(2a2) is
// removed (the Delta_1/Delta_2 convention), which may split a single
// component in two.
std::vector<QiInterval> delta_components(const IntegerQuadratic& f, const Rational& t,
                                         bool exclude_midpoint);

// {x in [0,1] : |F(x)| < t} with exact endpoints. Requires t > 0.
IntervalUnion delta_set(const IntegerQuadratic& f, const Rational& t);

// (Delta_1, Delta_2): the parts of delta_set nearer the left/right
// root; the midpoint belongs to neither. Requires distinct real roots.
std::pair<IntervalUnion, IntervalUnion> split_delta(const IntegerQuadratic& f, const Rational& t);

// Every point of Delta_i lies strictly within 2t/sqrt(D) of alpha_i.
bool width_bound_check(const IntegerQuadratic& f, const Rational& t);

// Closed intervals around the left root alpha_1, clipped to [0,1]:
// sigma_1 radius psi(2^n)/(20*2^n), sigma_2 radius psi(2^n)/(2*sqrt(D)).
// Requires distinct real roots and an exactly representable psi(2^n).
std::pair<IntervalUnion, IntervalUnion> sigma_sets(const IntegerQuadratic& f, int n,
                                                   const PsiSpec& psi);

// sigma_1 ⊆ sigma_2 ⊆ Delta_1(n, F), as exact containments.
bool inclusion_check(const IntegerQuadratic& f, int n, const PsiSpec& psi);

// Integer a0 with Delta(n, F) ∩ [0,1] nonempty, intersected with
// |a0| < 2^{n+2}; empty when lo > hi.
struct A0Range {
    std::int64_t lo = 0, hi = -1;
    bool empty() const { return lo > hi; }
};
A0Range relevant_a0_range(std::int64_t a2, std::int64_t a1, const Rational& t, int n);

struct LemmaOneReport {
    std::int64_t a2 = 0, a1 = 0;
    int n = 0;
    Enclosure measure;
    Rational bound;       // 16 * psi(2^n)
    bool passed = false;  // measure.hi <= bound, compared exactly
    std::uint64_t component_count = 0;
};

// Union over |a0| < 2^{n+2} of Delta_1 ∪ Delta_2 (distinct-real a0
// only) for fixed (a2, a1), with certified measure against 16*psi(2^n).
LemmaOneReport lemma1_verify(std::int64_t a2, std::int64_t a1, int n, const PsiSpec& psi);

// The same union, exposed for the cover builder.
IntervalUnion pair_union(std::int64_t a2, std::int64_t a1, int n, const Rational& t);

}  // namespace parcov
