#pragma once

// Convergence analysis of the criterion series  sum_q g(psi(q)/q) q^2:
// exact classification for power-log families via the iterated
// Bertrand rule, numerical partial sums and Cauchy-condensation ratios
// as corroboration, and the empirical box-counting dimension estimate
// against the target 3/(tau+1).

#include "parcov/enclosure.hpp"
#include "parcov/rational.hpp"
#include "parcov/scale_functions.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace parcov {

enum class SeriesClass { convergent, divergent, boundary_undecided };

std::string to_string(SeriesClass c);

struct SeriesReport {
    SeriesClass classification = SeriesClass::boundary_undecided;
    bool exact_rule_applied = false;
    // Combined exponents of the general term q^{e0} (log q)^{e1} ...
    Rational power_exponent;                  // e0 = 2 - s*(tau+1)
    std::vector<Rational> log_exponents;      // e1, e2, ...
    std::vector<std::pair<long, Enclosure>> partial_sums;   // (q_max, sum)
    std::vector<std::pair<int, Enclosure>> condensation_ratio;  // (n, ratio)
};

// Exact rule: convergent iff e0 < -1, or e0 = -1 and the first
// log exponent differing from -1 is < -1 (all equal through the
// cascade: divergent, since the next implicit exponent is 0).
SeriesReport classify_series(const PsiSpec& psi, const DimFnSpec& g, long q_max = 100000,
                             int condensation_levels = 10);

struct CondensationRatio {
    int n = 0;
    Enclosure ratio;          // blocked sum / condensed term
    double lower_bracket = 0; // from monotonicity, data-dependent
    double upper_bracket = 0; // (a-1)*a^2
};

// Ratios of Sum_{q in [a^n, a^{n+1})} term(q) to g(psi(a^n)/a^n) a^{3n}.
std::vector<CondensationRatio> condensation_compare(const PsiSpec& psi, const DimFnSpec& g,
                                                    long base, int n_max);

struct DimensionReport {
    Rational tau;
    std::vector<int> levels;
    // (n, box count, box size delta(n)).
    std::vector<std::tuple<int, std::uint64_t, double>> box_counts;
    double slope_estimate = 0.0;
    Rational target;  // 3/(tau+1)
    bool too_few_levels = false;
};

// Box counts of the level-n cover (distinct pieces + repeated
// intervals) at scale delta(n), regressed against log(1/delta).
DimensionReport estimate_dimension(const Rational& tau, int n_min, int n_max, int threads = 1);

struct PointwiseExponent {
    double exponent = 0.0;           // max over F of -log|F(x)| / log height(F)
    std::uint64_t algebraic_hits = 0;  // exact zeros F(x) = 0, excluded
    std::int64_t argmax_a2 = 0, argmax_a1 = 0, argmax_a0 = 0;
};

// Dual-approximation exponent of a rational sample point: heights from
// 2 through q_max, the constant term chosen optimally (nearest integer
// to a2 x^2 + a1 x).
PointwiseExponent pointwise_exponent(const Rational& x, std::int64_t q_max);

}  // namespace parcov
