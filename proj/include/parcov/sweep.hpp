#pragma once

// Fast level engine for the distinct-root cover at levels where exact
// arithmetic is infeasible: one pass over the block accumulates
// component/piece counts, g-sums for several dimension functions, and
// box counts at the chopping scale delta(n) = psi(2^n)/(20*2^n).
//
// Arithmetic model: int64 coefficients, stable double formulas for
// interval lengths (no cancellation), double-double for box indices
// when 1/delta exceeds double resolution. Components touching the unit
// boundary are handed to the exact path (they are vanishingly rare at
// these levels). Reported g-sum enclosures carry a documented error
// inflation rather than full interval certification; the exact engine
// provides certified values on overlapping levels for cross-checks.
//
// Requires n >= 2 and psi decaying at least like q^{-5/2} at dyadic
// arguments (so complex-root polynomials certainly contribute nothing).

#include "parcov/cover.hpp"
#include "parcov/enclosure.hpp"
#include "parcov/scale_functions.hpp"

#include <cstdint>
#include <vector>

namespace parcov {

struct SweepStats {
    int n = 0;
    std::uint64_t pair_count = 0;       // pairs with at least one component
    std::uint64_t component_count = 0;
    std::uint64_t piece_count = 0;
    std::uint64_t box_count = 0;        // 0 unless boxes requested
    std::uint64_t count_violations = 0; // pairs certainly above 640*2^n
    std::uint64_t ambiguous = 0;        // near-tie piece counts (diagnostic)
    std::uint64_t slow_path = 0;        // boundary components handled exactly
    std::vector<Enclosure> gsums;       // one per requested g
};

SweepStats sweep_level(int n, const PsiSpec& psi, const std::vector<DimFnSpec>& gs,
                       bool want_boxes, int threads = 1);

struct SweepSummary {
    std::uint64_t pair_count = 0;
    std::uint64_t piece_count = 0;
    std::uint64_t count_violations = 0;
    Enclosure gsum;
};

// Single-g convenience used by the fast cover path.
SweepSummary sweep_level_summary(int n, const PsiSpec& psi, const DimFnSpec& g, int threads = 1);

// Boxes met by the repeated-root cover intervals at scale delta(n)
// (paper (u,v) grid for k = 1 plus realized k > 1), summed per
// interval; intervals are pairwise box-disjoint at these levels.
std::uint64_t repeated_box_count(int n, const PsiSpec& psi);

}  // namespace parcov
