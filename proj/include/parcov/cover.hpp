#pragma once

// The level-n covers of the approximable set, built the way the proof
// builds them: repeated-root intervals |x - v/u| < sqrt(psi(2^n)/k)/u
// on one side, and the fixed-pair unions Delta(a2,a1) chopped into
// pieces of length in [delta/2, delta] with delta = psi(2^n)/(20*2^n)
// on the other; plus Hausdorff g-sums and tail sums over levels.

#include "parcov/approx_sets.hpp"
#include "parcov/enclosure.hpp"
#include "parcov/interval_union.hpp"
#include "parcov/scale_functions.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace parcov {

struct ChopPiece {
    QuadIrr lo, hi;
    // Boundary-clipped fragment shorter than delta/2, kept whole.
    bool short_fragment = false;
};

// Cuts every maximal interval of u into pieces of length in
// [delta/2, delta]: full-length pieces left to right; a remainder
// >= delta/2 becomes its own piece, a smaller one is absorbed by
// ending with pieces of length (r + delta/2) and delta/2. Piece count
// per interval is ceil(length/delta), the minimum possible.
std::vector<ChopPiece> chop(const IntervalUnion& u, const Rational& delta);

// Piece count alone (no materialization).
std::uint64_t chop_count(const IntervalUnion& u, const Rational& delta);

// ceil(length/delta) for a single interval, decided exactly.
std::uint64_t exact_piece_count(const QiInterval& part, const Rational& delta);

// Exact-path g-sum of one chopped interval: full pieces use the cached
// g(delta)/g(delta/2) values, remainders are evaluated at actual size.
// Adds the piece count to pieces_out.
Enclosure exact_part_gsum(const QiInterval& part, const Rational& delta, const DimFnSpec& g,
                          const Enclosure& g_delta, const Enclosure& g_half,
                          std::uint64_t& pieces_out);

// The proof's repeated-root intervals at level n: center v/u, radius
// sqrt(radicand)/u with radicand = t/k. Grid mode (realized_only =
// false) is the paper's k = 1 (u, v) grid plus realized k > 1.
struct RepeatedItem {
    Rational center;
    Rational radicand;
    long u = 1;
};
std::vector<RepeatedItem> repeated_cover_items(int n, const Rational& t, bool realized_only);

struct RepeatedCover {
    std::uint64_t interval_count = 0;  // nonempty after clipping to [0,1]
    Enclosure gsum;
};

// Case-I cover at level n. Grid mode (realized_only = false) walks the
// proof's (u, v) parameter grid for k = 1 — an over-cover — plus every
// realized D = 0 polynomial with k > 1; realized mode restricts to
// realized D = 0 polynomials for all k. Needs psi(2^n) exactly
// representable.
RepeatedCover cover_repeated(int n, const PsiSpec& psi, const DimFnSpec& g,
                             bool realized_only = false);

struct DistinctCover {
    std::uint64_t pair_count = 0;   // pairs with a nonempty union
    std::uint64_t piece_count = 0;
    Enclosure gsum;
    std::uint64_t count_violations = 0;  // pairs exceeding 640 * 2^n pieces
};

// Case-II cover at level n, exact path: for every (a2, a1) in the
// block, Delta(a2,a1) is built exactly, chopped at delta, and g-summed
// at the actual piece lengths. The per-pair piece bound 640 * 2^n is
// checked; violations are counted, not thrown.
DistinctCover cover_distinct_exact(int n, const PsiSpec& psi, const DimFnSpec& g, int threads = 1);

struct CoverLevelReport {
    int n = 0;
    std::uint64_t repeated_count = 0;
    Enclosure repeated_gsum;
    std::uint64_t distinct_pair_count = 0;
    std::uint64_t chopped_piece_count = 0;
    std::uint64_t chop_bound = 0;  // 640 * 2^n, per pair
    Enclosure distinct_gsum;
    Enclosure total_gsum;
    std::uint64_t count_violations = 0;
    std::string engine;  // "exact" or "fast"
};

// Exact engine through this level by default; the fast sweep beyond.
inline constexpr int kExactCoverCap = 6;

enum class CoverEngine { automatic, exact, fast };

CoverLevelReport cover_level(int n, const PsiSpec& psi, const DimFnSpec& g,
                             CoverEngine engine = CoverEngine::automatic, int threads = 1,
                             bool repeated_realized_only = false);

struct TailSumReport {
    int n_start = 0, n_end = 0;
    Enclosure tail;                                   // sum of level g-sums
    std::vector<std::pair<int, Enclosure>> trend;     // tail from each N
    std::vector<CoverLevelReport> levels;
};

TailSumReport tail_sum(int n_start, int n_end, const PsiSpec& psi, const DimFnSpec& g,
                       CoverEngine engine = CoverEngine::automatic, int threads = 1);

}  // namespace parcov
