#include "parcov/cover.hpp"

#include "parcov/parallel.hpp"
#include "parcov/quad_poly.hpp"
#include "parcov/sweep.hpp"

#include <cassert>
#include <cmath>
#include <numeric>

namespace parcov {

namespace {

Rational exact_psi_or_throw(const PsiSpec& psi, int n) {
    if (auto t = psi_exact_pow2(psi, n)) return *t;
    throw DomainError("cover: psi(2^" + std::to_string(n) + ") must be exactly representable");
}

bool shorter_than(const QiInterval& part, const Rational& len) {
    return part.hi.compare(part.lo.add_rational(len)) == std::strong_ordering::less;
}

// Positive certified enclosure of hi - lo for lo < hi, refining past
// the fast double path when the gap is many orders smaller than
// scale_hint (boundary-clipped fragments can be arbitrarily short).
Enclosure gap_enclosure(const QuadIrr& lo, const QuadIrr& hi, const Rational& scale_hint) {
    Enclosure len = hi.enclose_fast() - lo.enclose_fast();
    Rational tol = scale_hint;
    while (len.lo <= 0.0) {
        tol = tol / Rational::pow2(32);
        if (tol < Rational::pow2(-1024))
            throw InvariantViolation("gap_enclosure: could not certify a positive length");
        len = hi.enclose(tol) - lo.enclose(tol);
    }
    return len;
}

Enclosure length_enclosure(const QiInterval& part, const Rational& scale_hint) {
    return gap_enclosure(part.lo, part.hi, scale_hint);
}

}  // namespace

std::uint64_t exact_piece_count(const QiInterval& part, const Rational& delta) {
    // m is the unique integer with (m-1)*delta < length <= m*delta; the
    // double estimate is off by at most a step or two near ties.
    const Enclosure len = part.hi.enclose_fast() - part.lo.enclose_fast();
    const double dd = Enclosure::of(delta).mid();
    long m = static_cast<long>(std::ceil(len.mid() / dd));
    if (m < 1) m = 1;
    auto le_m_delta = [&](long k) {  // length <= k*delta ?
        return part.hi.compare(part.lo.add_rational(delta * Rational(k))) !=
               std::strong_ordering::greater;
    };
    while (!le_m_delta(m)) ++m;
    while (m > 1 && le_m_delta(m - 1)) --m;
    return static_cast<std::uint64_t>(m);
}

Enclosure exact_part_gsum(const QiInterval& part, const Rational& delta, const DimFnSpec& g,
                          const Enclosure& g_delta, const Enclosure& g_half,
                          std::uint64_t& pieces_out) {
    const Rational half = delta / Rational(2);
    const std::uint64_t m = exact_piece_count(part, delta);
    pieces_out += m;
    if (m == 1) {
        const Enclosure len = length_enclosure(part, delta);
        return g_eval_on(g, MpfrInterval::of(len, 128)).to_enclosure();
    }
    const bool tail_ok = !shorter_than(part, Rational(static_cast<long>(m - 1)) * delta + half);
    const double full = static_cast<double>(tail_ok ? m - 1 : m - 2);
    Enclosure sum{step_down(g_delta.lo * full), step_up(g_delta.hi * full)};
    // Remainder pieces at their actual (certified-positive) lengths.
    if (tail_ok) {
        const Enclosure rem = gap_enclosure(
            part.lo.add_rational(delta * Rational(static_cast<long>(m - 1))), part.hi, delta);
        sum += g_eval_on(g, MpfrInterval::of(rem, 128)).to_enclosure();
    } else {
        const Enclosure rem = gap_enclosure(
            part.lo.add_rational(delta * Rational(static_cast<long>(m - 2)) + half), part.hi, delta);
        sum += g_eval_on(g, MpfrInterval::of(rem, 128)).to_enclosure();
        sum += g_half;
    }
    return sum;
}

std::vector<ChopPiece> chop(const IntervalUnion& u, const Rational& delta) {
    if (delta.sign() <= 0) throw DomainError("chop: delta must be positive");
    const Rational half = delta / Rational(2);
    std::vector<ChopPiece> pieces;
    for (const auto& part : u.parts()) {
        const std::uint64_t m = exact_piece_count(part, delta);
        if (m == 1) {
            pieces.push_back({part.lo, part.hi, shorter_than(part, half)});
            continue;
        }
        const bool tail_ok = !shorter_than(part, Rational(static_cast<long>(m - 1)) * delta + half);
        const std::uint64_t full = tail_ok ? m - 1 : m - 2;
        QuadIrr cursor = part.lo;
        for (std::uint64_t j = 0; j < full; ++j) {
            QuadIrr next = part.lo.add_rational(delta * Rational(static_cast<long>(j + 1)));
            pieces.push_back({cursor, next, false});
            cursor = std::move(next);
        }
        if (tail_ok) {
            pieces.push_back({cursor, part.hi, false});  // remainder in [delta/2, delta]
        } else {
            // End with lengths (r + delta/2) and delta/2, both in range.
            QuadIrr cut = part.hi.sub_rational(half);
            pieces.push_back({cursor, cut, false});
            pieces.push_back({std::move(cut), part.hi, false});
        }
    }
    return pieces;
}

std::uint64_t chop_count(const IntervalUnion& u, const Rational& delta) {
    if (delta.sign() <= 0) throw DomainError("chop: delta must be positive");
    std::uint64_t total = 0;
    for (const auto& part : u.parts()) total += exact_piece_count(part, delta);
    return total;
}

// ---------- Case I: repeated roots ----------

std::vector<RepeatedItem> repeated_cover_items(int n, const Rational& t, bool realized_only) {
    if (n < 1) throw DomainError("repeated cover: level must be >= 1");
    const std::int64_t coeff_lo = std::int64_t{1} << n;
    const std::int64_t coeff_hi = std::int64_t{1} << (n + 1);
    const std::int64_t a0_hi = std::int64_t{1} << (n + 2);

    std::vector<RepeatedItem> items;
    if (!realized_only) {
        // The proof's k = 1 grid: 2^{(n-3)/2} < u < 2^{(n+1)/2}, -1 < v <= 1+u.
        for (std::int64_t u = 1; u * u < coeff_hi; ++u) {
            if (n >= 3 && u * u <= (std::int64_t{1} << (n - 3))) continue;
            for (std::int64_t v = 0; v <= u + 1; ++v)
                items.push_back({Rational(v, u), t, static_cast<long>(u)});
        }
    }
    // Realized F = k(ux-v)^2 inside the block; grid mode adds only
    // k > 1. |v| > u+1 would put the root too far outside [0,1] to
    // survive clipping (radius < 1/u), so the loop stops there.
    const std::int64_t k_min = realized_only ? 1 : 2;
    for (std::int64_t u = 1; k_min * u * u < coeff_hi; ++u) {
        for (std::int64_t k = k_min; k * u * u < coeff_hi; ++k) {
            const std::int64_t a2 = k * u * u;
            for (std::int64_t v = -(u + 1); v <= u + 1; ++v) {
                if (std::gcd(u, std::abs(v)) != 1) continue;
                const std::int64_t abs_a1 = 2 * k * u * std::abs(v);
                const std::int64_t h = std::max(a2, abs_a1);
                if (h < coeff_lo || h >= coeff_hi) continue;
                if (k * v * v >= a0_hi) continue;
                items.push_back({Rational(v, u), t / Rational(k), static_cast<long>(u)});
            }
        }
    }
    return items;
}

namespace {

// Clips center ± sqrt(radicand)/u to [0,1]; returns false when empty.
bool clip_repeated(const RepeatedItem& it, QiInterval& out) {
    const Rational coeff = Rational(1, it.u);
    const QiInterval raw{QuadIrr(it.center, -coeff, it.radicand),
                         QuadIrr(it.center, coeff, it.radicand), true, true};
    out = raw.clipped_unit();
    return !out.empty();
}

}  // namespace

RepeatedCover cover_repeated(int n, const PsiSpec& psi, const DimFnSpec& g, bool realized_only) {
    const Rational t = exact_psi_or_throw(psi, n);
    RepeatedCover out;
    out.gsum = Enclosure::zero();
    for (const auto& it : repeated_cover_items(n, t, realized_only)) {
        QiInterval clipped;
        if (!clip_repeated(it, clipped)) continue;
        ++out.interval_count;
        const Enclosure len = length_enclosure(clipped, t);
        out.gsum += g_eval_on(g, MpfrInterval::of(len, 128)).to_enclosure();
    }
    return out;
}

// ---------- Case II: distinct roots ----------

namespace {

struct PairChunk {
    std::uint64_t pairs = 0, pieces = 0, violations = 0;
    Enclosure gsum = Enclosure::zero();
};

}  // namespace

DistinctCover cover_distinct_exact(int n, const PsiSpec& psi, const DimFnSpec& g, int threads) {
    const Rational t = exact_psi_or_throw(psi, n);
    const Rational delta = t / (Rational(20) * Rational::pow2(n));
    const std::uint64_t bound = std::uint64_t{640} << n;
    const Enclosure g_delta = g_eval_on(g, MpfrInterval::of(delta, 128)).to_enclosure();
    const Enclosure g_half = g_eval_on(g, MpfrInterval::of(delta / Rational(2), 128)).to_enclosure();

    std::vector<std::pair<std::int64_t, std::int64_t>> pair_list;
    pair_list.reserve(block_pair_count(n));
    enumerate_block_pairs(n, [&](std::int64_t a2, std::int64_t a1) { pair_list.emplace_back(a2, a1); });

    auto run_chunk = [&](std::int64_t lo, std::int64_t hi) {
        PairChunk acc;
        for (std::int64_t i = lo; i < hi; ++i) {
            const auto [a2, a1] = pair_list[static_cast<std::size_t>(i)];
            const IntervalUnion u = pair_union(a2, a1, n, t);
            if (u.empty()) continue;
            ++acc.pairs;
            std::uint64_t pair_pieces = 0;
            for (const auto& part : u.parts())
                acc.gsum += exact_part_gsum(part, delta, g, g_delta, g_half, pair_pieces);
            acc.pieces += pair_pieces;
            if (pair_pieces > bound) ++acc.violations;
        }
        return acc;
    };

    const std::int64_t total = static_cast<std::int64_t>(pair_list.size());
    const std::int64_t chunk = std::max<std::int64_t>(std::int64_t{64}, total / 256 + 1);
    const PairChunk sum = parallel_reduce<PairChunk>(
        0, total, chunk, threads, run_chunk,
        [](PairChunk a, PairChunk b) {
            a.pairs += b.pairs;
            a.pieces += b.pieces;
            a.violations += b.violations;
            a.gsum += b.gsum;
            return a;
        },
        PairChunk{});

    DistinctCover out;
    out.pair_count = sum.pairs;
    out.piece_count = sum.pieces;
    out.gsum = sum.gsum;
    out.count_violations = sum.violations;
    return out;
}

CoverLevelReport cover_level(int n, const PsiSpec& psi, const DimFnSpec& g, CoverEngine engine,
                             int threads, bool repeated_realized_only) {
    CoverLevelReport rep;
    rep.n = n;
    rep.chop_bound = std::uint64_t{640} << n;
    const bool exact = engine == CoverEngine::exact ||
                       (engine == CoverEngine::automatic && n <= kExactCoverCap);
    rep.engine = exact ? "exact" : "fast";

    const RepeatedCover rc = cover_repeated(n, psi, g, repeated_realized_only);
    rep.repeated_count = rc.interval_count;
    rep.repeated_gsum = rc.gsum;

    if (exact) {
        const DistinctCover dc = cover_distinct_exact(n, psi, g, threads);
        rep.distinct_pair_count = dc.pair_count;
        rep.chopped_piece_count = dc.piece_count;
        rep.distinct_gsum = dc.gsum;
        rep.count_violations = dc.count_violations;
    } else {
        const SweepSummary s = sweep_level_summary(n, psi, g, threads);
        rep.distinct_pair_count = s.pair_count;
        rep.chopped_piece_count = s.piece_count;
        rep.distinct_gsum = s.gsum;
        rep.count_violations = s.count_violations;
    }
    rep.total_gsum = rep.repeated_gsum + rep.distinct_gsum;
    return rep;
}

TailSumReport tail_sum(int n_start, int n_end, const PsiSpec& psi, const DimFnSpec& g,
                       CoverEngine engine, int threads) {
    if (n_start < 1 || n_end < n_start) throw DomainError("tail_sum: bad level range");
    TailSumReport rep;
    rep.n_start = n_start;
    rep.n_end = n_end;
    for (int n = n_start; n <= n_end; ++n)
        rep.levels.push_back(cover_level(n, psi, g, engine, threads));
    rep.tail = Enclosure::zero();
    for (const auto& l : rep.levels) rep.tail += l.total_gsum;
    for (int N = n_start; N <= n_end; ++N) {
        Enclosure t = Enclosure::zero();
        for (const auto& l : rep.levels)
            if (l.n >= N) t += l.total_gsum;
        rep.trend.emplace_back(N, t);
    }
    return rep;
}

}  // namespace parcov
