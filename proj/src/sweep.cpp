#include "parcov/sweep.hpp"

#include "parcov/approx_sets.hpp"
#include "parcov/dd.hpp"
#include "parcov/parallel.hpp"
#include "parcov/quad_poly.hpp"

#include <cassert>
#include <cmath>

namespace parcov {

namespace {

// Relative slop on fast-path g-sums: covers libm (<= 2 ulp on pow/log),
// the stable length formulas (~1e-14 relative) and remainder rounding.
constexpr double kGsumRelSlop = 3e-4;
// Components this close to the unit boundary take the exact path.
constexpr double kBoundaryFuzz = 1e-9;
// Box indices switch to double-double above this scale.
constexpr double kDoubleBoxLimit = 0x1p50;

// Double evaluator for g(r) = r^s * prod (log_i(1/r))^{beta_i}.
struct GFun {
    double s = 1.0;
    std::vector<double> betas;

    static GFun of(const DimFnSpec& spec) {
        GFun g;
        g.s = spec.s.approx();
        g.betas.reserve(spec.betas.size());
        for (const auto& b : spec.betas) g.betas.push_back(b.approx());
        return g;
    }

    double eval(double r) const {
        double acc = std::pow(r, s);
        if (!betas.empty()) {
            double l = -std::log(r);
            for (const double b : betas) {
                acc *= std::pow(l, b);
                l = std::log(l);
            }
        }
        return acc;
    }
};

struct LevelCtx {
    int n = 0;
    double t = 0.0;       // psi(2^n)
    bool t_exact = false; // t is an exact dyadic rational
    Rational t_rat;       // valid when t_exact
    Rational t_up;        // rational upper bound on t (== t when exact)
    Rational delta_rat;   // valid when t_exact
    double delta = 0.0, inv_delta = 0.0;
    std::uint64_t bound = 0;  // 640 * 2^n per pair
    bool want_boxes = false;
    bool use_dd = false;
    std::vector<GFun> gfun;
    std::vector<double> g_delta, g_half;      // cached g(delta), g(delta/2)
    std::vector<Enclosure> g_delta_enc, g_half_enc;
    const std::vector<DimFnSpec>* specs = nullptr;
};

struct Acc {
    std::uint64_t pairs = 0, comps = 0, pieces = 0, boxes = 0;
    std::uint64_t violations = 0, ambiguous = 0, slow = 0;
    std::vector<double> gsum;            // fast-path midpoint sums
    std::vector<Enclosure> gsum_slow;    // certified slow-path contributions

    static Acc sized(std::size_t k) {
        Acc a;
        a.gsum.assign(k, 0.0);
        a.gsum_slow.assign(k, Enclosure::zero());
        return a;
    }
    void merge(const Acc& o) {
        pairs += o.pairs;
        comps += o.comps;
        pieces += o.pieces;
        boxes += o.boxes;
        violations += o.violations;
        ambiguous += o.ambiguous;
        slow += o.slow;
        for (std::size_t i = 0; i < gsum.size(); ++i) {
            gsum[i] += o.gsum[i];
            gsum_slow[i] += o.gsum_slow[i];
        }
    }
};

std::uint64_t box_span_dd(DD x0, DD x1, double inv_delta) {
    const __int128 i0 = dd_floor(dd_mul_d(x0, inv_delta));
    const __int128 i1 = dd_floor(dd_mul_d(x1, inv_delta));
    return static_cast<std::uint64_t>(i1 - i0) + 1;
}

std::uint64_t box_span_d(double x0, double x1, double inv_delta) {
    const auto i0 = static_cast<std::int64_t>(std::floor(x0 * inv_delta));
    const auto i1 = static_cast<std::int64_t>(std::floor(x1 * inv_delta));
    return static_cast<std::uint64_t>(i1 - i0) + 1;
}

// Exact handling of one boundary-touching polynomial: components from
// the GMP path, pieces/g-sums from the exact chop algebra, boxes from
// refined enclosures. Rare enough that cost does not matter. Returns
// the exact piece count contributed.
std::uint64_t slow_handle(const LevelCtx& ctx, std::int64_t a2, std::int64_t a1, std::int64_t a0,
                          Acc& acc) {
    ++acc.slow;
    std::uint64_t pieces = 0;
    const IntegerQuadratic f{a2, a1, a0};
    for (const auto& raw : delta_components(f, ctx.t_rat, true)) {
        const QiInterval part = raw.clipped_unit();
        if (part.empty()) continue;
        ++acc.comps;
        std::uint64_t m = 0;
        for (std::size_t gi = 0; gi < ctx.gfun.size(); ++gi) {
            std::uint64_t pieces_here = 0;
            acc.gsum_slow[gi] += exact_part_gsum(part, ctx.delta_rat, (*ctx.specs)[gi],
                                                 ctx.g_delta_enc[gi], ctx.g_half_enc[gi],
                                                 pieces_here);
            m = pieces_here;
        }
        if (ctx.gfun.empty()) m = exact_piece_count(part, ctx.delta_rat);
        pieces += m;
        if (ctx.want_boxes) {
            // Refine endpoints until both floors stabilize (or accept hi).
            Rational tol = ctx.delta_rat / Rational::pow2(20);
            const Enclosure lo_e = part.lo.enclose(tol), hi_e = part.hi.enclose(tol);
            const Rational k = Rational(1) / ctx.delta_rat;
            const mpz_class i0 = (Rational(mpq_class(lo_e.hi)) * k).floor();
            const mpz_class i1 = (Rational(mpq_class(hi_e.hi)) * k).floor();
            acc.boxes += static_cast<std::uint64_t>(mpz_class(i1 - i0 + 1).get_ui());
        }
    }
    return pieces;
}

void fast_component(const LevelCtx& ctx, Acc& acc, std::uint64_t& pair_pieces,
                    std::uint64_t& pair_pieces_lo, double len) {
    ++acc.comps;
    const double z = len * ctx.inv_delta;
    double zc = std::ceil(z - 1e-9);
    if (zc < 1.0) zc = 1.0;
    const auto m = static_cast<std::uint64_t>(zc);
    if (std::fabs(z - std::nearbyint(z)) < 1e-7) ++acc.ambiguous;
    pair_pieces += m;
    double zlo = std::ceil(z * (1.0 - 1e-9) - 1e-7);
    if (zlo < 1.0) zlo = 1.0;
    pair_pieces_lo += static_cast<std::uint64_t>(zlo);

    for (std::size_t gi = 0; gi < ctx.gfun.size(); ++gi) {
        const GFun& g = ctx.gfun[gi];
        if (m == 1) {
            acc.gsum[gi] += g.eval(len);
            continue;
        }
        double r = len - static_cast<double>(m - 1) * ctx.delta;
        if (r <= 0.0) r = ctx.delta * 1e-12;
        const double half = 0.5 * ctx.delta;
        if (r >= half) {
            acc.gsum[gi] += static_cast<double>(m - 1) * ctx.g_delta[gi] + g.eval(r);
        } else {
            acc.gsum[gi] += static_cast<double>(m - 2) * ctx.g_delta[gi] + g.eval(r + half) +
                            ctx.g_half[gi];
        }
    }
}

void process_pair(const LevelCtx& ctx, std::int64_t a2, std::int64_t a1, Acc& acc) {
    const A0Range rng = relevant_a0_range(a2, a1, ctx.t_up, ctx.n);
    if (rng.empty()) return;
    const std::int64_t four_a2 = 4 * a2;
    const double four_a2_t = static_cast<double>(four_a2) * ctx.t;
    const double inv = 1.0 / static_cast<double>(2 * a2);
    const double mid = static_cast<double>(-a1) * inv;
    DD inv_dd{}, mid_dd{};
    if (ctx.want_boxes && ctx.use_dd) {
        inv_dd = dd_div_d(1.0, static_cast<double>(2 * a2));
        mid_dd = dd_mul_d(inv_dd, static_cast<double>(-a1));
    }

    std::uint64_t pair_pieces = 0, pair_pieces_lo = 0;
    bool any = false;
    std::int64_t disc = a1 * a1 - four_a2 * rng.lo;
    for (std::int64_t a0 = rng.lo; a0 <= rng.hi; ++a0, disc -= four_a2) {
        if (disc <= 0) continue;  // repeated roots covered by Case I; complex sets empty here
        const double disc_d = static_cast<double>(disc);  // exact: |D| < 2^53
        const double d_out = disc_d + four_a2_t;
        const double d_in = disc_d - four_a2_t;
        const double s_out = std::sqrt(d_out);
        const double w_out = s_out * inv;

        double xl[2], xr[2], len[2];
        int ncomp;
        if (d_in > 0.0) {
            const double s_in = std::sqrt(d_in);
            const double w_in = s_in * inv;
            const double l = 4.0 * ctx.t / (s_out + s_in);  // cancellation-free
            xl[0] = mid - w_out; xr[0] = mid - w_in; len[0] = l;
            xl[1] = mid + w_in;  xr[1] = mid + w_out; len[1] = l;
            ncomp = 2;
        } else {
            // Single sign change through the vertex; the midpoint is
            // excluded, so two half-components.
            xl[0] = mid - w_out; xr[0] = mid; len[0] = w_out;
            xl[1] = mid;         xr[1] = mid + w_out; len[1] = w_out;
            ncomp = 2;
        }

        bool needs_slow = false;
        bool keep[2];
        for (int c = 0; c < ncomp; ++c) {
            keep[c] = false;
            if (xr[c] <= kBoundaryFuzz || xl[c] >= 1.0 - kBoundaryFuzz) {
                // Fully outside or too close to call: outside is safe to
                // drop only when clearly so.
                if (xr[c] < -kBoundaryFuzz || xl[c] > 1.0 + kBoundaryFuzz) continue;
                needs_slow = true;
            } else if (xl[c] < kBoundaryFuzz || xr[c] > 1.0 - kBoundaryFuzz) {
                needs_slow = true;
            } else {
                keep[c] = true;
            }
        }
        if (needs_slow) {
            if (ctx.t_exact) {
                const std::uint64_t m = slow_handle(ctx, a2, a1, a0, acc);
                pair_pieces += m;
                pair_pieces_lo += m;
                any = true;
                continue;
            }
            // No exact threshold available: clip crudely in doubles.
            for (int c = 0; c < ncomp; ++c) {
                const double cl = std::max(xl[c], 0.0), cr = std::min(xr[c], 1.0);
                if (cr <= cl) { keep[c] = false; continue; }
                keep[c] = true;
                xl[c] = cl; xr[c] = cr; len[c] = cr - cl;
            }
        }
        for (int c = 0; c < ncomp; ++c) {
            if (!keep[c]) continue;
            any = true;
            fast_component(ctx, acc, pair_pieces, pair_pieces_lo, len[c]);
            if (ctx.want_boxes) {
                if (ctx.use_dd) {
                    const DD s_out_dd = dd_sqrt(two_sum(disc_d, four_a2_t));
                    const DD w_out_dd = dd_mul(s_out_dd, inv_dd);
                    DD x0, x1;
                    if (d_in > 0.0) {
                        const DD s_in_dd = dd_sqrt(two_sum(disc_d, -four_a2_t));
                        const DD w_in_dd = dd_mul(s_in_dd, inv_dd);
                        if (c == 0) {
                            x0 = dd_add(mid_dd, DD{-w_out_dd.hi, -w_out_dd.lo});
                            x1 = dd_add(mid_dd, DD{-w_in_dd.hi, -w_in_dd.lo});
                        } else {
                            x0 = dd_add(mid_dd, w_in_dd);
                            x1 = dd_add(mid_dd, w_out_dd);
                        }
                    } else {
                        if (c == 0) {
                            x0 = dd_add(mid_dd, DD{-w_out_dd.hi, -w_out_dd.lo});
                            x1 = mid_dd;
                        } else {
                            x0 = mid_dd;
                            x1 = dd_add(mid_dd, w_out_dd);
                        }
                    }
                    acc.boxes += box_span_dd(x0, x1, ctx.inv_delta);
                } else {
                    acc.boxes += box_span_d(xl[c], xr[c], ctx.inv_delta);
                }
            }
        }
    }
    if (any) ++acc.pairs;
    if (pair_pieces_lo > ctx.bound) ++acc.violations;
}

LevelCtx make_ctx(int n, const PsiSpec& psi, const std::vector<DimFnSpec>& gs, bool want_boxes) {
    if (n < 2) throw DomainError("sweep: level must be >= 2");
    if (!(psi.tau > Rational(2))) throw DomainError("sweep: needs tau > 2");
    LevelCtx ctx;
    ctx.n = n;
    if (auto ex = psi_exact_pow2(psi, n)) {
        ctx.t_exact = true;
        ctx.t_rat = *ex;
        ctx.t_up = *ex;
        ctx.t = Enclosure::of(*ex).mid();
        ctx.delta_rat = *ex / (Rational(20) * Rational::pow2(n));
    } else {
        const Enclosure te = psi_eval(psi, Rational::pow2(n));
        ctx.t = te.mid();
        ctx.t_up = Rational(mpq_class(te.hi));
    }
    if (!(ctx.t <= 0.25)) throw DomainError("sweep: psi(2^n) must be <= 1/4");
    ctx.delta = ctx.t / (20.0 * static_cast<double>(std::int64_t{1} << n));
    ctx.inv_delta = 1.0 / ctx.delta;
    ctx.bound = std::uint64_t{640} << n;
    ctx.want_boxes = want_boxes;
    ctx.use_dd = ctx.inv_delta > kDoubleBoxLimit;
    ctx.specs = &gs;
    for (const auto& spec : gs) {
        ctx.gfun.push_back(GFun::of(spec));
        if (ctx.t_exact) {
            const Enclosure gd = g_eval_on(spec, MpfrInterval::of(ctx.delta_rat, 128)).to_enclosure();
            const Enclosure gh =
                g_eval_on(spec, MpfrInterval::of(ctx.delta_rat / Rational(2), 128)).to_enclosure();
            ctx.g_delta_enc.push_back(gd);
            ctx.g_half_enc.push_back(gh);
            ctx.g_delta.push_back(gd.mid());
            ctx.g_half.push_back(gh.mid());
        } else {
            const double gd = ctx.gfun.back().eval(ctx.delta);
            const double gh = ctx.gfun.back().eval(0.5 * ctx.delta);
            ctx.g_delta_enc.push_back(Enclosure::exact(gd).inflate_rel(1e-12));
            ctx.g_half_enc.push_back(Enclosure::exact(gh).inflate_rel(1e-12));
            ctx.g_delta.push_back(gd);
            ctx.g_half.push_back(gh);
        }
    }
    return ctx;
}

}  // namespace

SweepStats sweep_level(int n, const PsiSpec& psi, const std::vector<DimFnSpec>& gs,
                       bool want_boxes, int threads) {
    const LevelCtx ctx = make_ctx(n, psi, gs, want_boxes);

    std::vector<std::pair<std::int64_t, std::int64_t>> pair_list;
    pair_list.reserve(block_pair_count(n));
    enumerate_block_pairs(n, [&](std::int64_t a2, std::int64_t a1) { pair_list.emplace_back(a2, a1); });
    const auto total = static_cast<std::int64_t>(pair_list.size());
    const std::int64_t chunk = std::max<std::int64_t>(std::int64_t{256}, total / 1024 + 1);

    const Acc sum = parallel_reduce<Acc>(
        0, total, chunk, threads,
        [&](std::int64_t lo, std::int64_t hi) {
            Acc acc = Acc::sized(gs.size());
            for (std::int64_t i = lo; i < hi; ++i) {
                const auto [a2, a1] = pair_list[static_cast<std::size_t>(i)];
                process_pair(ctx, a2, a1, acc);
            }
            return acc;
        },
        [](Acc a, Acc b) {
            a.merge(b);
            return a;
        },
        Acc::sized(gs.size()));

    SweepStats out;
    out.n = n;
    out.pair_count = sum.pairs;
    out.component_count = sum.comps;
    out.piece_count = sum.pieces;
    out.box_count = sum.boxes;
    out.count_violations = sum.violations;
    out.ambiguous = sum.ambiguous;
    out.slow_path = sum.slow;
    out.gsums.reserve(gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const double s = sum.gsum[i];
        Enclosure e{step_down(s * (1.0 - kGsumRelSlop)), step_up(s * (1.0 + kGsumRelSlop))};
        if (e.lo < 0.0) e.lo = 0.0;
        out.gsums.push_back(e + sum.gsum_slow[i]);
    }
    return out;
}

SweepSummary sweep_level_summary(int n, const PsiSpec& psi, const DimFnSpec& g, int threads) {
    const SweepStats s = sweep_level(n, psi, {g}, false, threads);
    return {s.pair_count, s.piece_count, s.count_violations, s.gsums.at(0)};
}

std::uint64_t repeated_box_count(int n, const PsiSpec& psi) {
    Rational t_up;
    double t;
    if (auto ex = psi_exact_pow2(psi, n)) {
        t_up = *ex;
        t = Enclosure::of(*ex).mid();
    } else {
        const Enclosure te = psi_eval(psi, Rational::pow2(n));
        t = te.mid();
        t_up = Rational(mpq_class(te.hi));
    }
    const double inv_delta = 20.0 * static_cast<double>(std::int64_t{1} << n) / t;
    std::uint64_t boxes = 0;
    for (const auto& it : repeated_cover_items(n, t_up, false)) {
        const DD c = dd_div_d(static_cast<double>(it.center.num().get_si()),
                              static_cast<double>(it.center.den().get_si()));
        // Radius needs only double accuracy (its box-count error is
        // sub-unit); the center needs double-double.
        const DD rad{Enclosure::of(it.radicand).mid(), 0.0};
        const DD r = dd_div(dd_sqrt(rad), DD{static_cast<double>(it.u), 0.0});
        DD x0 = dd_add(c, DD{-r.hi, -r.lo});
        DD x1 = dd_add(c, r);
        if (x1.hi <= 0.0 || x0.hi >= 1.0) continue;
        if (x0.hi < 0.0) x0 = {0.0, 0.0};
        if (x1.hi > 1.0) x1 = {1.0, 0.0};
        boxes += box_span_dd(x0, x1, inv_delta);
    }
    return boxes;
}

}  // namespace parcov
