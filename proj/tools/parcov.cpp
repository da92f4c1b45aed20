// parcov: exact solution-set geometry, covers, and series analysis for
// integer quadratic approximation on the unit interval.
//
// Subcommands: enumerate, delta, lemma1, cover, tailsum, series,
// dimension. Reports go to --out as CSV/JSON plus a manifest.json with
// a config snapshot, timings and output checksums. Report files are
// byte-identical across reruns and thread counts.

#include "parcov/approx_sets.hpp"
#include "parcov/asymptotics.hpp"
#include "parcov/cover.hpp"
#include "parcov/parallel.hpp"
#include "parcov/quad_poly.hpp"
#include "parcov/report_io.hpp"
#include "parcov/run_config.hpp"
#include "parcov/scale_functions.hpp"
#include "parcov/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

namespace parcov {
namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string enc_lo(const Enclosure& e) { return format_double(e.lo); }
std::string enc_hi(const Enclosure& e) { return format_double(e.hi); }

ordered_json enc_json(const Enclosure& e) {
    return ordered_json{{"lo", e.lo}, {"hi", e.hi}};
}

ordered_json qi_json(const QuadIrr& v) {
    return ordered_json{{"p", v.rational_part().str()},
                        {"q", v.root_coeff().str()},
                        {"d", v.radicand().get_str()},
                        {"r", "1"}};
}

std::string kind_name(RootKind k) {
    switch (k) {
        case RootKind::repeated: return "repeated";
        case RootKind::distinct_real: return "distinct_real";
        default: return "complex";
    }
}

CoverEngine engine_of(const std::string& s) {
    if (s == "auto") return CoverEngine::automatic;
    if (s == "exact") return CoverEngine::exact;
    if (s == "fast") return CoverEngine::fast;
    throw ConfigError("engine: expected auto|exact|fast, got '" + s + "'");
}

struct Emitter {
    std::filesystem::path dir;
    RunManifest manifest;

    void add(const std::string& name, const std::string& data) {
        const std::string sum = write_file(dir / name, data);
        manifest.outputs.push_back({name, sum});
    }
};

int run_enumerate(const RunConfig& cfg, Emitter& em) {
    if (cfg.n > cfg.cap_level)
        throw ResourceCapError("enumerate: level " + std::to_string(cfg.n) +
                               " exceeds --cap-level " + std::to_string(cfg.cap_level));
    CsvWriter csv({"level", "a2", "a1", "a0", "D", "kind"});
    enumerate_block(cfg.n, [&](const IntegerQuadratic& f) {
        const std::int64_t d = discriminant(f);
        const char* kind = d > 0 ? "distinct_real" : (d == 0 ? "repeated" : "complex");
        csv.row({std::to_string(cfg.n), std::to_string(f.a2), std::to_string(f.a1),
                 std::to_string(f.a0), std::to_string(d), kind});
    });
    em.add("enumerate.csv", csv.text());
    return kOk;
}

int run_delta(const RunConfig& cfg, Emitter& em) {
    if (!cfg.a2 || !cfg.a1 || !cfg.a0)
        throw ConfigError("delta: --a2, --a1 and --a0 are required");
    const IntegerQuadratic f{*cfg.a2, *cfg.a1, *cfg.a0};
    const Rational t = Rational::parse(cfg.t);
    if (t.sign() <= 0) throw ConfigError("delta: --t must be positive");
    const IntervalUnion u = delta_set(f, t);
    ordered_json j;
    j["a2"] = f.a2;
    j["a1"] = f.a1;
    j["a0"] = f.a0;
    j["t"] = t.str();
    j["kind"] = kind_name(classify(f).kind);
    ordered_json parts = ordered_json::array();
    for (const auto& p : u.parts()) {
        parts.push_back(ordered_json{{"lo", qi_json(p.lo)},
                                     {"hi", qi_json(p.hi)},
                                     {"lo_open", p.lo_open},
                                     {"hi_open", p.hi_open}});
    }
    j["endpoints"] = parts;
    j["measure"] = enc_json(u.measure());
    em.add("delta.json", j.dump(2) + "\n");
    return kOk;
}

int run_lemma1(const RunConfig& cfg, Emitter& em) {
    const PsiSpec psi = PsiSpec::parse(cfg.psi);
    CsvWriter csv({"n", "a2", "a1", "measure_lo", "measure_hi", "bound", "passed", "components"});
    std::uint64_t failures = 0;
    auto row = [&](const LemmaOneReport& r) {
        csv.row({std::to_string(r.n), std::to_string(r.a2), std::to_string(r.a1),
                 enc_lo(r.measure), enc_hi(r.measure), r.bound.str(), r.passed ? "true" : "false",
                 std::to_string(r.component_count)});
        if (!r.passed) ++failures;
    };
    if (cfg.all_pairs) {
        std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
        enumerate_block_pairs(cfg.n,
                              [&](std::int64_t a2, std::int64_t a1) { pairs.emplace_back(a2, a1); });
        std::vector<LemmaOneReport> reps(pairs.size());
        parallel_reduce<int>(
            0, static_cast<std::int64_t>(pairs.size()), 256, cfg.threads,
            [&](std::int64_t lo, std::int64_t hi) {
                for (std::int64_t i = lo; i < hi; ++i)
                    reps[static_cast<std::size_t>(i)] =
                        lemma1_verify(pairs[static_cast<std::size_t>(i)].first,
                                      pairs[static_cast<std::size_t>(i)].second, cfg.n, psi);
                return 0;
            },
            [](int a, int) { return a; }, 0);
        for (const auto& r : reps) row(r);
    } else {
        if (!cfg.a2 || !cfg.a1) throw ConfigError("lemma1: need --a2 and --a1, or --all-pairs");
        row(lemma1_verify(*cfg.a2, *cfg.a1, cfg.n, psi));
    }
    em.add("lemma1.csv", csv.text());
    if (failures) {
        std::cerr << "lemma1: " << failures << " pair(s) FAILED the measure bound\n";
        return kInvariantViolation;
    }
    return kOk;
}

int run_cover(const RunConfig& cfg, Emitter& em) {
    const PsiSpec psi = PsiSpec::parse(cfg.psi);
    const DimFnSpec g = DimFnSpec::parse(cfg.g);
    if (cfg.n > cfg.cap_level) throw ResourceCapError("cover: level exceeds --cap-level");
    const auto t0 = Clock::now();
    const CoverLevelReport r =
        cover_level(cfg.n, psi, g, engine_of(cfg.engine), cfg.threads, cfg.repeated_realized);
    em.manifest.per_level_ms.emplace_back(
        cfg.n, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    CsvWriter csv({"n", "rep_count", "rep_gsum_lo", "rep_gsum_hi", "pairs", "pieces", "gsum_lo",
                   "gsum_hi"});
    csv.row({std::to_string(r.n), std::to_string(r.repeated_count), enc_lo(r.repeated_gsum),
             enc_hi(r.repeated_gsum), std::to_string(r.distinct_pair_count),
             std::to_string(r.chopped_piece_count), enc_lo(r.distinct_gsum),
             enc_hi(r.distinct_gsum)});
    em.add("cover.csv", csv.text());
    if (r.count_violations) {
        std::cerr << "cover: " << r.count_violations
                  << " pair(s) exceeded the per-pair piece bound 640*2^n\n";
        return kInvariantViolation;
    }
    return kOk;
}

int run_tailsum(const RunConfig& cfg, Emitter& em) {
    const PsiSpec psi = PsiSpec::parse(cfg.psi);
    const DimFnSpec g = DimFnSpec::parse(cfg.g);
    if (cfg.n_max > cfg.cap_level) throw ResourceCapError("tailsum: --to exceeds --cap-level");
    const TailSumReport rep =
        tail_sum(cfg.n_min, cfg.n_max, psi, g, engine_of(cfg.engine), cfg.threads);
    ordered_json j;
    j["n_start"] = rep.n_start;
    j["n_end"] = rep.n_end;
    j["tail"] = enc_json(rep.tail);
    ordered_json trend = ordered_json::array();
    for (const auto& [N, t] : rep.trend)
        trend.push_back(ordered_json{{"N", N}, {"tail", enc_json(t)}});
    j["trend"] = trend;
    em.add("tailsum.json", j.dump(2) + "\n");
    CsvWriter csv({"N", "tail_lo", "tail_hi", "level_gsum_lo", "level_gsum_hi"});
    for (std::size_t i = 0; i < rep.trend.size(); ++i) {
        csv.row({std::to_string(rep.trend[i].first), enc_lo(rep.trend[i].second),
                 enc_hi(rep.trend[i].second), enc_lo(rep.levels[i].total_gsum),
                 enc_hi(rep.levels[i].total_gsum)});
    }
    em.add("tailsum_trend.csv", csv.text());
    std::uint64_t violations = 0;
    for (const auto& l : rep.levels) violations += l.count_violations;
    return violations ? kInvariantViolation : kOk;
}

int run_series(const RunConfig& cfg, Emitter& em) {
    const PsiSpec psi = PsiSpec::parse(cfg.psi);
    const DimFnSpec g = DimFnSpec::parse(cfg.g);
    const SeriesReport rep = classify_series(psi, g, cfg.q_max);
    ordered_json j;
    j["psi"] = psi.str();
    j["g"] = g.str();
    j["classification"] = to_string(rep.classification);
    j["exact_rule_applied"] = rep.exact_rule_applied;
    j["power_exponent"] = rep.power_exponent.str();
    ordered_json les = ordered_json::array();
    for (const auto& e : rep.log_exponents) les.push_back(e.str());
    j["log_exponents"] = les;
    ordered_json sums = ordered_json::array();
    for (const auto& [q, s] : rep.partial_sums)
        sums.push_back(ordered_json{{"q_max", q}, {"sum", enc_json(s)}});
    j["partial_sums"] = sums;
    ordered_json ratios = ordered_json::array();
    for (const auto& [n, r] : rep.condensation_ratio)
        ratios.push_back(ordered_json{{"n", n}, {"ratio", enc_json(r)}});
    j["condensation_ratio"] = ratios;
    em.add("series.json", j.dump(2) + "\n");
    return kOk;
}

int run_dimension(const RunConfig& cfg, Emitter& em) {
    if (cfg.n_max > cfg.cap_level) throw ResourceCapError("dimension: --nmax exceeds --cap-level");
    const Rational tau = Rational::parse(cfg.tau);
    const auto t0 = Clock::now();
    const DimensionReport rep = estimate_dimension(tau, cfg.n_min, cfg.n_max, cfg.threads);
    em.manifest.per_level_ms.emplace_back(
        cfg.n_max, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    if (rep.too_few_levels)
        std::cerr << "dimension: fewer than 3 levels; slope estimate unreliable\n";
    ordered_json j;
    j["tau"] = rep.tau.str();
    j["target"] = rep.target.str();
    j["target_value"] = rep.target.approx();
    j["slope_estimate"] = rep.slope_estimate;
    j["too_few_levels"] = rep.too_few_levels;
    ordered_json rows = ordered_json::array();
    for (const auto& [n, count, delta] : rep.box_counts)
        rows.push_back(ordered_json{{"n", n}, {"count", count}, {"delta", delta}});
    j["box_counts"] = rows;
    em.add("dimension.json", j.dump(2) + "\n");
    CsvWriter csv({"n", "delta", "count"});
    for (const auto& [n, count, delta] : rep.box_counts)
        csv.row({std::to_string(n), format_double(delta), std::to_string(count)});
    em.add("dimension.csv", csv.text());
    return kOk;
}

int dispatch(const RunConfig& cfg) {
    Emitter em;
    em.dir = cfg.out_dir;
    em.manifest.version = kVersion;
    em.manifest.config_text = cfg.serialize();
    const auto t0 = Clock::now();

    int rc = kOk;
    if (cfg.subcommand == "enumerate") rc = run_enumerate(cfg, em);
    else if (cfg.subcommand == "delta") rc = run_delta(cfg, em);
    else if (cfg.subcommand == "lemma1") rc = run_lemma1(cfg, em);
    else if (cfg.subcommand == "cover") rc = run_cover(cfg, em);
    else if (cfg.subcommand == "tailsum") rc = run_tailsum(cfg, em);
    else if (cfg.subcommand == "series") rc = run_series(cfg, em);
    else if (cfg.subcommand == "dimension") rc = run_dimension(cfg, em);
    else throw ConfigError("unknown subcommand '" + cfg.subcommand + "'");

    em.manifest.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    write_file(em.dir / "manifest.json", em.manifest.to_json());
    for (const auto& o : em.manifest.outputs)
        std::cout << o.path << " fnv1a64=" << o.checksum << "\n";
    return rc;
}

int main_impl(int argc, char** argv) {
    CLI::App app{"covers, solution sets and series for quadratic approximation on [0,1]"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_file;
    std::int64_t arg_a2 = 0, arg_a1 = 0, arg_a0 = 0;

    app.add_option("--config", config_file, "key = value config file (flags override)");
    auto* o_out = app.add_option("--out", cfg.out_dir, "output directory");
    auto* o_thr = app.add_option("--threads", cfg.threads, "worker threads");
    auto* o_prec = app.add_option("--precision-bits", cfg.precision_bits,
                                  "target MPFR working precision");
    auto* o_cap = app.add_option("--cap-level", cfg.cap_level, "refuse levels beyond this cap");

    auto* c_enum = app.add_subcommand("enumerate", "emit a dyadic block as CSV");
    auto* o_en_n = c_enum->add_option("--n", cfg.n, "block level");

    auto* c_delta = app.add_subcommand("delta", "exact solution set of |F| < t");
    c_delta->add_option("--a2", arg_a2)->required();
    c_delta->add_option("--a1", arg_a1)->required();
    c_delta->add_option("--a0", arg_a0)->required();
    auto* o_t = c_delta->add_option("--t", cfg.t, "threshold, rational num/den");

    auto* c_lem = app.add_subcommand("lemma1", "fixed-pair union measure bound");
    auto* o_lem_n = c_lem->add_option("--n", cfg.n, "block level");
    auto* o_lem_a2 = c_lem->add_option("--a2", arg_a2);
    auto* o_lem_a1 = c_lem->add_option("--a1", arg_a1);
    c_lem->add_flag("--all-pairs", cfg.all_pairs, "verify every pair of the block");
    auto* o_lem_psi = c_lem->add_option("--psi-spec,--psi", cfg.psi, "pow:<tau> or powlog:<tau>;<a,..>;<eps>");

    auto* c_cov = app.add_subcommand("cover", "level cover report");
    auto* o_cov_n = c_cov->add_option("--n", cfg.n, "block level");
    auto* o_cov_psi = c_cov->add_option("--psi-spec,--psi", cfg.psi);
    auto* o_cov_g = c_cov->add_option("--g-spec,--g", cfg.g);
    auto* o_cov_eng = c_cov->add_option("--engine", cfg.engine, "auto|exact|fast");
    c_cov->add_flag("--repeated-realized", cfg.repeated_realized,
                    "restrict the repeated cover to realized polynomials");

    auto* c_tail = app.add_subcommand("tailsum", "tail of level g-sums");
    auto* o_tl_from = c_tail->add_option("--from", cfg.n_min);
    auto* o_tl_to = c_tail->add_option("--to", cfg.n_max);
    auto* o_tl_psi = c_tail->add_option("--psi-spec,--psi", cfg.psi);
    auto* o_tl_g = c_tail->add_option("--g-spec,--g", cfg.g);
    auto* o_tl_eng = c_tail->add_option("--engine", cfg.engine);

    auto* c_ser = app.add_subcommand("series", "criterion series classification");
    auto* o_sr_psi = c_ser->add_option("--psi-spec,--psi", cfg.psi);
    auto* o_sr_g = c_ser->add_option("--g-spec,--g", cfg.g);
    auto* o_sr_q = c_ser->add_option("--qmax", cfg.q_max);

    auto* c_dim = app.add_subcommand("dimension", "box-counting dimension estimate");
    auto* o_dm_tau = c_dim->add_option("--tau", cfg.tau);
    auto* o_dm_nmin = c_dim->add_option("--nmin", cfg.n_min);
    auto* o_dm_nmax = c_dim->add_option("--nmax", cfg.n_max);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        if (!config_file.empty()) {
            std::ifstream in(config_file);
            if (!in) throw ConfigError("cannot read config file " + config_file);
            const std::string text((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
            // Values parsed from flags were already written into cfg;
            // capture them, apply the file, then restore explicit flags.
            const RunConfig flag_cfg = cfg;
            cfg.apply_file(text);
            auto restore = [&](const CLI::Option* opt, auto member) {
                if (opt->count()) cfg.*member = flag_cfg.*member;
            };
            restore(o_out, &RunConfig::out_dir);
            restore(o_thr, &RunConfig::threads);
            restore(o_prec, &RunConfig::precision_bits);
            restore(o_cap, &RunConfig::cap_level);
            if (o_en_n->count() || o_lem_n->count() || o_cov_n->count()) cfg.n = flag_cfg.n;
            restore(o_t, &RunConfig::t);
            if (o_lem_psi->count() || o_cov_psi->count() || o_sr_psi->count() || o_tl_psi->count())
                cfg.psi = flag_cfg.psi;
            if (o_cov_g->count() || o_sr_g->count() || o_tl_g->count()) cfg.g = flag_cfg.g;
            if (o_cov_eng->count() || o_tl_eng->count()) cfg.engine = flag_cfg.engine;
            if (o_tl_from->count() || o_dm_nmin->count()) cfg.n_min = flag_cfg.n_min;
            if (o_tl_to->count() || o_dm_nmax->count()) cfg.n_max = flag_cfg.n_max;
            restore(o_sr_q, &RunConfig::q_max);
            restore(o_dm_tau, &RunConfig::tau);
        }
        cfg.subcommand = app.get_subcommands().front()->get_name();
        if (cfg.subcommand == "delta") {
            cfg.a2 = arg_a2;
            cfg.a1 = arg_a1;
            cfg.a0 = arg_a0;
        }
        if (cfg.subcommand == "lemma1") {
            if (o_lem_a2->count()) cfg.a2 = arg_a2;
            if (o_lem_a1->count()) cfg.a1 = arg_a1;
        }
        if (cfg.threads < 1) throw ConfigError("--threads must be >= 1");
        return dispatch(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomainError;
    } catch (const ResourceCapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kResourceCap;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kInvariantViolation;
    }
}

}  // namespace
}  // namespace parcov

int main(int argc, char** argv) { return parcov::main_impl(argc, argv); }
