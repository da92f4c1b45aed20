#include "parcov/scale_functions.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace parcov {

namespace {

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
    return out;
}

std::string join_rationals(const std::vector<Rational>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].str();
    }
    return out;
}

// exp_t(1): threshold above which the t-times iterated log exceeds 1.
MpfrInterval iterated_exp_one(int t, mpfr_prec_t prec) {
    MpfrInterval v = MpfrInterval::of_long(1, prec);
    for (int i = 0; i < t; ++i) v = v.exp();
    return v;
}

// Certified q > exp_t(1) (strict); refines until decided. q rational
// and the threshold irrational for t >= 1, so this terminates.
bool above_threshold(const Rational& q, int t) {
    if (t == 0) return q > Rational(1);
    for (mpfr_prec_t p = 64; p <= 4096; p *= 2) {
        const MpfrInterval thr = iterated_exp_one(t, p);
        if (thr.certainly_lt(q)) return true;
        if (thr.certainly_gt(q)) return false;
    }
    return false;  // undecided at max precision: treat as out of domain
}

// Shared core: x^(p0) * prod_i (log_i x)^(e_i) at fixed precision,
// where x > threshold so every iterated log is > 1.
MpfrInterval eval_power_log(const Rational& x, const Rational& p0,
                            const std::vector<Rational>& log_exponents, mpfr_prec_t prec) {
    MpfrInterval xv = MpfrInterval::of(x, prec);
    MpfrInterval acc = xv.pow(p0);
    MpfrInterval l = std::move(xv);
    for (const Rational& e : log_exponents) {
        l = l.log();
        assert(l.is_positive());
        if (!e.is_zero()) acc = acc * l.pow(e);
    }
    return acc;
}

Enclosure refine_power_log(const Rational& x, const Rational& p0,
                           const std::vector<Rational>& log_exponents, double rel_tol) {
    Enclosure e;
    for (mpfr_prec_t p = 64; p <= 8192; p *= 2) {
        e = eval_power_log(x, p0, log_exponents, p).to_enclosure();
        const double scale = std::max(std::fabs(e.lo), std::fabs(e.hi));
        if (e.width() <= rel_tol * scale) break;
    }
    return e;
}

// Combined iterated-log exponents of psi: -alpha_i, with the extra
// decay -eps folded into the innermost level. With eps > 0 this makes
// psi_eps <= psi_0, the ordering that separates the two functions'
// approximable sets by a fixed Hausdorff scale.
std::vector<Rational> psi_log_exponents(const PsiSpec& spec) {
    std::vector<Rational> es;
    es.reserve(spec.alphas.size());
    for (const Rational& a : spec.alphas) es.push_back(-a);
    if (!es.empty()) es.back() -= spec.eps;
    return es;
}

}  // namespace

// -------- specs --------

void PsiSpec::validate() const {
    if (tau.sign() <= 0) throw ConfigError("psi: tau must be positive, got " + tau.str());
    if (alphas.empty() && !eps.is_zero())
        throw ConfigError("psi: eps requires at least one log factor");
}

bool PsiSpec::pure_power() const {
    if (!eps.is_zero()) return false;
    return std::all_of(alphas.begin(), alphas.end(), [](const Rational& a) { return a.is_zero(); });
}

PsiSpec PsiSpec::parse(const std::string& s) {
    PsiSpec spec;
    if (s.rfind("pow:", 0) == 0) {
        spec.tau = Rational::parse(s.substr(4));
    } else if (s.rfind("powlog:", 0) == 0) {
        const std::string body = s.substr(7);
        const auto c1 = body.find(';');
        const auto c2 = body.find(';', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ConfigError("psi: powlog wants '<tau>;<a1,...>;<eps>', got '" + s + "'");
        spec.tau = Rational::parse(body.substr(0, c1));
        spec.alphas = parse_rational_list(body.substr(c1 + 1, c2 - c1 - 1));
        spec.eps = Rational::parse(body.substr(c2 + 1));
    } else {
        throw ConfigError("psi: expected pow:<tau> or powlog:<tau>;<a,...>;<eps>, got '" + s + "'");
    }
    spec.validate();
    return spec;
}

std::string PsiSpec::str() const {
    if (alphas.empty() && eps.is_zero()) return "pow:" + tau.str();
    return "powlog:" + tau.str() + ";" + join_rationals(alphas) + ";" + eps.str();
}

void DimFnSpec::validate() const {
    if (s.sign() <= 0) throw ConfigError("g: exponent must be positive, got " + s.str());
}

DimFnSpec DimFnSpec::parse(const std::string& text) {
    DimFnSpec spec;
    if (text.rfind("pow:", 0) == 0) {
        spec.s = Rational::parse(text.substr(4));
    } else if (text.rfind("powlog:", 0) == 0) {
        const std::string body = text.substr(7);
        const auto c1 = body.find(';');
        if (c1 == std::string::npos)
            throw ConfigError("g: powlog wants '<s>;<b1,...>', got '" + text + "'");
        spec.s = Rational::parse(body.substr(0, c1));
        spec.betas = parse_rational_list(body.substr(c1 + 1));
    } else {
        throw ConfigError("g: expected pow:<s> or powlog:<s>;<b,...>, got '" + text + "'");
    }
    spec.validate();
    return spec;
}

std::string DimFnSpec::str() const {
    if (betas.empty()) return "pow:" + s.str();
    return "powlog:" + s.str() + ";" + join_rationals(betas);
}

void GrowthWindow::validate() const {
    if (s1.sign() <= 0 || s2.sign() <= 0) throw ConfigError("growth window: exponents must be positive");
    if (s2 > Rational(1)) throw ConfigError("growth window: s2 must be <= 1");
    if (!(Rational(2) * s1 < Rational(3) * s2)) throw ConfigError("growth window: needs 2*s1 < 3*s2");
}

// -------- domains --------

bool psi_in_domain(const PsiSpec& spec, const Rational& q) {
    if (q.sign() <= 0) return false;
    return above_threshold(q, spec.log_depth());
}

bool g_in_domain(const DimFnSpec& spec, const Rational& r) {
    if (r.sign() <= 0) return false;
    if (spec.log_depth() == 0) return r < Rational(1);
    if (r >= Rational(1)) return false;
    return above_threshold(Rational(1) / r, spec.log_depth());
}

// -------- evaluation --------

Enclosure psi_eval(const PsiSpec& spec, const Rational& q, double rel_tol) {
    if (!psi_in_domain(spec, q))
        throw DomainError("psi: argument " + q.str() + " below domain threshold");
    if (auto ex = psi_exact(spec, q)) return Enclosure::of(*ex);
    return refine_power_log(q, -spec.tau, psi_log_exponents(spec), rel_tol);
}

MpfrInterval psi_eval_iv(const PsiSpec& spec, const Rational& q, mpfr_prec_t prec) {
    return eval_power_log(q, -spec.tau, psi_log_exponents(spec), prec);
}

Enclosure g_eval(const DimFnSpec& spec, const Rational& r, double rel_tol) {
    if (!g_in_domain(spec, r))
        throw DomainError("g: argument " + r.str() + " outside domain (0, r_max)");
    if (auto ex = g_exact(spec, r)) return Enclosure::of(*ex);
    Enclosure e;
    for (mpfr_prec_t p = 64; p <= 8192; p *= 2) {
        e = g_eval_iv(spec, r, p).to_enclosure();
        const double scale = std::max(std::fabs(e.lo), std::fabs(e.hi));
        if (e.width() <= rel_tol * scale) break;
    }
    return e;
}

MpfrInterval g_eval_iv(const DimFnSpec& spec, const Rational& r, mpfr_prec_t prec) {
    return g_eval_on(spec, MpfrInterval::of(r, prec));
}

MpfrInterval g_eval_on(const DimFnSpec& spec, const MpfrInterval& r) {
    // g(r) = r^s * prod (log_i(1/r))^{beta_i}; logs evaluated on 1/r.
    if (!r.is_positive()) throw DomainError("g: interval argument must be positive");
    MpfrInterval acc = r.pow(spec.s);
    if (!spec.betas.empty()) {
        MpfrInterval l = MpfrInterval::of_long(1, r.prec()) / r;
        for (const Rational& b : spec.betas) {
            l = l.log();
            if (!l.is_positive())
                throw DomainError("g: argument outside the log-corrected domain");
            if (!b.is_zero()) acc = acc * l.pow(b);
        }
    }
    return acc;
}

namespace {

// x^e exactly, when representable: integer e, or x = 2^j with j*e integral.
std::optional<Rational> exact_rational_pow(const Rational& x, const Rational& e) {
    if (e.is_integer()) {
        if (!e.num().fits_slong_p()) return std::nullopt;
        return x.pow_int(e.num().get_si());
    }
    long j = 0;
    if (x.as_pow2(j)) {
        const Rational je = Rational(j) * e;
        if (je.is_integer() && je.num().fits_slong_p()) return Rational::pow2(je.num().get_si());
    }
    return std::nullopt;
}

}  // namespace

std::optional<Rational> psi_exact(const PsiSpec& spec, const Rational& q) {
    if (!spec.pure_power()) return std::nullopt;
    return exact_rational_pow(q, -spec.tau);
}

std::optional<Rational> g_exact(const DimFnSpec& spec, const Rational& r) {
    if (!spec.pure_power()) return std::nullopt;
    return exact_rational_pow(r, spec.s);
}

std::optional<Rational> psi_exact_pow2(const PsiSpec& spec, int n) {
    return psi_exact(spec, Rational::pow2(n));
}

// -------- checks --------

GrowthCheck check_growth_window(const DimFnSpec& g, const GrowthWindow& w,
                                const std::vector<Rational>& grid) {
    w.validate();
    for (const Rational& x : grid) {
        if (!g_in_domain(g, x))
            throw DomainError("growth window: grid point " + x.str() + " outside g domain");
        bool holds = false;
        if (g.pure_power()) {
            // x < 1: x^{s1} < x^{s} < x^{s2} iff s1 > s > s2, exactly.
            holds = (w.s1 > g.s) && (g.s > w.s2);
        } else {
            for (mpfr_prec_t p = 64; p <= 4096 && !holds; p *= 2) {
                const MpfrInterval gx = g_eval_iv(g, x, p);
                const MpfrInterval lo = eval_power_log(x, w.s1, {}, p);
                const MpfrInterval hi = eval_power_log(x, w.s2, {}, p);
                if (lo.certainly_lt(gx) && gx.certainly_lt(hi)) holds = true;
                if (gx.certainly_lt(lo) || hi.certainly_lt(gx)) break;  // certified violation
            }
        }
        if (!holds) return {false, x};
    }
    return {true, std::nullopt};
}

DecayThreshold decay_threshold(const PsiSpec& spec, long base, int cap) {
    if (base < 2) throw ConfigError("decay_threshold: base must be >= 2");
    DecayThreshold out;
    out.cap = cap;
    out.certified.assign(static_cast<size_t>(cap) + 1, false);
    for (int n = 1; n <= cap; ++n) {
        Rational q = Rational(base).pow_int(n);
        if (!psi_in_domain(spec, q)) continue;
        const Rational bound = Rational(base).pow_int(-2L * n);
        if (auto ex = psi_exact(spec, q)) {
            out.certified[static_cast<size_t>(n)] = (*ex < bound);
            continue;
        }
        for (mpfr_prec_t p = 64; p <= 2048; p *= 2) {
            const MpfrInterval v = psi_eval_iv(spec, q, p);
            if (v.certainly_lt(bound)) {
                out.certified[static_cast<size_t>(n)] = true;
                break;
            }
            if (v.certainly_gt(bound)) break;
        }
    }
    for (int n = cap; n >= 1; --n) {
        if (!out.certified[static_cast<size_t>(n)]) break;
        out.n0 = n;
    }
    return out;
}

// Both checks look for a *certified* violation across adjacent grid
// points and accept otherwise; non-strict monotonicity itself cannot be
// certified numerically, absence of violation can.
bool psi_nonincreasing_on(const PsiSpec& spec, const std::vector<Rational>& grid) {
    if (spec.pure_power()) return true;  // q^-tau with tau > 0 decreases
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        assert(grid[i] < grid[i + 1]);
        const MpfrInterval a = psi_eval_iv(spec, grid[i], 256);
        const MpfrInterval b = psi_eval_iv(spec, grid[i + 1], 256);
        if (a.certainly_lt(b)) return false;  // certified increase
    }
    return true;
}

bool g_nondecreasing_on(const DimFnSpec& spec, const std::vector<Rational>& grid) {
    if (spec.pure_power()) return true;
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        assert(grid[i] < grid[i + 1]);
        const MpfrInterval a = g_eval_iv(spec, grid[i], 256);
        const MpfrInterval b = g_eval_iv(spec, grid[i + 1], 256);
        if (b.certainly_lt(a)) return false;  // certified decrease
    }
    return true;
}

}  // namespace parcov
