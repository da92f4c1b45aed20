#pragma once

// Parametric families of approximating functions psi and dimension
// functions g:
//
//   psi(q) = q^(-tau) * prod_i (log_i q)^(-alpha_i) * (log_t q)^(-eps)
//   g(r)   = r^s * prod_i (log_i (1/r))^(beta_i)
//
// where log_i is the i-times iterated natural log; eps > 0 adds decay
// on the innermost log, so psi_eps <= psi_0. Evaluation is
// certified (MPFR interval with precision doubling) with an exact
// rational fast path for pure powers. Arguments must lie in the domain
// where every iterated log exceeds 1; evaluating outside it is a hard
// error rather than a clamp.

#include "parcov/enclosure.hpp"
#include "parcov/errors.hpp"
#include "parcov/mpfr_interval.hpp"
#include "parcov/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace parcov {

struct PsiSpec {
    Rational tau;                  // decay exponent, > 0
    std::vector<Rational> alphas;  // iterated-log exponents alpha_1..alpha_t
    Rational eps = Rational(0);    // extra decay exponent on the innermost log

    void validate() const;
    int log_depth() const { return static_cast<int>(alphas.size()); }
    bool pure_power() const;

    // Compact grammar: "pow:<tau>" or "powlog:<tau>;<a1,a2,...>;<eps>".
    static PsiSpec parse(const std::string& s);
    std::string str() const;
};

struct DimFnSpec {
    Rational s;                   // power exponent, > 0
    std::vector<Rational> betas;  // log-correction exponents

    void validate() const;
    int log_depth() const { return static_cast<int>(betas.size()); }
    bool pure_power() const { return betas.empty(); }

    static DimFnSpec parse(const std::string& s);
    std::string str() const;
};

// Theorem-5 growth window x^{s1} < g(x) < x^{s2} near zero. For powers
// x^s with x < 1 this forces s2 < s < s1, and the theorem requires
// 2*s1 < 3*s2 with s2 <= 1.
struct GrowthWindow {
    Rational s1, s2;
    void validate() const;
};

// -------- domain thresholds --------

// Certified: q strictly above the psi domain threshold (all iterated
// logs > 1). Pure powers use threshold 1.
bool psi_in_domain(const PsiSpec& spec, const Rational& q);
// Certified: 0 < r strictly below the g domain threshold 1/exp_t(1).
bool g_in_domain(const DimFnSpec& spec, const Rational& r);

// -------- evaluation --------

// Certified enclosure of psi(q); throws DomainError if q is not
// certified in-domain. rel_tol steers the refinement target.
Enclosure psi_eval(const PsiSpec& spec, const Rational& q, double rel_tol = 1e-12);
Enclosure g_eval(const DimFnSpec& spec, const Rational& r, double rel_tol = 1e-12);

// Exact value when the spec/argument pair admits one (pure power with
// integer exponent, or a power-of-two argument whose exponent multiple
// is integral); nullopt otherwise.
std::optional<Rational> psi_exact(const PsiSpec& spec, const Rational& q);
std::optional<Rational> g_exact(const DimFnSpec& spec, const Rational& r);

// psi(2^n) as an exact rational, or nullopt.
std::optional<Rational> psi_exact_pow2(const PsiSpec& spec, int n);

// Interval evaluation at caller-chosen precision (used by series sums).
MpfrInterval psi_eval_iv(const PsiSpec& spec, const Rational& q, mpfr_prec_t prec);
MpfrInterval g_eval_iv(const DimFnSpec& spec, const Rational& r, mpfr_prec_t prec);

// g over an interval argument (cover piece lengths are irrational).
// Requires a strictly positive argument, and for log-corrected g an
// argument certified inside the log domain; throws DomainError.
MpfrInterval g_eval_on(const DimFnSpec& spec, const MpfrInterval& r);

// -------- checks --------

struct GrowthCheck {
    bool ok = false;
    std::optional<Rational> witness;  // first violating grid point
};

// Certified strict x^{s1} < g(x) < x^{s2} at every grid point.
GrowthCheck check_growth_window(const DimFnSpec& g, const GrowthWindow& w,
                                const std::vector<Rational>& grid);

struct DecayThreshold {
    std::optional<int> n0;  // smallest level certified through the cap
    int cap = 0;
    std::vector<bool> certified;  // certified[n] for n in [1, cap]
};

// Smallest n0 <= cap with psi(a^n) < a^(-2n) certified for every
// n in [n0, cap].
DecayThreshold decay_threshold(const PsiSpec& spec, long base, int cap = 64);

// True if psi is certified nonincreasing across the grid (exact for
// pure powers; adjacent-enclosure comparison otherwise).
bool psi_nonincreasing_on(const PsiSpec& spec, const std::vector<Rational>& grid);
bool g_nondecreasing_on(const DimFnSpec& spec, const std::vector<Rational>& grid);

}  // namespace parcov
