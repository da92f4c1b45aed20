#pragma once

// Interval arithmetic over MPFR with directed rounding; the certified
// evaluation engine behind enclosures of irrational quantities
// (square roots, logs, rational powers). Precision is fixed per value;
// callers refine by re-evaluating at doubled precision.

#include "parcov/enclosure.hpp"
#include "parcov/rational.hpp"

#include <mpfr.h>

#include <utility>

namespace parcov {

class MpfrInterval {
  public:
    explicit MpfrInterval(mpfr_prec_t prec) : prec_(prec) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_ui(lo_, 0, MPFR_RNDD);
        mpfr_set_ui(hi_, 0, MPFR_RNDU);
    }
    MpfrInterval(const MpfrInterval& o) : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    MpfrInterval(MpfrInterval&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    MpfrInterval& operator=(MpfrInterval o) noexcept {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~MpfrInterval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static MpfrInterval of(const Rational& q, mpfr_prec_t prec) {
        MpfrInterval r(prec);
        mpfr_set_q(r.lo_, q.raw().get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, q.raw().get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static MpfrInterval of(const mpz_class& z, mpfr_prec_t prec) {
        MpfrInterval r(prec);
        mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    static MpfrInterval of_long(long v, mpfr_prec_t prec) {
        MpfrInterval r(prec);
        mpfr_set_si(r.lo_, v, MPFR_RNDD);
        mpfr_set_si(r.hi_, v, MPFR_RNDU);
        return r;
    }
    static MpfrInterval of(const Enclosure& e, mpfr_prec_t prec) {
        MpfrInterval r(prec);
        mpfr_set_d(r.lo_, e.lo, MPFR_RNDD);  // doubles are exact in mpfr
        mpfr_set_d(r.hi_, e.hi, MPFR_RNDU);
        return r;
    }

    mpfr_prec_t prec() const { return prec_; }

    MpfrInterval operator+(const MpfrInterval& b) const;
    MpfrInterval operator-(const MpfrInterval& b) const;
    MpfrInterval operator*(const MpfrInterval& b) const;
    MpfrInterval operator-() const;
    // Divisor interval must not contain zero.
    MpfrInterval operator/(const MpfrInterval& b) const;

    // Requires lo >= 0.
    MpfrInterval sqrt() const;
    // Requires lo > 0.
    MpfrInterval log() const;
    MpfrInterval exp() const;
    // x^e = exp(e*log(x)); requires lo > 0.
    MpfrInterval pow(const Rational& e) const;

    bool is_positive() const { return mpfr_sgn(lo_) > 0; }
    bool is_negative() const { return mpfr_sgn(hi_) < 0; }
    // Certified strict comparisons against exact rationals.
    bool certainly_lt(const Rational& q) const { return mpfr_cmp_q(hi_, q.raw().get_mpq_t()) < 0; }
    bool certainly_gt(const Rational& q) const { return mpfr_cmp_q(lo_, q.raw().get_mpq_t()) > 0; }
    bool certainly_lt(const MpfrInterval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }

    Enclosure to_enclosure() const {
        return {mpfr_get_d(lo_, MPFR_RNDD), mpfr_get_d(hi_, MPFR_RNDU)};
    }
    double width() const;

  private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

// Evaluates f at doubling precision until the result is narrower than
// abs_tol (or precision tops out); returns the final outward enclosure.
template <class F>
Enclosure refine_enclosure(F&& f, double abs_tol, mpfr_prec_t prec0 = 64, mpfr_prec_t prec_max = 8192) {
    Enclosure e{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (mpfr_prec_t p = prec0; p <= prec_max; p *= 2) {
        MpfrInterval iv = f(p);
        e = iv.to_enclosure();
        if (e.width() <= abs_tol) break;
    }
    return e;
}

}  // namespace parcov
