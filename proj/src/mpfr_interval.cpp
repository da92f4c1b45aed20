#include "parcov/mpfr_interval.hpp"

#include <cassert>

namespace parcov {

MpfrInterval MpfrInterval::operator+(const MpfrInterval& b) const {
    MpfrInterval r(std::max(prec_, b.prec_));
    mpfr_add(r.lo_, lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, b.hi_, MPFR_RNDU);
    return r;
}

MpfrInterval MpfrInterval::operator-(const MpfrInterval& b) const {
    MpfrInterval r(std::max(prec_, b.prec_));
    mpfr_sub(r.lo_, lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, b.lo_, MPFR_RNDU);
    return r;
}

MpfrInterval MpfrInterval::operator-() const {
    MpfrInterval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

MpfrInterval MpfrInterval::operator*(const MpfrInterval& b) const {
    const mpfr_prec_t p = std::max(prec_, b.prec_);
    MpfrInterval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    // lo: minimum of the four products rounded down.
    mpfr_mul(r.lo_, lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(t, lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    // hi: maximum of the four products rounded up.
    mpfr_mul(r.hi_, lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(t, lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

MpfrInterval MpfrInterval::operator/(const MpfrInterval& b) const {
    assert(b.is_positive() || b.is_negative());
    const mpfr_prec_t p = std::max(prec_, b.prec_);
    MpfrInterval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    mpfr_div(r.lo_, lo_, b.lo_, MPFR_RNDD);
    mpfr_div(t, lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(r.hi_, lo_, b.lo_, MPFR_RNDU);
    mpfr_div(t, lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

MpfrInterval MpfrInterval::sqrt() const {
    assert(mpfr_sgn(lo_) >= 0);
    MpfrInterval r(prec_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

MpfrInterval MpfrInterval::log() const {
    assert(mpfr_sgn(lo_) > 0);
    MpfrInterval r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

MpfrInterval MpfrInterval::exp() const {
    MpfrInterval r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

MpfrInterval MpfrInterval::pow(const Rational& e) const {
    if (e.is_zero()) return of_long(1, prec_);
    return (log() * of(e, prec_)).exp();
}

double MpfrInterval::width() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

}  // namespace parcov
