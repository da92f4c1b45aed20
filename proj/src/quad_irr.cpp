#include "parcov/quad_irr.hpp"

#include "parcov/mpfr_interval.hpp"

#include <cassert>
#include <stdexcept>

namespace parcov {

namespace {

// Trial-division bound for pulling square factors out of the radicand.
// Equality stays semantically correct for radicands that keep a large
// square factor; extraction just canonicalizes the common cases, so a
// small bound keeps construction cheap on hot paths.
constexpr unsigned long kSquareFactorBound = 7;

// Exact sign of A + B*sqrt(m) with m a positive non-square integer.
int sign_single_radical(const Rational& a, const Rational& b, const mpz_class& m) {
    const int sa = a.sign(), sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: |A| vs |B|*sqrt(m); squares compare exactly.
    const Rational a2 = a * a;
    const Rational b2m = b * b * Rational(m);
    const int c = (a2 <=> b2m) == std::strong_ordering::less ? -1 : (a2 == b2m ? 0 : 1);
    // a2 == b2m would make sqrt(m) rational, which normalization excludes.
    assert(c != 0);
    return c > 0 ? sa : sb;
}

std::strong_ordering from_sign(int s) {
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace

QuadIrr::QuadIrr(const Rational& p, const Rational& q, const Rational& d) : p_(p), q_(q) {
    if (d.sign() < 0) throw std::domain_error("QuadIrr: negative radicand");
    // q*sqrt(a/b) = (q/b)*sqrt(a*b): integer radicand, coefficient absorbs 1/b.
    m_ = d.num() * d.den();
    q_ = q_ / Rational(d.den());
    normalize_();
}

void QuadIrr::normalize_() {
    if (q_.is_zero() || m_ == 0) {
        q_ = Rational(0);
        m_ = 0;
        return;
    }
    // Pull square factors: small primes first, then a whole-square test.
    mpz_class root;
    for (unsigned long f = 2; f <= kSquareFactorBound; ++f) {
        const mpz_class f2 = mpz_class(f) * static_cast<long>(f);
        if (f2 > m_) break;
        while (mpz_divisible_p(m_.get_mpz_t(), f2.get_mpz_t())) {
            m_ /= f2;
            q_ *= Rational(static_cast<long>(f));
        }
    }
    if (mpz_perfect_square_p(m_.get_mpz_t())) {
        mpz_sqrt(root.get_mpz_t(), m_.get_mpz_t());
        p_ += q_ * Rational(root);
        q_ = Rational(0);
        m_ = 0;
    }
}

const Rational& QuadIrr::rational_value() const {
    if (!is_rational()) throw std::domain_error("QuadIrr: value is irrational");
    return p_;
}

int QuadIrr::sign() const {
    if (is_rational()) return p_.sign();
    return sign_single_radical(p_, q_, m_);
}

QuadIrr QuadIrr::operator-() const {
    QuadIrr r;
    r.p_ = -p_;
    r.q_ = -q_;
    r.m_ = m_;
    return r;
}

QuadIrr QuadIrr::add_rational(const Rational& x) const {
    QuadIrr r = *this;
    r.p_ += x;
    return r;
}

QuadIrr QuadIrr::mul_rational(const Rational& x) const {
    if (x.is_zero()) return QuadIrr();
    QuadIrr r = *this;
    r.p_ *= x;
    r.q_ *= x;
    return r;
}

QuadIrr QuadIrr::add(const QuadIrr& o) const {
    if (o.is_rational()) return add_rational(o.p_);
    if (is_rational()) return o.add_rational(p_);
    if (m_ != o.m_) throw std::domain_error("QuadIrr: incompatible radicands in add");
    QuadIrr r;
    r.p_ = p_ + o.p_;
    r.q_ = q_ + o.q_;
    r.m_ = m_;
    if (r.q_.is_zero()) r.m_ = 0;
    return r;
}

QuadIrr QuadIrr::sub(const QuadIrr& o) const { return add(-o); }

std::strong_ordering QuadIrr::compare(const QuadIrr& o) const {
    // Enclosure separation first; one double-precision refinement is
    // almost always enough.
    const Enclosure a = enclose_fast(), b = o.enclose_fast();
    if (a.hi < b.lo) return std::strong_ordering::less;
    if (b.hi < a.lo) return std::strong_ordering::greater;

    // Exact fallback: sign of (p - o.p) + q*sqrt(m) - o.q*sqrt(o.m).
    const Rational A = p_ - o.p_;
    if (is_rational() && o.is_rational()) return from_sign(A.sign());
    if (o.is_rational()) return from_sign(sign_single_radical(A, q_, m_));
    if (is_rational()) return from_sign(-sign_single_radical(-A, o.q_, o.m_));
    if (m_ == o.m_) return from_sign(sign_single_radical(A, q_ - o.q_, m_));

    // Distinct radicands: compare L = A + q*sqrt(m) against R = o.q*sqrt(o.m).
    // L is irrational, so sL != 0; R has the sign of o.q.
    const int sL = sign_single_radical(A, q_, m_);
    const int sR = o.q_.sign();
    if (sL != sR) return from_sign(sL - sR > 0 ? 1 : -1);
    // Same strict sign: compare squares; L^2 - R^2 = (A^2 + q^2 m - o.q^2 o.m) + 2Aq*sqrt(m).
    const Rational c = A * A + q_ * q_ * Rational(m_) - o.q_ * o.q_ * Rational(o.m_);
    const Rational d = Rational(2) * A * q_;
    int s2;
    if (d.is_zero()) {
        s2 = c.sign();
    } else {
        s2 = sign_single_radical(c, d, m_);
    }
    return from_sign(sL > 0 ? s2 : -s2);
}

std::strong_ordering QuadIrr::compare(const Rational& r) const { return compare(QuadIrr(r)); }

Enclosure QuadIrr::enclose_fast() const {
    Enclosure e = Enclosure::of(p_);
    if (!is_rational()) {
        e += Enclosure::of(q_) * Enclosure::of(m_).sqrt();
    }
    return e;
}

Enclosure QuadIrr::enclose(const Rational& abs_tol) const {
    if (abs_tol.sign() <= 0) throw std::domain_error("QuadIrr::enclose: tolerance must be positive");
    const double tol = abs_tol.approx();
    {
        const Enclosure e = enclose_fast();
        if (e.width() <= tol) return e;
    }
    return refine_enclosure(
        [&](mpfr_prec_t p) {
            MpfrInterval v = MpfrInterval::of(p_, p);
            if (!is_rational()) {
                v = v + MpfrInterval::of(q_, p) * MpfrInterval::of(m_, p).sqrt();
            }
            return v;
        },
        tol);
}

std::string QuadIrr::str() const {
    if (is_rational()) return p_.str();
    return p_.str() + "+" + q_.str() + "*sqrt(" + m_.get_str() + ")";
}

}  // namespace parcov
