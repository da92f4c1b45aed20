#pragma once

// Exact quadratic irrationals p + q*sqrt(m) with rational p, q and a
// nonnegative integer radicand m. Values are immutable after
// construction and normalized so that:
//   - a rational radicand d = a/b is rewritten as sqrt(a*b)/b,
//   - perfect-square integer factors of m are pulled out of the root,
//   - rational values always have q == 0, m == 0.
// Equality and ordering are decided semantically: a fast double
// enclosure separates almost all pairs, with an exact algebraic
// fallback (sign tests by squaring) for the rest.

#include "parcov/enclosure.hpp"
#include "parcov/rational.hpp"

#include <compare>
#include <string>

namespace parcov {

class QuadIrr {
  public:
    QuadIrr() : p_(0), q_(0), m_(0) {}
    QuadIrr(const Rational& value) : p_(value), q_(0), m_(0) {}  // NOLINT: implicit by design
    QuadIrr(long value) : p_(value), q_(0), m_(0) {}             // NOLINT

    // Value p + q*sqrt(d) with rational radicand d >= 0.
    QuadIrr(const Rational& p, const Rational& q, const Rational& d);

    const Rational& rational_part() const { return p_; }
    const Rational& root_coeff() const { return q_; }
    const mpz_class& radicand() const { return m_; }

    bool is_rational() const { return q_.is_zero(); }
    // Requires is_rational().
    const Rational& rational_value() const;

    int sign() const;

    QuadIrr operator-() const;
    QuadIrr add_rational(const Rational& r) const;
    QuadIrr sub_rational(const Rational& r) const { return add_rational(-r); }
    QuadIrr mul_rational(const Rational& r) const;
    // Sum/difference of values over the same radicand (or with either
    // side rational). Throws std::domain_error on incompatible radicands.
    QuadIrr add(const QuadIrr& o) const;
    QuadIrr sub(const QuadIrr& o) const;

    std::strong_ordering compare(const QuadIrr& o) const;
    std::strong_ordering compare(const Rational& r) const;
    bool operator==(const QuadIrr& o) const { return compare(o) == std::strong_ordering::equal; }

    // Fast certified enclosure from double arithmetic (width ~1 ulp scale).
    Enclosure enclose_fast() const;
    // Certified enclosure of width <= abs_tol (refined via MPFR); abs_tol > 0.
    Enclosure enclose(const Rational& abs_tol) const;

    // "p+q*sqrt(m)" textual form for reports.
    std::string str() const;

  private:
    void normalize_();

    Rational p_, q_;
    mpz_class m_;
};

inline std::strong_ordering qi_compare(const QuadIrr& a, const QuadIrr& b) { return a.compare(b); }
inline Enclosure qi_enclose(const QuadIrr& x, const Rational& abs_tol) { return x.enclose(abs_tol); }

}  // namespace parcov
