#pragma once

// Arbitrary-precision rational numbers, canonical at all times:
// denominator > 0 and gcd(|num|, den) == 1 after every operation.
// Thin value wrapper over GMP's mpq_class; the wrapper exists because
// mpq_class does not canonicalize on (num, den) construction.

#include <gmpxx.h>

#include <cassert>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace parcov {

class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}         // NOLINT: implicit by design
    Rational(int n) : v_(n) {}          // NOLINT
    Rational(long n, long d) : v_(n, d) { canon_(); }
    explicit Rational(const mpz_class& z) : v_(z) {}
    explicit Rational(const mpq_class& q) : v_(q) { canon_(); }
    Rational(const mpz_class& n, const mpz_class& d) : v_(n, d) { canon_(); }

    // Parses "num/den" or "num" (base 10). Throws std::invalid_argument on
    // malformed input or zero denominator.
    static Rational parse(const std::string& s);

    // 2^e for any integer e (negative allowed).
    static Rational pow2(long e);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_), no_canon{}); }
    Rational abs() const { return Rational(mpq_class(::abs(v_)), no_canon{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ + b.v_), no_canon{});
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ - b.v_), no_canon{});
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ * b.v_), no_canon{});
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(a.v_ / b.v_), no_canon{});
    }
    Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
    Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
    Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }
    Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    // x^e with integer exponent; e < 0 requires x != 0.
    Rational pow_int(long e) const;

    mpz_class floor() const { mpz_class r; mpz_fdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t()); return r; }
    mpz_class ceil() const { mpz_class r; mpz_cdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t()); return r; }

    // If the value is an exact power of two, returns true and sets e.
    bool as_pow2(long& e) const;

    // "num/den", or just "num" for integers. Round-trips through parse().
    std::string str() const;

    // Nearest double (round to nearest); not certified, for diagnostics only.
    double approx() const { return v_.get_d(); }

  private:
    struct no_canon {};
    Rational(mpq_class q, no_canon) : v_(std::move(q)) {}
    void canon_() {
        if (v_.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
        v_.canonicalize();
    }
    mpq_class v_;
};

inline Rational abs(const Rational& x) { return x.abs(); }

}  // namespace parcov
