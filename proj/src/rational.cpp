#include "parcov/rational.hpp"

namespace parcov {

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty string");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: bad literal '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

Rational Rational::pow2(long e) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), 2, static_cast<unsigned long>(e >= 0 ? e : -e));
    return e >= 0 ? Rational(z) : Rational(mpz_class(1), z);
}

Rational Rational::pow_int(long e) const {
    if (e == 0) return Rational(1);
    if (is_zero() && e < 0) throw std::domain_error("Rational: 0^negative");
    const unsigned long ae = static_cast<unsigned long>(e >= 0 ? e : -e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), ae);
    mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), ae);
    return e >= 0 ? Rational(n, d) : Rational(d, n);
}

bool Rational::as_pow2(long& e) const {
    if (sign() <= 0) return false;
    if (num() == 1) {
        // 1/2^k
        const auto& d = den();
        if (mpz_popcount(d.get_mpz_t()) != 1) return false;
        e = -static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2) - 1);
        return true;
    }
    if (den() == 1) {
        const auto& n = num();
        if (mpz_popcount(n.get_mpz_t()) != 1) return false;
        e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2) - 1);
        return true;
    }
    return false;
}

std::string Rational::str() const {
    return v_.get_str();
}

}  // namespace parcov
