#pragma once

// Integer quadratic polynomials F(x) = a2 x^2 + a1 x + a0 with a2 > 0
// (construction negates a2 < 0; a2 == 0 is rejected), plus the dyadic
// block bookkeeping used by the covers:
//   block n: 2^n <= max(a2, |a1|) < 2^{n+1}, with |a0| < 2^{n+2}.

#include "parcov/errors.hpp"
#include "parcov/quad_irr.hpp"
#include "parcov/rational.hpp"

#include <cstdint>
#include <optional>

namespace parcov {

struct IntegerQuadratic {
    std::int64_t a2 = 1, a1 = 0, a0 = 0;

    IntegerQuadratic() = default;
    IntegerQuadratic(std::int64_t c2, std::int64_t c1, std::int64_t c0) : a2(c2), a1(c1), a0(c0) {
        if (a2 == 0) throw DomainError("IntegerQuadratic: a2 must be nonzero");
        if (a2 < 0) { a2 = -a2; a1 = -a1; a0 = -a0; }
    }

    friend bool operator==(const IntegerQuadratic&, const IntegerQuadratic&) = default;
};

// max(a2, |a1|): the supremum norm over the linear-form coefficients.
inline std::int64_t height(const IntegerQuadratic& f) {
    const std::int64_t m = f.a1 < 0 ? -f.a1 : f.a1;
    return f.a2 > m ? f.a2 : m;
}

inline std::int64_t discriminant(const IntegerQuadratic& f) {
    return f.a1 * f.a1 - 4 * f.a2 * f.a0;
}

enum class RootKind { repeated, distinct_real, complex_pair };

// F = k(ux - v)^2 with k >= 1, u > 0, gcd(u, v) = 1.
struct RepeatedParams {
    std::int64_t k = 1, u = 1, v = 0;
};

struct RootData {
    RootKind kind = RootKind::complex_pair;
    std::int64_t discriminant = 0;
    // Present iff discriminant >= 0; alpha1 <= alpha2.
    std::optional<QuadIrr> alpha1, alpha2;
    // |F'(alpha1)| = |F'(alpha2)| = sqrt(D); present iff D >= 0.
    std::optional<QuadIrr> deriv_abs;
    std::optional<RepeatedParams> repeated;
};

RootData classify(const IntegerQuadratic& f);

struct DyadicBlock {
    int n = 0;
    std::int64_t coeff_lo() const { return std::int64_t{1} << n; }          // 2^n
    std::int64_t coeff_hi() const { return std::int64_t{1} << (n + 1); }    // 2^{n+1}, exclusive
    std::int64_t a0_hi() const { return std::int64_t{1} << (n + 2); }       // 2^{n+2}, exclusive
    bool contains(const IntegerQuadratic& f) const {
        const std::int64_t h = height(f);
        const std::int64_t c0 = f.a0 < 0 ? -f.a0 : f.a0;
        return h >= coeff_lo() && h < coeff_hi() && c0 < a0_hi();
    }
};

// Closed-form cardinalities of a block (pairs exclude a0).
std::uint64_t block_pair_count(int n);
std::uint64_t block_triple_count(int n);

inline constexpr int kMaxEnumLevel = 19;  // keeps all derived int64 quantities safe

// Visits every (a2, a1) with a2 >= 1 and 2^n <= max(a2,|a1|) < 2^{n+1},
// in lexicographic (a2, a1) order.
template <class Visitor>
void enumerate_block_pairs(int n, Visitor&& visit, int cap = kMaxEnumLevel) {
    if (n < 0) throw DomainError("block level must be nonnegative");
    if (n > cap) throw ResourceCapError("block level " + std::to_string(n) +
                                        " exceeds cap " + std::to_string(cap));
    const std::int64_t lo = std::int64_t{1} << n, hi = std::int64_t{1} << (n + 1);
    for (std::int64_t a2 = 1; a2 < hi; ++a2) {
        if (a2 >= lo) {
            for (std::int64_t a1 = -hi + 1; a1 < hi; ++a1) visit(a2, a1);
        } else {
            for (std::int64_t a1 = -hi + 1; a1 <= -lo; ++a1) visit(a2, a1);
            for (std::int64_t a1 = lo; a1 < hi; ++a1) visit(a2, a1);
        }
    }
}

// Visits every triple of the block in lexicographic (a2, a1, a0) order.
template <class Visitor>
void enumerate_block(int n, Visitor&& visit, int cap = kMaxEnumLevel) {
    const std::int64_t a0hi = std::int64_t{1} << (n + 2);
    enumerate_block_pairs(
        n,
        [&](std::int64_t a2, std::int64_t a1) {
            for (std::int64_t a0 = -a0hi + 1; a0 < a0hi; ++a0)
                visit(IntegerQuadratic{a2, a1, a0});
        },
        cap);
}

// 1 <= D <= 100 * 4^n, i.e. 1 <= |F'(alpha)| <= 10 * 2^n, exactly.
bool deriv_bound_check(const IntegerQuadratic& f, int n);

}  // namespace parcov
