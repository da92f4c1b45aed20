#include "parcov/interval_union.hpp"

#include <algorithm>

namespace parcov {

namespace {

// Orders interval starts; at equal position a closed start comes first.
bool starts_before(const QiInterval& a, const QiInterval& b) {
    const auto c = a.lo.compare(b.lo);
    if (c == std::strong_ordering::less) return true;
    if (c == std::strong_ordering::greater) return false;
    return !a.lo_open && b.lo_open;
}

}  // namespace

QiInterval QiInterval::clipped_unit() const {
    QiInterval r = *this;
    const Rational zero(0), one(1);
    if (r.lo.compare(zero) == std::strong_ordering::less) {
        r.lo = QuadIrr(zero);
        r.lo_open = false;
    }
    if (r.hi.compare(one) == std::strong_ordering::greater) {
        r.hi = QuadIrr(one);
        r.hi_open = false;
    }
    return r;
}

IntervalUnion IntervalUnion::from_parts(std::vector<QiInterval> parts) {
    std::erase_if(parts, [](const QiInterval& p) { return p.empty(); });
    std::sort(parts.begin(), parts.end(), starts_before);
    IntervalUnion u;
    for (auto& p : parts) {
        if (u.parts_.empty()) {
            u.parts_.push_back(std::move(p));
            continue;
        }
        QiInterval& cur = u.parts_.back();
        const auto c = p.lo.compare(cur.hi);
        const bool joins = c == std::strong_ordering::less ||
                           (c == std::strong_ordering::equal && !(cur.hi_open && p.lo_open));
        if (!joins) {
            u.parts_.push_back(std::move(p));
            continue;
        }
        const auto ch = p.hi.compare(cur.hi);
        if (ch == std::strong_ordering::greater) {
            cur.hi = std::move(p.hi);
            cur.hi_open = p.hi_open;
        } else if (ch == std::strong_ordering::equal) {
            cur.hi_open = cur.hi_open && p.hi_open;
        }
    }
    return u;
}

Enclosure IntervalUnion::measure() const {
    Enclosure sum = Enclosure::zero();
    for (const auto& p : parts_) {
        sum += p.hi.enclose_fast() - p.lo.enclose_fast();
    }
    // Lengths are nonnegative even if outward rounding dips below zero.
    if (sum.lo < 0.0) sum.lo = 0.0;
    return sum;
}

bool IntervalUnion::contains_point(const QuadIrr& x) const {
    for (const auto& p : parts_) {
        const auto cl = x.compare(p.lo);
        if (cl == std::strong_ordering::less) return false;  // parts sorted
        const auto ch = x.compare(p.hi);
        const bool lo_ok = cl == std::strong_ordering::greater || (cl == std::strong_ordering::equal && !p.lo_open);
        const bool hi_ok = ch == std::strong_ordering::less || (ch == std::strong_ordering::equal && !p.hi_open);
        if (lo_ok && hi_ok) return true;
    }
    return false;
}

bool IntervalUnion::contains(const IntervalUnion& other) const {
    std::size_t i = 0;
    for (const auto& o : other.parts_) {
        bool ok = false;
        for (; i < parts_.size(); ++i) {
            const auto& s = parts_[i];
            // Too far left: s ends before o starts.
            const auto ce = s.hi.compare(o.lo);
            if (ce == std::strong_ordering::less) continue;
            const auto cl = s.lo.compare(o.lo);
            const auto ch = o.hi.compare(s.hi);
            const bool lo_ok = cl == std::strong_ordering::less ||
                               (cl == std::strong_ordering::equal && (!s.lo_open || o.lo_open));
            const bool hi_ok = ch == std::strong_ordering::less ||
                               (ch == std::strong_ordering::equal && (!s.hi_open || o.hi_open));
            ok = lo_ok && hi_ok;
            break;
        }
        if (!ok) return false;
    }
    return true;
}

IntervalUnion IntervalUnion::clipped_unit() const {
    std::vector<QiInterval> out;
    out.reserve(parts_.size());
    for (const auto& p : parts_) out.push_back(p.clipped_unit());
    return from_parts(std::move(out));
}

IntervalUnion IntervalUnion::restrict_below(const Rational& m) const {
    std::vector<QiInterval> out;
    for (const auto& p : parts_) {
        const auto c = p.lo.compare(m);
        if (c != std::strong_ordering::less) break;  // sorted: nothing further qualifies
        QiInterval q = p;
        if (p.hi.compare(m) != std::strong_ordering::less) {
            q.hi = QuadIrr(m);
            q.hi_open = true;
        }
        out.push_back(std::move(q));
    }
    return from_parts(std::move(out));
}

IntervalUnion IntervalUnion::restrict_above(const Rational& m) const {
    std::vector<QiInterval> out;
    for (const auto& p : parts_) {
        if (p.hi.compare(m) != std::strong_ordering::greater) continue;
        QiInterval q = p;
        if (p.lo.compare(m) != std::strong_ordering::greater) {
            q.lo = QuadIrr(m);
            q.lo_open = true;
        }
        out.push_back(std::move(q));
    }
    return from_parts(std::move(out));
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& a, const IntervalUnion& b) {
    std::vector<QiInterval> all = a.parts_;
    all.insert(all.end(), b.parts_.begin(), b.parts_.end());
    return from_parts(std::move(all));
}

}  // namespace parcov
