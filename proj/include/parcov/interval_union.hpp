#pragma once

// Sorted disjoint unions of intervals with exact QuadIrr endpoints and
// per-endpoint openness flags, clipped to [0,1] by the constructors that
// say so. Measure is certified (outward enclosure sum). Containment
// honors openness exactly; merging keeps genuinely missing points
// (two open endpoints meeting at a point stay two components).

#include "parcov/enclosure.hpp"
#include "parcov/quad_irr.hpp"
#include "parcov/rational.hpp"

#include <cstddef>
#include <vector>

namespace parcov {

struct QiInterval {
    QuadIrr lo, hi;
    bool lo_open = false, hi_open = false;

    bool empty() const {
        const auto c = lo.compare(hi);
        if (c == std::strong_ordering::greater) return true;
        if (c == std::strong_ordering::equal) return lo_open || hi_open;
        return false;
    }

    // Intersection with [0,1]; clipped sides become closed endpoints.
    QiInterval clipped_unit() const;
};

class IntervalUnion {
  public:
    IntervalUnion() = default;

    // Sorts, drops empties, merges overlapping/touching parts.
    static IntervalUnion from_parts(std::vector<QiInterval> parts);

    const std::vector<QiInterval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    // Certified enclosure of the Lebesgue measure (sum of lengths).
    Enclosure measure() const;

    bool contains_point(const QuadIrr& x) const;
    // Superset test: every part of other lies inside a part of this.
    bool contains(const IntervalUnion& other) const;

    IntervalUnion clipped_unit() const;
    // Intersection with (-inf, m) resp. (m, +inf), m excluded.
    IntervalUnion restrict_below(const Rational& m) const;
    IntervalUnion restrict_above(const Rational& m) const;

    static IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b);

  private:
    std::vector<QiInterval> parts_;  // sorted, pairwise disjoint
};

}  // namespace parcov
