#pragma once

#include "wdam/rational.hpp"

#include <vector>

namespace wdam {

struct Interval {
    Rat lo;
    Rat hi;
};

struct DegenerateBox : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Axis-aligned product of closed rational intervals.
class RationalBox {
public:
    RationalBox() = default;

    explicit RationalBox(std::vector<Interval> axes) : axes_(std::move(axes)) {
        for (const auto& ax : axes_)
            if (!(ax.lo < ax.hi))
                throw DegenerateBox("box axis with non-positive length");
    }

    size_t dim() const { return axes_.size(); }
    const Interval& axis(size_t i) const { return axes_.at(i); }
    const std::vector<Interval>& axes() const { return axes_; }

    bool contains(const std::vector<Rat>& x) const {
        if (x.size() != axes_.size()) return false;
        for (size_t i = 0; i < axes_.size(); ++i)
            if (x[i] < axes_[i].lo || x[i] > axes_[i].hi) return false;
        return true;
    }

    // Distance from x to the boundary (0 when x is on or outside it).
    Rat boundary_distance(const std::vector<Rat>& x) const {
        Rat r;
        bool first = true;
        for (size_t i = 0; i < axes_.size(); ++i) {
            Rat lo = x[i] - axes_[i].lo;
            Rat hi = axes_[i].hi - x[i];
            Rat m = lo < hi ? lo : hi;
            if (first || m < r) r = m, first = false;
        }
        if (r < 0) r = 0;
        return r;
    }

private:
    std::vector<Interval> axes_;
};

}  // namespace wdam
