#pragma once

namespace btm {

// Closed integer interval [lo, hi]; lo > hi encodes the empty interval.
struct Interval {
    long long lo = 0;
    long long hi = -1;

    bool empty() const { return lo > hi; }
    unsigned long long size() const {
        return empty() ? 0ull
                       : static_cast<unsigned long long>(hi) -
                             static_cast<unsigned long long>(lo) + 1ull;
    }
    bool contains(long long x) const { return x >= lo && x <= hi; }
    bool contains(const Interval& o) const {
        return o.empty() || (!empty() && o.lo >= lo && o.hi <= hi);
    }
    bool operator==(const Interval& o) const = default;
};

// Smallest interval containing both arguments (empty arguments are neutral).
inline Interval hull(const Interval& a, const Interval& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return {a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
}

} // namespace btm
