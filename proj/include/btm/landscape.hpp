#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "btm/errors.hpp"
#include "btm/interval.hpp"
#include "btm/rng.hpp"

namespace btm {

// Tail index of the trap law P(sigma >= u) = u^-alpha, u >= 1. The heavy
// regime of interest is alpha in (0,1]; larger values are accepted for the
// finite-mean study but rejected by the scale/event machinery.
struct Alpha {
    double value;

    explicit Alpha(double v) : value(v) {
        if (!(v > 0.0) || !(v < 1.0e6)) // NaN and nonsense rejected
            throw invalid_parameter("alpha must lie in (0, 1e6)");
    }
    bool heavy() const { return value <= 1.0; }
};

// Inverse-CDF Pareto sample on [1, inf): sigma = U^(-1/alpha) for U in (0,1].
// The special cases avoid pow on hot paths; they agree with it to 1 ulp.
inline double pareto_from_uniform(double u, double alpha) {
    if (alpha == 0.5) return 1.0 / (u * u);
    if (alpha == 1.0) return 1.0 / u;
    if (alpha == 2.0) return 1.0 / std::sqrt(u);
    return std::pow(u, -1.0 / alpha);
}

// sigma_x as a pure function of (seed, alpha, x): same inputs, same value, on
// any machine with IEEE binary64.
inline double sample_trap(std::uint64_t seed, double alpha, long long x) {
    if (!(alpha > 0.0)) throw invalid_parameter("sample_trap: alpha must be positive");
    const double u = rng::uniform01(rng::keyed_word(seed, static_cast<std::uint64_t>(x)));
    return pareto_from_uniform(u, alpha);
}

// Summary of sigma over a closed interval: sum (Kahan-compensated, summed left
// to right), max, and the smallest index attaining max.
struct IntervalStats {
    Interval interval;
    double sum = 0.0;
    double max = 0.0;
    long long argmax = 0;
};

// Trap landscape on Z. Two flavours:
//  * seeded: sigma is the pure function sample_trap(seed, alpha, x); values
//    must be materialized (over a contiguous hull) before point access;
//  * constructed: an explicit table plus a default fill value, defined on all
//    of Z, for engineered configurations and tests.
class Landscape {
public:
    Landscape(std::uint64_t seed, Alpha alpha);

    // alpha_attr records which trap law the configuration is engineered for;
    // event checks read it when handed a constructed landscape.
    static Landscape constructed(std::map<long long, double> values, double fill = 1.0,
                                 double alpha_attr = 0.5);

    bool is_seeded() const { return seeded_; }
    std::uint64_t seed() const { return seed_; }
    double alpha() const { return alpha_; }

    // Ensures values exist on the convex hull of the previous range and iv.
    // Throws resource_limit if the hull would exceed budget().landscape_sites.
    void materialize(Interval iv);
    bool is_materialized(Interval iv) const;
    Interval materialized_range() const { return range_; }

    // sigma_x; throws precondition_violation for unmaterialized seeded sites.
    double sigma(long long x) const {
        if (seeded_) {
            if (x < range_.lo || x > range_.hi)
                throw precondition_violation("sigma: site not materialized; call materialize first");
            return values_[static_cast<std::size_t>(x - range_.lo)];
        }
        auto it = table_.find(x);
        return it == table_.end() ? fill_ : it->second;
    }

    IntervalStats stats(Interval iv) const;

    // Plain-text cache: a header line
    //   btm-landscape v1 seed=<u64> alpha=<g17> range=<lo>..<hi>
    // followed by one "x,sigma" row per site (17 significant digits).
    // Constructed landscapes are stored with seed=0 plus a "fill,<v>" row
    // (its presence is what marks the file as constructed on load).
    void save(const std::string& path, Interval iv) const;
    static Landscape load(const std::string& path);

private:
    Landscape() = default;

    bool seeded_ = false;
    std::uint64_t seed_ = 0;
    double alpha_ = 0.0;

    // seeded storage: contiguous hull
    Interval range_; // empty until materialized
    std::vector<double> values_;

    // constructed storage
    std::map<long long, double> table_;
    double fill_ = 1.0;
};

// Free-function form of the interval summary (sum, max, argmax).
IntervalStats interval_stats(const Landscape& L, Interval iv);

// Streaming summary for a seeded law: no storage, any interval length.
// Bit-identical to materializing the interval and calling interval_stats.
IntervalStats seeded_interval_stats(std::uint64_t seed, Alpha alpha, Interval iv);

} // namespace btm
