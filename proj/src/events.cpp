#include "btm/events.hpp"

#include <algorithm>
#include <cmath>

#include "btm/errors.hpp"

namespace btm {

double EventReport::witness(const std::string& name) const {
    for (const auto& [k, v] : witnesses)
        if (k == name) return v;
    throw invalid_parameter("EventReport: no witness named '" + name + "'");
}

namespace {

// Both the materialized and the streaming checks funnel through these
// evaluators; only the IntervalStats provider differs.

template <class Stats>
EventReport eval_E_loc(Stats&& stats, int n, double epsilon, double alpha) {
    const LocScales sc = loc_scales(n, epsilon, Alpha(alpha));
    const auto a = static_cast<long long>(sc.a_n);
    const auto b = static_cast<long long>(sc.b_n);

    const IntervalStats on_a = stats(Interval{1, a});
    const IntervalStats on_b = stats(Interval{-b, b});

    const double thr_M = sc.trap_scale / (epsilon * epsilon);
    const double thr_gap = 3.0 * sc.trap_scale / epsilon;
    const double gap = on_b.sum - on_a.max;

    EventReport r;
    r.event = "E_loc";
    r.n = n;
    r.epsilon = epsilon;
    r.M = on_a.max;
    r.S = on_b.sum;
    const double margin_M = on_a.max - thr_M;
    const double margin_gap = thr_gap - gap;
    r.margin = std::min(margin_M, margin_gap);
    r.holds = on_a.max > thr_M && gap < thr_gap;
    r.witnesses = {{"a_n", static_cast<double>(sc.a_n)},
                   {"b_n", static_cast<double>(sc.b_n)},
                   {"trap_scale", sc.trap_scale},
                   {"M_a", on_a.max},
                   {"argmax", static_cast<double>(on_a.argmax)},
                   {"S_a", on_a.sum},
                   {"S_bar_b", on_b.sum},
                   {"thr_M", thr_M},
                   {"thr_gap", thr_gap},
                   {"margin_M", margin_M},
                   {"margin_gap", margin_gap},
                   {"ratio_a", on_a.max / on_a.sum}};
    return r;
}

template <class Stats>
EventReport eval_A_loc(Stats&& stats, int n, double epsilon, double alpha) {
    const LocScales sc = loc_scales(n, epsilon, Alpha(alpha));
    const LocIntervals iv = loc_intervals(n, epsilon);

    const IntervalStats on_I = stats(iv.I);
    const IntervalStats on_Jl = stats(iv.J_left);
    const IntervalStats on_Jr = stats(iv.J_right);

    const double thr_M = sc.trap_scale / (epsilon * epsilon);
    const double thr_gap = 2.0 * sc.trap_scale / epsilon;
    const double S_IJ = on_I.sum + on_Jl.sum + on_Jr.sum;
    const double gap = S_IJ - on_I.max;

    EventReport r;
    r.event = "A_loc";
    r.n = n;
    r.epsilon = epsilon;
    r.M = on_I.max;
    r.S = S_IJ;
    const double margin_M = on_I.max - thr_M;
    const double margin_gap = thr_gap - gap;
    r.margin = std::min(margin_M, margin_gap);
    r.holds = on_I.max > thr_M && gap < thr_gap;
    r.witnesses = {{"a_n", static_cast<double>(sc.a_n)},
                   {"b_n", static_cast<double>(sc.b_n)},
                   {"trap_scale", sc.trap_scale},
                   {"M_I", on_I.max},
                   {"argmax", static_cast<double>(on_I.argmax)},
                   {"S_I", on_I.sum},
                   {"S_IJ", S_IJ},
                   {"thr_M", thr_M},
                   {"thr_gap", thr_gap},
                   {"margin_M", margin_M},
                   {"margin_gap", margin_gap}};
    return r;
}

template <class Stats>
EventReport eval_B_loc(Stats&& stats, int n, double epsilon, double alpha) {
    if (n < 2)
        throw invalid_parameter("check_B_loc: defined for n >= 2 (references level n-1)");
    const LocScales sc = loc_scales(n, epsilon, Alpha(alpha));
    const auto b_prev = static_cast<long long>(scale_b(n - 1, epsilon));

    const IntervalStats on_prev = stats(Interval{-b_prev, b_prev});
    const double thr = sc.trap_scale;

    EventReport r;
    r.event = "B_loc";
    r.n = n;
    r.epsilon = epsilon;
    r.M = on_prev.max;
    r.S = on_prev.sum;
    r.margin = thr - on_prev.sum;
    r.holds = on_prev.sum < thr;
    r.witnesses = {{"a_n", static_cast<double>(sc.a_n)},
                   {"b_prev", static_cast<double>(b_prev)},
                   {"trap_scale", sc.trap_scale},
                   {"S_bar_prev", on_prev.sum},
                   {"thr", thr}};
    return r;
}

struct BlockWitness {
    double S_min, S_max, M_max;
    double margin;
};

// shared loop over indexed blocks: sums in (lo_f, hi_f) * trap_scale, max
// below m_f * trap_scale, all strict
template <class Stats, class BlockOf>
BlockWitness scan_blocks(Stats&& stats, BlockOf&& block_of, int K, double ts, double lo_f,
                         double hi_f, double m_f) {
    BlockWitness w{1.0e300, 0.0, 0.0, 1.0e300};
    for (int k = -K; k <= K; ++k) {
        const IntervalStats st = stats(block_of(k));
        w.S_min = std::min(w.S_min, st.sum);
        w.S_max = std::max(w.S_max, st.sum);
        w.M_max = std::max(w.M_max, st.max);
        w.margin = std::min({w.margin, st.sum - lo_f * ts, hi_f * ts - st.sum,
                             m_f * ts - st.max});
    }
    return w;
}

template <class Stats>
EventReport eval_E_deloc(Stats&& stats, int n, double epsilon, int K, double alpha) {
    const DelocScales sc = deloc_scales(n, epsilon, K, Alpha(alpha));
    const BlockWitness w = scan_blocks(
        stats, [&](int k) { return sc.block(k); }, K, sc.trap_scale, 0.5, 2.0, epsilon);

    EventReport r;
    r.event = "E_deloc";
    r.n = n;
    r.epsilon = epsilon;
    r.K = K;
    r.M = w.M_max;
    r.S = w.S_min;
    r.margin = w.margin;
    r.holds = w.margin > 0.0;
    r.witnesses = {{"a_n", static_cast<double>(sc.a_n)},
                   {"trap_scale", sc.trap_scale},
                   {"S_min", w.S_min},
                   {"S_max", w.S_max},
                   {"M_max", w.M_max},
                   {"thr_S_lo", 0.5 * sc.trap_scale},
                   {"thr_S_hi", 2.0 * sc.trap_scale},
                   {"thr_M", epsilon * sc.trap_scale}};
    return r;
}

template <class Stats>
EventReport eval_A_deloc(Stats&& stats, int n, double epsilon, int K, double alpha) {
    const DelocScales sc = deloc_scales(n, epsilon, K, Alpha(alpha));
    const BlockWitness w =
        scan_blocks(stats, [&](int k) { return deloc_trimmed_block(sc, k); }, K,
                    sc.trap_scale, 0.5, 1.5, epsilon);

    EventReport r;
    r.event = "A_deloc";
    r.n = n;
    r.epsilon = epsilon;
    r.K = K;
    r.M = w.M_max;
    r.S = w.S_min;
    r.margin = w.margin;
    r.holds = w.margin > 0.0;
    r.witnesses = {{"a_n", static_cast<double>(sc.a_n)},
                   {"a_prev", static_cast<double>(sc.a_prev)},
                   {"trap_scale", sc.trap_scale},
                   {"S_min", w.S_min},
                   {"S_max", w.S_max},
                   {"M_max", w.M_max},
                   {"thr_S_lo", 0.5 * sc.trap_scale},
                   {"thr_S_hi", 1.5 * sc.trap_scale},
                   {"thr_M", epsilon * sc.trap_scale}};
    return r;
}

template <class Stats>
EventReport eval_B_deloc(Stats&& stats, int n, double epsilon, int K, double alpha) {
    const DelocScales sc = deloc_scales(n, epsilon, K, Alpha(alpha));
    const IntervalStats st = stats(deloc_b_interval(sc));
    const double thr = std::min(0.5, epsilon) * sc.trap_scale;

    EventReport r;
    r.event = "B_deloc";
    r.n = n;
    r.epsilon = epsilon;
    r.K = K;
    r.M = st.max;
    r.S = st.sum;
    r.margin = thr - st.sum;
    r.holds = st.sum < thr;
    r.witnesses = {{"a_n", static_cast<double>(sc.a_n)},
                   {"a_prev", static_cast<double>(sc.a_prev)},
                   {"trap_scale", sc.trap_scale},
                   {"S_core_prev", st.sum},
                   {"thr", thr}};
    return r;
}

struct MatStats {
    const Landscape* L;
    IntervalStats operator()(Interval iv) const { return L->stats(iv); }
};

struct SeedStats {
    std::uint64_t seed;
    double alpha;
    IntervalStats operator()(Interval iv) const {
        return seeded_interval_stats(seed, Alpha(alpha), iv);
    }
};

} // namespace

Interval deloc_trimmed_block(const DelocScales& sc, int k) {
    const auto a = static_cast<long long>(sc.a_n);
    const auto ap = static_cast<long long>(sc.a_prev);
    const long long edge = static_cast<long long>(sc.K) * ap;
    if ((sc.K + 1) * ap >= a)
        throw invalid_parameter(
            "deloc_trimmed_block: scale separation requires (K+1) a_{n-1} < a_n");
    if (k == 0) return {edge + ap, a - 1};    // [(K+1) a_prev, a_n)
    if (k == -1) return {-a, -edge - 1};      // [-a_n, -K a_prev)
    return sc.block(k);
}

Interval deloc_b_interval(const DelocScales& sc) {
    const auto ap = static_cast<long long>(sc.a_prev);
    const long long edge = static_cast<long long>(sc.K) * ap;
    return {-edge, edge + ap - 1}; // [-K a_prev, (K+1) a_prev)
}

EventReport check_E_loc(const Landscape& L, int n, double epsilon) {
    return eval_E_loc(MatStats{&L}, n, epsilon, L.alpha());
}
EventReport check_A_loc(const Landscape& L, int n, double epsilon) {
    return eval_A_loc(MatStats{&L}, n, epsilon, L.alpha());
}
EventReport check_B_loc(const Landscape& L, int n, double epsilon) {
    return eval_B_loc(MatStats{&L}, n, epsilon, L.alpha());
}
EventReport check_E_deloc(const Landscape& L, int n, double epsilon, int K) {
    return eval_E_deloc(MatStats{&L}, n, epsilon, K, L.alpha());
}
EventReport check_A_deloc(const Landscape& L, int n, double epsilon, int K) {
    return eval_A_deloc(MatStats{&L}, n, epsilon, K, L.alpha());
}
EventReport check_B_deloc(const Landscape& L, int n, double epsilon, int K) {
    return eval_B_deloc(MatStats{&L}, n, epsilon, K, L.alpha());
}

EventReport check_E_loc_streaming(std::uint64_t seed, Alpha alpha, int n, double epsilon) {
    return eval_E_loc(SeedStats{seed, alpha.value}, n, epsilon, alpha.value);
}
EventReport check_A_loc_streaming(std::uint64_t seed, Alpha alpha, int n, double epsilon) {
    return eval_A_loc(SeedStats{seed, alpha.value}, n, epsilon, alpha.value);
}
EventReport check_B_loc_streaming(std::uint64_t seed, Alpha alpha, int n, double epsilon) {
    return eval_B_loc(SeedStats{seed, alpha.value}, n, epsilon, alpha.value);
}
EventReport check_E_deloc_streaming(std::uint64_t seed, Alpha alpha, int n, double epsilon,
                                    int K) {
    return eval_E_deloc(SeedStats{seed, alpha.value}, n, epsilon, K, alpha.value);
}
EventReport check_A_deloc_streaming(std::uint64_t seed, Alpha alpha, int n, double epsilon,
                                    int K) {
    return eval_A_deloc(SeedStats{seed, alpha.value}, n, epsilon, K, alpha.value);
}
EventReport check_B_deloc_streaming(std::uint64_t seed, Alpha alpha, int n, double epsilon,
                                    int K) {
    return eval_B_deloc(SeedStats{seed, alpha.value}, n, epsilon, K, alpha.value);
}

double loc_ratio_lower(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw invalid_parameter("loc_ratio_lower: epsilon must lie in (0,1)");
    return 1.0 / (1.0 + 3.0 * epsilon);
}

// --- engineered landscapes ---------------------------------------------------

namespace {

// Pareto draw conditioned below `cap` (> 1); deterministic in (seed, counter).
double conditioned_trap(std::uint64_t seed, std::uint64_t counter, double alpha, double cap) {
    for (std::uint64_t r = 0; r < 4096; ++r) {
        const double u = rng::uniform01(rng::keyed_word(seed, counter * 4096ull + r));
        const double v = pareto_from_uniform(u, alpha);
        if (v < cap) return v;
    }
    throw numerical_failure("conditioned_trap: rejection failed 4096 times");
}

} // namespace

Landscape make_localized_landscape(std::uint64_t variant, int n, double epsilon, Alpha alpha) {
    const LocScales sc = loc_scales(n, epsilon, alpha);
    if (!(sc.trap_scale > 0.0))
        throw invalid_parameter(
            "make_localized_landscape: degenerate scale (alpha = 1 with n = 1 has "
            "ell(a_1) = 0)");
    const auto b = static_cast<long long>(sc.b_n);
    const std::uint64_t s = rng::derive_seed(variant, "loc-constructed");

    // trap strength and background cap vary with the variant
    const double theta[] = {4.0, 6.0, 10.0, 16.0};
    const double bg[] = {2.0, 4.0, 8.0, 16.0};
    const double strength = theta[variant % 4];
    // background must provably keep S_bar - M below 3 eps^-1 trap_scale over
    // the 2b+1 sites of [-b, b]
    const double gap_budget = 3.0 * sc.trap_scale / epsilon;
    const double cap_max = gap_budget / static_cast<double>(2 * b + 2);
    const double cap = std::max(1.0 + 1.0e-9, std::min(bg[(variant / 4) % 4], cap_max));

    const long long pos = 1 + static_cast<long long>(rng::keyed_word(s, 0) % sc.a_n);
    const double trap = strength * sc.trap_scale / (epsilon * epsilon);

    std::map<long long, double> table;
    for (long long x = -2 * b; x <= 2 * b; ++x) {
        if (x == pos)
            table[x] = trap;
        else
            table[x] =
                conditioned_trap(s, static_cast<std::uint64_t>(x + 2 * b) + 1, alpha.value, cap);
    }
    return Landscape::constructed(std::move(table), 1.0, alpha.value);
}

Landscape make_delocalized_landscape(std::uint64_t seed, int n, double epsilon, int K,
                                     Alpha alpha, long long halo) {
    const DelocScales sc = deloc_scales(n, epsilon, K, alpha);
    if (sc.a_n > (1ull << 16))
        throw resource_limit(
            "make_delocalized_landscape: block size past 2^16 sites (n too large for a "
            "constructed core)");
    const std::uint64_t s = rng::derive_seed(seed, "deloc-conditioned");
    const double m_cap = 0.98 * epsilon * sc.trap_scale; // block max stays clear of eps
    if (m_cap <= 1.0)
        throw invalid_parameter(
            "make_delocalized_landscape: eps * trap_scale too small for sigma >= 1");
    // sums aimed inside (1/2, 2) with headroom on both sides
    const double s_lo = 0.55 * sc.trap_scale;
    const double s_hi = 1.80 * sc.trap_scale;

    std::map<long long, double> table;
    for (int k = -K; k <= K; ++k) {
        const Interval blk = sc.block(k);
        bool done = false;
        for (std::uint64_t attempt = 0; attempt < 4096 && !done; ++attempt) {
            double sum = 0.0;
            std::vector<double> vals;
            vals.reserve(static_cast<std::size_t>(blk.size()));
            for (long long x = blk.lo; x <= blk.hi; ++x) {
                const std::uint64_t counter =
                    (static_cast<std::uint64_t>(k + K) << 40) | (attempt << 16) |
                    static_cast<std::uint64_t>(x - blk.lo);
                const double v = conditioned_trap(s, counter, alpha.value, m_cap);
                vals.push_back(v);
                sum += v;
            }
            if (sum > s_lo && sum < s_hi) {
                for (long long x = blk.lo; x <= blk.hi; ++x)
                    table[x] = vals[static_cast<std::size_t>(x - blk.lo)];
                done = true;
            }
        }
        if (!done)
            throw numerical_failure(
                "make_delocalized_landscape: block rejection failed 4096 times");
    }

    // unconditioned continuation outside the core
    const std::uint64_t s_halo = rng::derive_seed(seed, "deloc-halo");
    const Interval core = sc.core();
    const Interval span = hull({-halo, halo}, core);
    for (long long x = span.lo; x < core.lo; ++x)
        table[x] = sample_trap(s_halo, alpha.value, x);
    for (long long x = core.hi + 1; x <= span.hi; ++x)
        table[x] = sample_trap(s_halo, alpha.value, x);
    return Landscape::constructed(std::move(table), 1.0, alpha.value);
}

std::vector<std::uint64_t> find_E_loc_seeds(Alpha alpha, int n, double epsilon, int want,
                                            std::uint64_t scan_start, int scan_limit) {
    std::vector<std::uint64_t> hits;
    for (int i = 0; i < scan_limit && static_cast<int>(hits.size()) < want; ++i) {
        const std::uint64_t s = scan_start + static_cast<std::uint64_t>(i);
        if (check_E_loc_streaming(s, alpha, n, epsilon).holds) hits.push_back(s);
    }
    if (static_cast<int>(hits.size()) < want)
        throw resource_limit("find_E_loc_seeds: fewer than the requested landscapes in " +
                             std::to_string(scan_limit) + " seeds");
    return hits;
}

} // namespace btm
