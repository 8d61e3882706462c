#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "btm/landscape.hpp"

namespace btm {

inline constexpr double no_time = std::numeric_limits<double>::infinity();

struct PathOptions {
    // if exit_radius > 0, record tau(exit_center, exit_radius)
    long long exit_center = 0;
    long long exit_radius = 0;
    bool stop_at_exit = false;
    // record first-hitting times of these sites
    std::vector<long long> hit_sites;
};

struct PathRecord {
    long long end_site = 0;
    double end_time = 0.0; // min(t_end, exit time) when stop_at_exit
    unsigned long long jumps = 0;
    double exit_time = no_time;           // tau(center, radius), if requested
    std::vector<double> hit_times;        // aligned with hit_sites; no_time if unhit
};

// One continuous-time path from 0: hold Exp(mean sigma_x), jump +-1 fair.
// Seeded landscapes are materialized lazily in chunks as the path wanders.
PathRecord simulate_path(Landscape& L, double t_end, std::uint64_t seed,
                         const PathOptions& opt = {});

// Empirical pmf of X_t over a window from `paths` independent paths; path p
// uses the stream keyed_word(seed, p). Mass outside the window is dropped
// (returned histogram sums to <= 1).
std::vector<double> mc_pmf(Landscape& L, double t, Interval window,
                           std::size_t paths, std::uint64_t seed);

// Jump-chain (embedded walk) estimates for sigma-free functionals; the
// embedded chain of the trap walk is the simple random walk, so these need no
// landscape.
// fraction of paths from y hitting i before leaving (x-r, x+r)
double mc_hit_before_exit(long long x, long long r, long long y, long long i,
                          std::size_t paths, std::uint64_t seed);
// fraction of paths from i that leave (x-r, x+r) before returning to i
double mc_return_escape(long long x, long long r, long long i,
                        std::size_t paths, std::uint64_t seed);

} // namespace btm
