#pragma once

#include <cstdint>
#include <vector>

#include "btm/landscape.hpp"

namespace btm {

// Streaming study of R_n = max_{1<=i<=n} sigma_i / sum_{1<=i<=n} sigma_i.

struct RatioCheckpoint {
    unsigned long long n = 0;
    double ratio = 0.0;
    double run_min = 1.0; // min over prefixes up to n
    double run_max = 0.0; // max over prefixes up to n
};

struct RatioTrajectory {
    std::uint64_t seed = 0;
    double alpha = 0.0;
    unsigned long long n_max = 0;
    unsigned long long tail_from = 0;
    std::vector<RatioCheckpoint> checkpoints; // dyadic n plus the final n
    double final_ratio = 0.0;
    double run_min = 1.0;     // over every prefix from n = 1
    double run_max = 0.0;
    double tail_run_min = 1.0; // restricted to prefixes with n >= tail_from
    double tail_run_max = 0.0;
};

// Single pass over sigma_1..sigma_n_max; O(1) memory. tail_from discounts the
// early prefixes, where R_n starts at 1 regardless of alpha.
RatioTrajectory maxsum_trajectory(std::uint64_t seed, double alpha, unsigned long long n_max,
                                  unsigned long long tail_from = 100000);

// Distributional stability of S_n / n^(1/alpha) (alpha < 1) resp.
// (S_n - n log n) / n (alpha = 1): KS distances between adjacent sample sizes.
struct ScalingReport {
    double alpha = 0.0;
    std::vector<unsigned long long> n_list;
    std::vector<double> ks_adjacent;  // ks between scaled samples at n_i, n_{i+1}
    std::vector<double> ks_critical;  // two-sample 1% thresholds
    bool centred_signs_both = false;  // alpha = 1: centred sums take both signs
};
ScalingReport stable_scaling_check(double alpha, const std::vector<unsigned long long>& n_list,
                                   std::size_t replicates, std::uint64_t seed);

// Finite-mean contrast (alpha > 1): sup_x P(X_t = x) along a time ladder.
struct SupDecayPoint {
    double t = 0.0;
    double sup = 0.0;
    long long argmax = 0;
    double deficit = 0.0;
};
struct SupDecayReport {
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::vector<SupDecayPoint> points;
    bool strictly_decreasing = false; // certified: sup_{i+1} + deficit_{i+1} < sup_i
    double last_ratio = 0.0;          // sup(t_last) / sup(t_second_to_last)
};
SupDecayReport finite_mean_deloc(double alpha, std::uint64_t seed,
                                 const std::vector<double>& t_list, double tol = 1.0e-6);

} // namespace btm
