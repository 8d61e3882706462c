#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace btm {

// One-sample Kolmogorov-Smirnov statistic sup |F_n - F| (sample copied and
// sorted internally).
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

// Two-sample KS statistic, plain sup |F_n - G_m|; compare against
// 1.628 * sqrt((n+m)/(n m)) for a 1% test.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic 1% critical value for the one-sample statistic: 1.628 / sqrt(n).
double ks_critical_1pct(std::size_t n);

// Pearson chi-square against given cell probabilities; cells are pooled
// greedily left to right until every expected count is >= min_expected
// (leftovers join the final group).
struct ChiSquare {
    double stat = 0.0;
    int dof = 0;
    double p_value = 1.0;
};
ChiSquare chi_square_gof(const std::vector<std::uint64_t>& counts,
                         const std::vector<double>& probs, double min_expected = 5.0);

// P(Bin(n, p) <= k); exact 1 for k >= n, computed via the regularized
// incomplete beta function otherwise.
double binomial_cdf(unsigned long long n, double p, unsigned long long k);
// log P(Bin(n, p) > k), finite even when the tail underflows binary64.
double log_binomial_tail(unsigned long long n, double p, unsigned long long k);

// Standard normal quantile (Acklam/Boost).
double normal_quantile(double p);

// Wilson score interval for a count out of n at z sigmas.
struct WilsonBand {
    double lo = 0.0, hi = 1.0;
};
WilsonBand wilson_interval(std::uint64_t count, std::uint64_t n, double z);

} // namespace btm
