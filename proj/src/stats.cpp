#include "btm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "btm/errors.hpp"

namespace btm {

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw invalid_parameter("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double F = cdf(sample[i]);
        d = std::max(d, F - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - F);
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw invalid_parameter("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        const double v = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] <= v) ++ia;
        while (ib < b.size() && b[ib] <= v) ++ib;
        d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }
    return d;
}

double ks_critical_1pct(std::size_t n) {
    if (n == 0) throw invalid_parameter("ks_critical_1pct: n must be positive");
    return 1.628 / std::sqrt(static_cast<double>(n));
}

ChiSquare chi_square_gof(const std::vector<std::uint64_t>& counts,
                         const std::vector<double>& probs, double min_expected) {
    if (counts.size() != probs.size() || counts.empty())
        throw invalid_parameter("chi_square_gof: counts/probs size mismatch");
    double total = 0.0;
    for (std::uint64_t c : counts) total += static_cast<double>(c);
    if (total <= 0.0) throw invalid_parameter("chi_square_gof: no observations");

    // greedy left-to-right pooling until each group expects >= min_expected
    std::vector<double> obs_g, exp_g;
    double o = 0.0, e = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        o += static_cast<double>(counts[i]);
        e += probs[i] * total;
        if (e >= min_expected) {
            obs_g.push_back(o);
            exp_g.push_back(e);
            o = e = 0.0;
        }
    }
    if (e > 0.0 || o > 0.0) { // leftover cells join the last group
        if (exp_g.empty()) throw invalid_parameter("chi_square_gof: expected counts too small");
        obs_g.back() += o;
        exp_g.back() += e;
    }
    if (obs_g.size() < 2) throw invalid_parameter("chi_square_gof: fewer than two groups");

    ChiSquare r;
    for (std::size_t i = 0; i < obs_g.size(); ++i) {
        const double diff = obs_g[i] - exp_g[i];
        r.stat += diff * diff / exp_g[i];
    }
    r.dof = static_cast<int>(obs_g.size()) - 1;
    r.p_value = boost::math::gamma_q(0.5 * r.dof, 0.5 * r.stat);
    return r;
}

double binomial_cdf(unsigned long long n, double p, unsigned long long k) {
    if (!(p >= 0.0) || !(p <= 1.0)) throw invalid_parameter("binomial_cdf: p outside [0,1]");
    if (n == 0 || k >= n) return 1.0; // the whole mass is <= k
    const boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
    return boost::math::cdf(dist, static_cast<double>(k));
}

double log_binomial_tail(unsigned long long n, double p, unsigned long long k) {
    if (!(p > 0.0) || !(p < 1.0)) throw invalid_parameter("log_binomial_tail: p outside (0,1)");
    if (k >= n) return -std::numeric_limits<double>::infinity();
    // log sum of C(n,j) p^j (1-p)^(n-j), j = k+1..n, via logsumexp; terms
    // decay geometrically past the mode so the loop exits early
    const double lp = std::log(p), lq = std::log1p(-p);
    auto log_term = [&](unsigned long long j) {
        return std::lgamma(static_cast<double>(n) + 1.0) -
               std::lgamma(static_cast<double>(j) + 1.0) -
               std::lgamma(static_cast<double>(n - j) + 1.0) +
               static_cast<double>(j) * lp + static_cast<double>(n - j) * lq;
    };
    double lmax = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    for (unsigned long long j = k + 1; j <= n; ++j) {
        const double lt = log_term(j);
        terms.push_back(lt);
        lmax = std::max(lmax, lt);
        if (lt < lmax - 60.0 && j > k + 4) break; // later terms cannot matter
    }
    double s = 0.0;
    for (double lt : terms) s += std::exp(lt - lmax);
    return lmax + std::log(s);
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw invalid_parameter("normal_quantile: p outside (0,1)");
    static const boost::math::normal_distribution<double> dist;
    return boost::math::quantile(dist, p);
}

WilsonBand wilson_interval(std::uint64_t count, std::uint64_t n, double z) {
    if (n == 0) throw invalid_parameter("wilson_interval: n must be positive");
    if (count > n) throw invalid_parameter("wilson_interval: count > n");
    if (!(z > 0.0)) throw invalid_parameter("wilson_interval: z must be positive");
    const double nn = static_cast<double>(n);
    const double phat = static_cast<double>(count) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (phat + z2 / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
    WilsonBand b;
    b.lo = std::max(0.0, centre - half);
    b.hi = std::min(1.0, centre + half);
    return b;
}

} // namespace btm
