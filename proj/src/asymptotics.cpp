#include "btm/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "btm/errors.hpp"
#include "btm/solver.hpp"
#include "btm/stats.hpp"

namespace btm {

RatioTrajectory maxsum_trajectory(std::uint64_t seed, double alpha, unsigned long long n_max,
                                  unsigned long long tail_from) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw invalid_parameter("maxsum_trajectory: alpha must be positive");
    if (n_max < 1) throw invalid_parameter("maxsum_trajectory: n_max must be >= 1");

    RatioTrajectory tr;
    tr.seed = seed;
    tr.alpha = alpha;
    tr.n_max = n_max;
    tr.tail_from = tail_from;

    // same Kahan left-to-right scan as the interval statistics, so a
    // materialized prefix reproduces these sums bit for bit
    double sum = 0.0, comp = 0.0, max = 0.0;
    unsigned long long next_checkpoint = 1;
    for (unsigned long long i = 1; i <= n_max; ++i) {
        const double v = sample_trap(seed, alpha, static_cast<long long>(i));
        const double term = v - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
        if (v > max) max = v;

        const double ratio = max / sum;
        tr.run_min = std::min(tr.run_min, ratio);
        tr.run_max = std::max(tr.run_max, ratio);
        if (i >= tail_from) {
            tr.tail_run_min = std::min(tr.tail_run_min, ratio);
            tr.tail_run_max = std::max(tr.tail_run_max, ratio);
        }
        if (i == next_checkpoint || i == n_max) {
            tr.checkpoints.push_back({i, ratio, tr.run_min, tr.run_max});
            if (i == next_checkpoint) next_checkpoint *= 2;
        }
        if (i == n_max) tr.final_ratio = ratio;
    }
    return tr;
}

ScalingReport stable_scaling_check(double alpha, const std::vector<unsigned long long>& n_list,
                                   std::size_t replicates, std::uint64_t seed) {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw invalid_parameter("stable_scaling_check: alpha must lie in (0,1]");
    if (n_list.size() < 2) throw invalid_parameter("stable_scaling_check: need >= 2 sample sizes");
    if (replicates < 10) throw invalid_parameter("stable_scaling_check: need >= 10 replicates");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw invalid_parameter("stable_scaling_check: n_list must be strictly increasing");

    ScalingReport rep;
    rep.alpha = alpha;
    rep.n_list = n_list;
    const std::uint64_t root = rng::derive_seed(seed, "scaling");

    bool seen_neg = false, seen_pos = false;
    std::vector<std::vector<double>> samples;
    samples.reserve(n_list.size());
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const unsigned long long n = n_list[i];
        std::vector<double> sample(replicates);
        const std::uint64_t key = rng::keyed_word(root, i);
        for (std::size_t r = 0; r < replicates; ++r) {
            rng::Stream stream(rng::keyed_word(key, r));
            double s = 0.0;
            for (unsigned long long m = 0; m < n; ++m)
                s += pareto_from_uniform(stream.next_uniform01(), alpha);
            const double nd = static_cast<double>(n);
            sample[r] = (alpha < 1.0) ? s / std::pow(nd, 1.0 / alpha) : (s - nd * std::log(nd)) / nd;
            if (sample[r] < 0.0) seen_neg = true;
            if (sample[r] > 0.0) seen_pos = true;
        }
        samples.push_back(std::move(sample));
    }
    rep.centred_signs_both = (alpha == 1.0) && seen_neg && seen_pos;

    const double m = static_cast<double>(replicates);
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        rep.ks_adjacent.push_back(ks_two_sample(samples[i], samples[i + 1]));
        rep.ks_critical.push_back(1.628 * std::sqrt(2.0 / m));
    }
    return rep;
}

SupDecayReport finite_mean_deloc(double alpha, std::uint64_t seed,
                                 const std::vector<double>& t_list, double tol) {
    if (!(alpha > 1.0))
        throw invalid_parameter("finite_mean_deloc: needs a finite-mean law (alpha > 1)");
    if (t_list.size() < 2) throw invalid_parameter("finite_mean_deloc: need >= 2 horizons");
    for (std::size_t i = 0; i < t_list.size(); ++i) {
        if (!(t_list[i] > 0.0)) throw invalid_parameter("finite_mean_deloc: horizons must be positive");
        if (i > 0 && t_list[i] <= t_list[i - 1])
            throw invalid_parameter("finite_mean_deloc: horizons must be strictly increasing");
    }

    SupDecayReport rep;
    rep.alpha = alpha;
    rep.seed = seed;
    Landscape L(seed, Alpha(alpha));
    for (const double t : t_list) {
        const TransientResult res = quenched_pmf(L, t, tol);
        rep.points.push_back({t, res.sup(), res.argmax_site(), res.deficit});
    }

    rep.strictly_decreasing = true;
    for (std::size_t i = 0; i + 1 < rep.points.size(); ++i) {
        // window sup underestimates the lattice sup by at most the deficit;
        // compare worst case of the later point against best case of the earlier
        if (!(rep.points[i + 1].sup + rep.points[i + 1].deficit < rep.points[i].sup)) {
            rep.strictly_decreasing = false;
            break;
        }
    }
    const std::size_t last = rep.points.size() - 1;
    rep.last_ratio = rep.points[last].sup / rep.points[last - 1].sup;
    return rep;
}

} // namespace btm
