#include "btm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "btm/errors.hpp"
#include "btm/hitting.hpp"
#include "btm/scales.hpp"
#include "btm/stats.hpp"

namespace btm {

namespace {

double pos(double v) { return v > 0.0 ? v : 0.0; }

} // namespace

// --- localization side -----------------------------------------------------

double localization_lower_bound(const Landscape& L, long long x, long long y, double t) {
    if (!(x > 0) || !(y > x)) throw invalid_parameter("localization_lower_bound: need 0 < x < y");
    if (!(t > 0.0) || !std::isfinite(t))
        throw invalid_parameter("localization_lower_bound: t must be positive and finite");
    const double s_inner = L.stats({-y + 1, x - 1}).sum; // sum over (-y, x)
    const double s_all = L.stats({-y, y}).sum;
    const double sx = L.sigma(x);
    const double f1 = static_cast<double>(y) / static_cast<double>(x + y)
                      - static_cast<double>(x) * s_inner / t;
    const double f2 = sx / s_all - t / (static_cast<double>(y - x) * sx);
    return pos(f1) * pos(f2);
}

double localized_mass_bound(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw invalid_parameter("localized_mass_bound: epsilon must lie in (0,1)");
    const double f1 = 1.0 / (1.0 + epsilon) - 3.0 * epsilon;
    const double f2 = 1.0 / (1.0 + 3.0 * epsilon) - epsilon / (1.0 - epsilon);
    return pos(f1) * pos(f2);
}

BoundCheck verify_localization_instance(Landscape& L, long long x, long long y, double t) {
    if (!(x > 0) || !(y > x))
        throw invalid_parameter("verify_localization_instance: need 0 < x < y");
    L.materialize({-y, y});
    const double bound = localization_lower_bound(L, x, y, t);
    const Generator g = build_generator(L, {-y, y}, Boundary::absorbing);
    const TransientResult res = transient(g, 0, t);

    BoundCheck c;
    c.id = "lemma3.instance";
    c.inputs["x"] = static_cast<double>(x);
    c.inputs["y"] = static_cast<double>(y);
    c.inputs["t"] = t;
    c.inputs["sigma_x"] = L.sigma(x);
    c.lhs = res.at_site(x);
    c.rhs = bound;
    c.margin = c.lhs - c.rhs;
    c.deficit = res.deficit;
    c.vacuous = (bound == 0.0);
    c.verdict = c.vacuous ? (c.lhs >= c.rhs) : (c.lhs >= c.rhs && c.margin > c.deficit);
    c.note = res.backend;
    return c;
}

BoundCheck verify_corollary(Landscape& L, int n, double epsilon) {
    const Alpha alpha(L.alpha());
    const LocScales base = loc_scales(n, epsilon, alpha);
    const long long b = static_cast<long long>(base.b_n);
    L.materialize({-b, b});

    const EventReport E = check_E_loc(L, n, epsilon);
    if (!E.holds) throw precondition_violation("verify_corollary: landscape does not satisfy E_loc");
    const LocScales sc = loc_scales(n, epsilon, alpha, L); // populates x_n

    const Generator g = build_generator(L, {-b, b}, Boundary::absorbing);
    const TransientResult res = transient(g, 0, sc.t_n);

    BoundCheck c;
    c.id = "corollary4.mass";
    c.inputs["n"] = static_cast<double>(n);
    c.inputs["epsilon"] = epsilon;
    c.inputs["x_n"] = static_cast<double>(sc.x_n);
    c.inputs["t_n"] = sc.t_n;
    c.inputs["event_margin"] = E.margin;
    c.lhs = res.at_site(sc.x_n);
    c.rhs = localized_mass_bound(epsilon);
    c.margin = c.lhs - c.rhs;
    c.deficit = res.deficit;
    c.vacuous = (c.rhs == 0.0);
    c.verdict = c.vacuous ? (c.lhs > c.rhs) : (c.lhs > c.rhs && c.margin > c.deficit);
    c.note = res.backend;
    return c;
}

// --- delocalization side ---------------------------------------------------

double ball_volume(const Landscape& L, long long x, long long r) {
    if (r < 1) throw invalid_parameter("ball_volume: r must be >= 1");
    return L.stats({x - r + 1, x + r - 1}).sum;
}

BoundCheck diag_heat_check(const Generator& g, long long x, long long r) {
    if (r < 1) throw invalid_parameter("diag_heat_check: r must be >= 1");
    const Interval ball{x - r + 1, x + r - 1};
    if (!g.window.contains(ball))
        throw invalid_parameter("diag_heat_check: window does not contain the ball");
    double v = 0.0, comp = 0.0;
    for (long long z = ball.lo; z <= ball.hi; ++z) {
        const double term = g.sigma[g.index(z)] - comp;
        const double next = v + term;
        comp = (next - v) - term;
        v = next;
    }
    const double t = 2.0 * static_cast<double>(r) * v;
    const TransientResult res = transient_spectral(g, x, t);
    const double sx = g.sigma[g.index(x)];

    BoundCheck c;
    c.id = "nearbound.diag";
    c.inputs["x"] = static_cast<double>(x);
    c.inputs["r"] = static_cast<double>(r);
    c.inputs["volume"] = v;
    c.inputs["t"] = t;
    // absorbed mass is added back so lhs upper-bounds the full-lattice kernel
    c.lhs = (res.at_site(x) + res.deficit) / sx;
    c.rhs = 2.0 / v;
    c.margin = c.rhs - c.lhs;
    c.deficit = res.deficit;
    c.verdict = (c.lhs <= c.rhs);
    return c;
}

BoundCheck cs_check(const Generator& g, double t, long long x, long long y, double slack) {
    const double pxy = heat_kernel(g, t, x, y);
    const double pxx = heat_kernel(g, t, x, x);
    const double pyy = heat_kernel(g, t, y, y);

    BoundCheck c;
    c.id = "nearbound.cs";
    c.inputs["x"] = static_cast<double>(x);
    c.inputs["y"] = static_cast<double>(y);
    c.inputs["t"] = t;
    c.inputs["slack"] = slack;
    c.lhs = pxy;
    c.rhs = std::sqrt(pxx * pyy) + slack;
    c.margin = c.rhs - c.lhs;
    c.verdict = (c.lhs <= c.rhs);
    return c;
}

BoundCheck sup_mass_check(const Generator& g, const DelocScales& sc) {
    const Interval checked{sc.grid_site(-sc.K + 1), sc.grid_site(sc.K)};
    if (!g.window.contains(checked))
        throw invalid_parameter("sup_mass_check: window does not contain the checked range");
    const TransientResult res = transient_spectral(g, 0, sc.t_n);
    double sup = 0.0;
    long long arg = checked.lo;
    for (long long z = checked.lo; z <= checked.hi; ++z) {
        const double p = res.at_site(z);
        if (p > sup) {
            sup = p;
            arg = z;
        }
    }

    BoundCheck c;
    c.id = "nearbound.sup";
    c.inputs["t_n"] = sc.t_n;
    c.inputs["argmax"] = static_cast<double>(arg);
    c.inputs["sup_raw"] = sup;
    c.lhs = sup + res.deficit; // upper bound on the full-lattice sup over the range
    c.rhs = 4.0 * sc.epsilon;
    c.margin = c.rhs - c.lhs;
    c.deficit = res.deficit;
    c.vacuous = (c.rhs >= 1.0);
    c.verdict = (c.lhs < c.rhs);
    return c;
}

BoundCheck volume_sandwich_check(const Landscape& L, const DelocScales& sc) {
    const long long a = static_cast<long long>(sc.a_n);
    const Interval checked{sc.grid_site(-sc.K + 1), sc.grid_site(sc.K)};
    const double ts = sc.trap_scale;
    double worst = std::numeric_limits<double>::infinity();
    long long worst_site = checked.lo;
    double v_min = std::numeric_limits<double>::infinity();
    double v_max = 0.0;
    for (long long x = checked.lo; x <= checked.hi; ++x) {
        const double v = ball_volume(L, x, a);
        v_min = std::min(v_min, v);
        v_max = std::max(v_max, v);
        const double m = std::min(v - 0.5 * ts, 6.0 * ts - v);
        if (m < worst) {
            worst = m;
            worst_site = x;
        }
    }

    BoundCheck c;
    c.id = "nearbound.volume";
    c.inputs["v_min"] = v_min;
    c.inputs["v_max"] = v_max;
    c.inputs["trap_scale"] = ts;
    c.inputs["worst_site"] = static_cast<double>(worst_site);
    c.lhs = worst; // min over the range of min(V - ts/2, 6 ts - V)
    c.rhs = 0.0;
    c.margin = worst;
    c.verdict = (worst > 0.0);
    c.note = "two-sided; lhs is the worst signed slack in sigma units";
    return c;
}

std::vector<BoundCheck> exit_expectation_checks(const Landscape& L, const DelocScales& sc,
                                                long long x) {
    const long long a = static_cast<long long>(sc.a_n);
    if (a == 0 || x % a != 0)
        throw invalid_parameter("exit_expectation_checks: x must be a grid site");
    const long long k = x / a;
    if (k < -sc.K + 2 || k > sc.K - 1)
        throw invalid_parameter("exit_expectation_checks: grid index outside [-K+2, K-1]");
    const long long r = 2 * a;
    const double scale = static_cast<double>(a) * sc.trap_scale; // a_n^(1+1/alpha) ell

    BoundCheck lower;
    lower.id = "confinement.exit_center";
    lower.inputs["x"] = static_cast<double>(x);
    lower.inputs["r"] = static_cast<double>(r);
    lower.lhs = expected_exit_time(L, x, r, x);
    lower.rhs = scale;
    lower.margin = lower.lhs - lower.rhs;
    lower.verdict = (lower.lhs > lower.rhs);

    double emax = 0.0;
    long long yarg = x;
    for (long long y = x - r + 1; y <= x + r - 1; ++y) {
        const double e = expected_exit_time(L, x, r, y);
        if (e > emax) {
            emax = e;
            yarg = y;
        }
    }
    BoundCheck upper;
    upper.id = "confinement.exit_sup";
    upper.inputs["x"] = static_cast<double>(x);
    upper.inputs["r"] = static_cast<double>(r);
    upper.inputs["argmax_start"] = static_cast<double>(yarg);
    upper.lhs = emax;
    upper.rhs = 16.0 * scale;
    upper.margin = upper.rhs - upper.lhs;
    upper.verdict = (upper.lhs < upper.rhs);

    return {lower, upper};
}

BoundCheck confinement_check(Landscape& L, const DelocScales& sc, long long x) {
    const long long a = static_cast<long long>(sc.a_n);
    const Interval window{x - 2 * a + 1, x + 2 * a - 1};
    L.materialize(window);
    const Generator g = build_generator(L, window, Boundary::absorbing);
    const TransientResult res = transient(g, x, sc.t_tilde);

    BoundCheck c;
    c.id = "confinement.survival";
    c.inputs["x"] = static_cast<double>(x);
    c.inputs["t_tilde"] = sc.t_tilde;
    c.lhs = res.total(); // lower bound on P^x(tau >= t_tilde)
    c.rhs = 1.0 / 32.0;
    c.margin = c.lhs - c.rhs;
    c.deficit = res.deficit;
    c.verdict = (c.lhs > c.rhs);
    c.note = res.backend;
    return c;
}

double confinement_count_bound(unsigned long long k) {
    if (k < 1) throw invalid_parameter("confinement_count_bound: k must be >= 1");
    const unsigned long long trials = (k - 1) / 2;
    if (trials <= 24) return 1.0;
    return binomial_cdf(trials, 1.0 / 32.0, 24);
}

// --- heavy-tail sums (Laplace machinery) ------------------------------------

namespace {

// int_lo^inf exp(-v) v^(-alpha-1) dv, lo > 0
double laplace_exp_tail(double alpha, double lo) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(
        [alpha](double v) { return std::exp(-v) * std::pow(v, -alpha - 1.0); }, lo,
        std::numeric_limits<double>::infinity(), 1.0e-10);
}

// int_theta^1 (1 - exp(-v)) v^(-alpha-1) dv, 0 < theta < 1
double laplace_head(double alpha, double theta) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(
        [alpha](double v) { return -std::expm1(-v) * std::pow(v, -alpha - 1.0); }, theta, 1.0,
        1.0e-10);
}

} // namespace

double trap_laplace_one_minus(double alpha, double theta) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw invalid_parameter("trap_laplace_one_minus: alpha must be positive");
    if (!(theta >= 0.0) || !std::isfinite(theta))
        throw invalid_parameter("trap_laplace_one_minus: theta must be >= 0");
    if (theta == 0.0) return 0.0;
    // 1 - E exp(-theta sigma) = alpha theta^alpha int_theta^inf (1-e^-v) v^(-alpha-1) dv;
    // split the integral at max(theta, 1) where the pure power part is exact.
    const double lo = std::max(theta, 1.0);
    double integral = std::pow(lo, -alpha) / alpha - laplace_exp_tail(alpha, lo);
    if (theta < 1.0) integral += laplace_head(alpha, theta);
    return alpha * std::pow(theta, alpha) * integral;
}

double laplace_ratio(double alpha, double theta) {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw invalid_parameter("laplace_ratio: alpha must lie in (0,1]");
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw invalid_parameter("laplace_ratio: theta must be positive");
    if (alpha == 1.0 && theta >= 1.0)
        throw invalid_parameter("laplace_ratio: alpha = 1 profile needs theta < 1");
    const double c = (alpha < 1.0) ? boost::math::tgamma(1.0 - alpha) : 1.0;
    const double profile = c * std::pow(theta, alpha) * ell_alpha(alpha, 1.0 / theta);
    return trap_laplace_one_minus(alpha, theta) / profile;
}

double sum_tail_bound(double alpha, unsigned long long n, double c) {
    if (n < 1) throw invalid_parameter("sum_tail_bound: n must be >= 1");
    if (!(c > 0.0) || !std::isfinite(c)) throw invalid_parameter("sum_tail_bound: c must be positive");
    const double omp = trap_laplace_one_minus(alpha, 1.0 / c);
    const double tail =
        (omp >= 1.0) ? 1.0 : -std::expm1(static_cast<double>(n) * std::log1p(-omp));
    return tail / (1.0 - std::exp(-1.0));
}

// --- suites ------------------------------------------------------------------

std::vector<BoundCheck> run_lemma3_suite(std::uint64_t seed, int instances) {
    if (instances < 1) throw invalid_parameter("run_lemma3_suite: instances must be >= 1");
    std::vector<BoundCheck> out;
    out.reserve(static_cast<std::size_t>(instances));
    const std::uint64_t root = rng::derive_seed(seed, "lemma3");

    for (int idx = 0; idx < instances; ++idx) {
        const double alpha = (idx % 2 == 0) ? 0.5 : 1.0;
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 64) throw numerical_failure("lemma3 sampler: no admissible instance");
            const std::uint64_t sub =
                rng::keyed_word(root, static_cast<std::uint64_t>(idx) * 97u + attempt);
            // geometry draws use their own key so they never alias the
            // sample_trap counters of the same sub-seed
            const std::uint64_t geo = rng::derive_seed(sub, "geometry");
            const long long y = 120 + static_cast<long long>(rng::keyed_word(geo, 1) % 241u);
            const long long x =
                3 + static_cast<long long>(rng::keyed_word(geo, 2) % static_cast<std::uint64_t>(y / 6 - 2));
            const double theta = 3.0 + static_cast<double>(rng::keyed_word(geo, 3) % 900u) / 100.0;

            std::map<long long, double> table;
            double s_rest = 0.0, comp = 0.0;
            for (long long z = -y; z <= y; ++z) {
                const double v = sample_trap(sub, alpha, z);
                table[z] = v;
                if (z == x) continue;
                const double term = v - comp;
                const double next = s_rest + term;
                comp = (next - s_rest) - term;
                s_rest = next;
            }
            const double sx = theta * s_rest; // planted trap dominates the window
            table[x] = sx;

            double s_inner = 0.0;
            for (long long z = -y + 1; z < x; ++z) s_inner += table[z];
            const double t1 = static_cast<double>(x) * s_inner * static_cast<double>(x + y) /
                              static_cast<double>(y);
            const double t = 3.0 * t1;
            const double t2 = static_cast<double>(y - x) * sx * sx / (s_rest + sx);
            // keep both factors of the bound away from zero: t = 3 T1 fixes the
            // first at 2/3 of its ceiling, t < T2/3 keeps the second above
            // (2/3) theta/(1+theta)
            if (!(t > 0.0) || !(t < t2 / 3.0)) continue;

            Landscape L = Landscape::constructed(std::move(table), 1.0, alpha);
            BoundCheck c = verify_localization_instance(L, x, y, t);
            c.inputs["instance"] = static_cast<double>(idx);
            c.inputs["alpha"] = alpha;
            c.inputs["theta"] = theta;
            out.push_back(std::move(c));
            break;
        }
    }
    return out;
}

std::vector<BoundCheck> run_corollary4_suite(std::uint64_t seed, const std::vector<double>& eps_list,
                                             int constructed_per_eps, int found_per_eps, int n) {
    if (constructed_per_eps < 0 || found_per_eps < 0 || constructed_per_eps + found_per_eps == 0)
        throw invalid_parameter("run_corollary4_suite: nothing to run");
    const Alpha alpha(0.5);
    std::vector<BoundCheck> out;

    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        const double eps = eps_list[e];
        const std::uint64_t root =
            rng::keyed_word(rng::derive_seed(seed, "corollary4"), static_cast<std::uint64_t>(e));

        for (int v = 0; v < constructed_per_eps; ++v) {
            Landscape L = make_localized_landscape(rng::keyed_word(root, 1000u + v), n, eps, alpha);
            BoundCheck c = verify_corollary(L, n, eps);
            c.inputs["source"] = 0.0; // constructed
            out.push_back(std::move(c));
        }
        if (found_per_eps > 0) {
            const std::uint64_t scan_start = rng::keyed_word(root, 7u) % 1000000u;
            const auto seeds = find_E_loc_seeds(alpha, n, eps, found_per_eps, scan_start, 200000);
            for (const std::uint64_t s : seeds) {
                Landscape L(s, alpha);
                BoundCheck c = verify_corollary(L, n, eps);
                c.inputs["source"] = 1.0; // filtered random
                c.inputs["landscape_seed"] = static_cast<double>(s);
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

namespace {

// same landscape family for the nearbound and confinement suites so the two
// examine one set of configurations
Landscape deloc_suite_landscape(std::uint64_t seed, int j, int n, double epsilon, int K,
                                long long halo) {
    const std::uint64_t root = rng::derive_seed(seed, "deloc-suite");
    return make_delocalized_landscape(rng::keyed_word(root, static_cast<std::uint64_t>(j)), n,
                                      epsilon, K, Alpha(0.5), halo);
}

} // namespace

std::vector<BoundCheck> run_nearbound_suite(std::uint64_t seed, int landscapes, int n,
                                            double epsilon, int K) {
    if (landscapes < 1) throw invalid_parameter("run_nearbound_suite: landscapes must be >= 1");
    const long long halo = 2048;
    std::vector<BoundCheck> out;

    for (int j = 0; j < landscapes; ++j) {
        Landscape L = deloc_suite_landscape(seed, j, n, epsilon, K, halo);
        const DelocScales sc = deloc_scales(n, epsilon, K, Alpha(L.alpha()));
        const EventReport E = check_E_deloc(L, n, epsilon, K);
        if (!E.holds) throw numerical_failure("run_nearbound_suite: constructed landscape misses E_deloc");

        const Generator g = build_generator(L, {-halo, halo}, Boundary::absorbing);
        const long long a = static_cast<long long>(sc.a_n);

        auto tag = [&](BoundCheck c) {
            c.inputs["landscape"] = static_cast<double>(j);
            out.push_back(std::move(c));
        };

        tag(volume_sandwich_check(L, sc));
        tag(sup_mass_check(g, sc));

        // diagonal decay on and between the grid sites of the checked range
        for (long long x = sc.grid_site(-K + 1); x <= sc.grid_site(K); x += a / 2)
            tag(diag_heat_check(g, x, a));

        // cross bounds between the origin and the rest of the grid
        for (int k = -K + 1; k <= K; ++k) {
            if (k == 0) continue;
            tag(cs_check(g, sc.t_n, 0, sc.grid_site(k)));
        }

        // on-diagonal monotonicity in t at the origin
        BoundCheck mono;
        mono.id = "nearbound.diag_monotone";
        mono.inputs["t_lo"] = sc.t_tilde;
        mono.inputs["t_hi"] = sc.t_n;
        mono.lhs = heat_kernel(g, sc.t_n, 0, 0);
        mono.rhs = heat_kernel(g, sc.t_tilde, 0, 0);
        mono.margin = mono.rhs - mono.lhs;
        mono.verdict = (mono.lhs <= mono.rhs);
        tag(std::move(mono));
    }
    return out;
}

std::vector<BoundCheck> run_confinement_suite(std::uint64_t seed, int landscapes, int n,
                                              double epsilon, int K) {
    if (landscapes < 1) throw invalid_parameter("run_confinement_suite: landscapes must be >= 1");
    const long long halo = 2048;
    std::vector<BoundCheck> out;

    for (int j = 0; j < landscapes; ++j) {
        Landscape L = deloc_suite_landscape(seed, j, n, epsilon, K, halo);
        const DelocScales sc = deloc_scales(n, epsilon, K, Alpha(L.alpha()));
        const EventReport E = check_E_deloc(L, n, epsilon, K);
        if (!E.holds)
            throw numerical_failure("run_confinement_suite: constructed landscape misses E_deloc");

        for (int k = -K + 2; k <= K - 1; ++k) {
            const long long x = sc.grid_site(k);
            for (BoundCheck& c : exit_expectation_checks(L, sc, x)) {
                c.inputs["landscape"] = static_cast<double>(j);
                out.push_back(std::move(c));
            }
            BoundCheck s = confinement_check(L, sc, x);
            s.inputs["landscape"] = static_cast<double>(j);
            out.push_back(std::move(s));
        }
    }

    // landscape-free checks on the visit-count tail curve
    {
        BoundCheck c;
        c.id = "confinement.count_exact";
        double dev = 0.0;
        for (unsigned long long k = 1; k <= 50; ++k)
            dev = std::max(dev, std::fabs(confinement_count_bound(k) - 1.0));
        c.lhs = dev;
        c.rhs = 0.0;
        c.margin = -dev;
        c.verdict = (dev == 0.0);
        c.note = "bound is exactly 1 for k <= 50";
        out.push_back(std::move(c));
    }
    {
        BoundCheck c;
        c.id = "confinement.count_51";
        const double expected = 1.0 - std::pow(32.0, -25.0);
        const double got = confinement_count_bound(51);
        c.lhs = std::fabs(got - expected) / expected;
        c.rhs = 1.0e-15;
        c.margin = c.rhs - c.lhs;
        c.inputs["value"] = got;
        c.verdict = (c.lhs <= c.rhs);
        out.push_back(std::move(c));
    }
    {
        BoundCheck c;
        c.id = "confinement.count_monotone";
        double worst = 0.0;
        double prev = confinement_count_bound(1);
        for (unsigned long long k = 2; k <= 2001; ++k) {
            const double cur = confinement_count_bound(k);
            worst = std::max(worst, cur - prev);
            prev = cur;
        }
        c.lhs = worst;
        c.rhs = 0.0;
        c.margin = -worst;
        c.verdict = (worst <= 0.0);
        c.note = "largest increase over k = 1..2001";
        out.push_back(std::move(c));
    }
    {
        BoundCheck c;
        c.id = "confinement.count_logtail";
        const double got = log_binomial_tail(25, 1.0 / 32.0, 24);
        const double expected = -25.0 * std::log(32.0);
        c.lhs = std::fabs(got - expected) / std::fabs(expected);
        c.rhs = 1.0e-9;
        c.margin = c.rhs - c.lhs;
        c.inputs["value"] = got;
        c.verdict = (c.lhs <= c.rhs);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<BoundCheck> run_laplace_suite(std::uint64_t seed) {
    std::vector<BoundCheck> out;

    {
        BoundCheck c;
        c.id = "laplace.ratio";
        const double r = laplace_ratio(0.5, 1.0e-6);
        c.inputs["alpha"] = 0.5;
        c.inputs["theta"] = 1.0e-6;
        c.lhs = r;
        c.rhs = 1.0;
        c.margin = std::min(r - 0.98, 1.02 - r);
        c.verdict = (c.margin > 0.0);
        c.note = "band [0.98, 1.02]";
        out.push_back(std::move(c));
    }
    {
        BoundCheck c;
        c.id = "laplace.ratio_alpha1";
        const double r = laplace_ratio(1.0, 1.0e-6);
        c.inputs["alpha"] = 1.0;
        c.inputs["theta"] = 1.0e-6;
        c.lhs = r;
        c.rhs = 1.0;
        c.margin = std::min(r - 1.0, 1.05 - r);
        c.verdict = (c.margin > 0.0);
        c.note = "band (1.0, 1.05); log correction decays like 1/log(1/theta)";
        out.push_back(std::move(c));
    }
    {
        BoundCheck c;
        c.id = "laplace.ratio_trend";
        const double far = std::fabs(laplace_ratio(0.5, 1.0e-2) - 1.0);
        const double near = std::fabs(laplace_ratio(0.5, 1.0e-6) - 1.0);
        c.lhs = near;
        c.rhs = far;
        c.margin = far - near;
        c.verdict = (near < far);
        c.note = "|ratio - 1| shrinks as theta -> 0";
        out.push_back(std::move(c));
    }

    struct Triple {
        double alpha;
        unsigned long long n;
        double c;
    };
    const Triple triples[] = {
        {0.5, 1000, 1.0e7}, {0.5, 200, 1.0e6}, {1.0, 1000, 2.0e4}, {0.8, 500, 2.0e4},
        {1.0, 300, 5.0e3},
    };
    const std::size_t reps = 4000;
    const std::uint64_t mc_root = rng::derive_seed(seed, "laplace-mc");

    for (std::size_t i = 0; i < std::size(triples); ++i) {
        const Triple& tr = triples[i];
        const double bound = sum_tail_bound(tr.alpha, tr.n, tr.c);
        rng::Stream stream(rng::keyed_word(mc_root, i));
        std::size_t hits = 0;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            double s = 0.0;
            for (unsigned long long m = 0; m < tr.n; ++m)
                s += pareto_from_uniform(stream.next_uniform01(), tr.alpha);
            if (s > tr.c) ++hits;
        }
        const double phat = static_cast<double>(hits) / static_cast<double>(reps);
        const double se = std::sqrt(std::max(phat * (1.0 - phat), 1.0 / static_cast<double>(reps)) /
                                    static_cast<double>(reps));

        BoundCheck c;
        c.id = "laplace.dominates";
        c.inputs["alpha"] = tr.alpha;
        c.inputs["n"] = static_cast<double>(tr.n);
        c.inputs["c"] = tr.c;
        c.inputs["empirical"] = phat;
        c.inputs["reps"] = static_cast<double>(reps);
        c.lhs = bound;
        c.rhs = std::max(phat - 4.0 * se, 0.0);
        c.margin = c.lhs - c.rhs;
        c.deficit = 4.0 * se;
        c.verdict = (c.lhs > c.rhs);
        c.note = "rhs is the empirical tail minus 4 standard errors";
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace btm
