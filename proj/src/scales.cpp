#include "btm/scales.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "btm/errors.hpp"

namespace btm {

double ell_alpha(double alpha, double x) {
    if (!(alpha > 0)) throw invalid_parameter("ell_alpha: alpha must be positive");
    if (!(x > 0)) throw invalid_parameter("ell_alpha: x must be positive");
    return alpha == 1.0 ? std::log(x) : 1.0;
}

unsigned long long scale_a(int n) {
    // exp(2 n log n) = n^(2n) exactly; checked integer powers, no rounding
    if (n < 1) throw invalid_parameter("scale_a: n must be >= 1");
    unsigned long long r = 1;
    const auto base = static_cast<unsigned long long>(n);
    for (int k = 0; k < 2 * n; ++k) {
        if (r > std::numeric_limits<unsigned long long>::max() / base)
            throw resource_limit("scale_a: n^(2n) overflows 64 bits at n=" + std::to_string(n));
        r *= base;
    }
    return r;
}

unsigned long long scale_b(int n, double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw invalid_parameter("scale_b: epsilon must lie in (0,1)");
    const unsigned long long a = scale_a(n);
    // ceil(a / eps) in long double; exact for every desk-scale magnitude
    const long double q = static_cast<long double>(a) / static_cast<long double>(epsilon);
    const auto b = static_cast<unsigned long long>(std::ceil(q));
    return b;
}

namespace {

void check_heavy(double alpha, const char* who) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw invalid_parameter(std::string(who) + ": requires alpha in (0,1]");
}

} // namespace

LocScales loc_scales(int n, double epsilon, Alpha alpha) {
    check_heavy(alpha.value, "loc_scales");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw invalid_parameter("loc_scales: epsilon must lie in (0,1)");
    LocScales sc;
    sc.n = n;
    sc.epsilon = epsilon;
    sc.alpha = alpha.value;
    sc.a_n = scale_a(n);
    sc.b_n = scale_b(n, epsilon);
    const double a = static_cast<double>(sc.a_n);
    sc.ell = ell_alpha(alpha.value, a);
    sc.trap_scale = std::pow(a, 1.0 / alpha.value) * sc.ell;
    sc.log_t_n = -2.0 * std::log(epsilon) + (1.0 + 1.0 / alpha.value) * std::log(a) +
                 std::log(sc.ell);
    const double t = std::pow(a, 1.0 + 1.0 / alpha.value) * sc.ell / (epsilon * epsilon);
    sc.t_n = std::isfinite(t) ? t : std::numeric_limits<double>::infinity();
    return sc;
}

LocScales loc_scales(int n, double epsilon, Alpha alpha, const Landscape& L) {
    LocScales sc = loc_scales(n, epsilon, alpha);
    const IntervalStats st = L.stats({1, static_cast<long long>(sc.a_n)});
    sc.x_n = st.argmax;
    sc.x_n_set = true;
    return sc;
}

DelocScales deloc_scales(int n, double epsilon, int K, Alpha alpha) {
    check_heavy(alpha.value, "deloc_scales");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw invalid_parameter("deloc_scales: epsilon must lie in (0,1)");
    if (n < 2)
        throw invalid_parameter("deloc_scales: defined for n >= 2 (construction uses a_{n-1})");
    if (K < 1) throw invalid_parameter("deloc_scales: K must be >= 1");
    DelocScales sc;
    sc.n = n;
    sc.epsilon = epsilon;
    sc.K = K;
    sc.alpha = alpha.value;
    sc.a_n = scale_a(n);
    sc.a_prev = scale_a(n - 1);
    const double a = static_cast<double>(sc.a_n);
    sc.ell = ell_alpha(alpha.value, a);
    sc.trap_scale = std::pow(a, 1.0 / alpha.value) * sc.ell;
    sc.log_t_n = std::log(12.0) + (1.0 + 1.0 / alpha.value) * std::log(a) + std::log(sc.ell);
    const double t = 12.0 * std::pow(a, 1.0 + 1.0 / alpha.value) * sc.ell;
    sc.t_n = std::isfinite(t) ? t : std::numeric_limits<double>::infinity();
    sc.t_tilde = sc.t_n / 24.0;
    return sc;
}

LocIntervals loc_intervals(int n, double epsilon) {
    if (n < 1) throw invalid_parameter("loc_intervals: n must be >= 1");
    const auto a_n = static_cast<long long>(scale_a(n));
    const auto b_n = static_cast<long long>(scale_b(n, epsilon));
    LocIntervals iv;
    if (n == 1) {
        iv.I = {1, a_n};
        iv.J_left = {-b_n, 0};
        iv.J_right = {a_n + 1, b_n};
        return iv;
    }
    const auto b_prev = static_cast<long long>(scale_b(n - 1, epsilon));
    if (b_prev >= a_n)
        throw invalid_parameter(
            "loc_intervals: scale separation requires b_{n-1} < a_n (epsilon too small "
            "for this n)");
    iv.I = {b_prev + 1, a_n};
    iv.J_left = {-b_n, -b_prev - 1};
    iv.J_right = {a_n + 1, b_n};
    return iv;
}

void check_desk_scale(int n, bool solver_work, bool allow_huge) {
    const int cap = solver_work ? n_max_solver : n_max_stats;
    if (n > cap && !allow_huge)
        throw resource_limit("level n=" + std::to_string(n) + " exceeds the desk envelope (" +
                             std::to_string(cap) +
                             (solver_work ? " for solver work" : " for landscape statistics") +
                             "); pass --allow-huge to proceed");
}

} // namespace btm
