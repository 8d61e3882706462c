#pragma once

#include "btm/interval.hpp"
#include "btm/landscape.hpp"

namespace btm {

// Slowly varying correction attached to the alpha = 1 boundary case:
// ell_alpha(x) = 1 for alpha != 1 and log x for alpha = 1.
double ell_alpha(double alpha, double x);

// a_n = floor(exp(2 n log n)) = n^(2n), computed exactly in integer
// arithmetic. Overflows unsigned 64-bit past n = 9 -> resource_limit.
unsigned long long scale_a(int n);

// b_n = ceil(a_n / epsilon), epsilon in (0,1).
unsigned long long scale_b(int n, double epsilon);

// Derived quantities for the localization construction at level n.
struct LocScales {
    int n = 0;
    double epsilon = 0.0;
    double alpha = 0.0;
    unsigned long long a_n = 0;
    unsigned long long b_n = 0;
    double ell = 1.0;        // ell_alpha(a_n)
    double trap_scale = 0.0; // a_n^(1/alpha) * ell: natural sigma magnitude
    double t_n = 0.0;        // eps^-2 * a_n^(1+1/alpha) * ell (inf if overflow)
    double log_t_n = 0.0;    // always finite
    long long x_n = 0;       // argmax over [1, a_n] when populated
    bool x_n_set = false;
};

LocScales loc_scales(int n, double epsilon, Alpha alpha);
// Same, plus x_n = smallest argmax of sigma over [1, a_n] (needs that range
// materialized).
LocScales loc_scales(int n, double epsilon, Alpha alpha, const Landscape& L);

// Derived quantities for the delocalization construction at level n with
// 2K+1 grid blocks. Defined for n >= 2 (the construction references a_{n-1}).
struct DelocScales {
    int n = 0;
    double epsilon = 0.0;
    int K = 0;
    double alpha = 0.0;
    unsigned long long a_n = 0;
    unsigned long long a_prev = 0; // a_{n-1}
    double ell = 1.0;
    double trap_scale = 0.0;
    double t_n = 0.0;     // 12 * a_n^(1+1/alpha) * ell
    double log_t_n = 0.0;
    double t_tilde = 0.0; // t_n / 24

    long long grid_site(int k) const { return k * static_cast<long long>(a_n); }
    // grid block I_{n,k} = [k a_n, (k+1) a_n - 1]
    Interval block(int k) const {
        const long long a = static_cast<long long>(a_n);
        return {k * a, (k + 1) * a - 1};
    }
    // union of the checked blocks, [-K a_n, (K+1) a_n - 1]
    Interval core() const {
        const long long a = static_cast<long long>(a_n);
        return {-K * a, (K + 1) * a - 1};
    }
};

DelocScales deloc_scales(int n, double epsilon, int K, Alpha alpha);

// Intervals of the localization construction as closed integer intervals:
// level 1: I = [1, a_1],        J = [-b_1, 0]          u [a_1+1, b_1]
// level n: I = [b_{n-1}+1, a_n], J = [-b_n, -b_{n-1}-1] u [a_n+1, b_n]
struct LocIntervals {
    Interval I;
    Interval J_left;
    Interval J_right;
};
LocIntervals loc_intervals(int n, double epsilon);

// Desk-scale guard: exact-solver work is sized for n <= 4 and landscape
// statistics for n <= 6; beyond that callers must opt in explicitly.
inline constexpr int n_max_solver = 4;
inline constexpr int n_max_stats = 6;
void check_desk_scale(int n, bool solver_work, bool allow_huge);

} // namespace btm
