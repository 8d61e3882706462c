#pragma once

#include "btm/landscape.hpp"

namespace btm {

// Closed-form hitting quantities for the walk (all but the last are
// sigma-free because the embedded chain is the simple random walk), plus
// independent tridiagonal-solve evaluators used as ground truth.

// P^0(tau_x < tau_-y) = y / (x+y) for x, y >= 1.
double gambler_ruin(long long x, long long y);

// P^y(tau_i < tau(x,r)) = min{(x+r-y)/(x+r-i), (y-x+r)/(i-x+r)}
// for |y-x| < r, |i-x| < r. Equals 1 when y is on i's boundary side.
double hit_before_exit(long long x, long long r, long long y, long long i);

// P^i(tau_i^+ > tau(x,r)) = ((i-x+r)^-1 + (x+r-i)^-1) / 2.
double return_escape(long long x, long long r, long long i);

// E^y[tau(x,r)] = 2 sum_i hit_before_exit * return_escape^-1 * sigma_i over
// i in (x-r, x+r). Requires that interval materialized.
double expected_exit_time(const Landscape& L, long long x, long long r, long long y);

// Tail bounds for confinement from 0 between x > 0 and -y < 0 at horizon t:
//   upper: P(tau_x ^ tau_-y >= t) <= x * sum_{-y<z<x} sigma_z / t
//   lower: P^x(tau_-y ^ tau_y > t) >= 1 - t / ((y-x) sigma_x)
// raw values may leave [0,1]; the clamped fields are the usable bounds.
struct ExitTailBounds {
    double upper_raw = 0.0, upper = 0.0;
    double lower_raw = 0.0, lower = 0.0;
};
ExitTailBounds exit_tail_bounds(const Landscape& L, long long x, long long y, double t);

// Ground-truth tridiagonal solves (Thomas algorithm) for the same
// functionals, assembled with the sigma-dependent generator rows.
double solve_gambler_ruin(const Landscape& L, long long x, long long y);
double solve_hit_before_exit(const Landscape& L, long long x, long long r, long long y, long long i);
double solve_return_escape(const Landscape& L, long long x, long long r, long long i);
double solve_expected_exit_time(const Landscape& L, long long x, long long r, long long y);

} // namespace btm
