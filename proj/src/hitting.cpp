#include "btm/hitting.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "btm/errors.hpp"

namespace btm {

namespace {

void check_exit_geometry(long long r, long long off_y, long long off_i) {
    if (r < 1) throw invalid_parameter("exit radius must be >= 1");
    if (r > 500000) throw invalid_parameter("exit radius past 5e5 (rational overflow)");
    if (off_y >= r || off_y <= -r)
        throw invalid_parameter("start must lie strictly inside (x-r, x+r)");
    if (off_i >= r || off_i <= -r)
        throw invalid_parameter("target must lie strictly inside (x-r, x+r)");
}

// Tridiagonal solve (Thomas); rows are weakly diagonally dominant here, so no
// pivoting is needed. Overwrites its inputs.
std::vector<double> thomas(std::vector<double>& sub, std::vector<double>& diag,
                           std::vector<double>& sup, std::vector<double>& rhs) {
    const std::size_t m = diag.size();
    for (std::size_t k = 1; k < m; ++k) {
        const double w = sub[k] / diag[k - 1];
        diag[k] -= w * sup[k - 1];
        rhs[k] -= w * rhs[k - 1];
    }
    std::vector<double> sol(m);
    sol[m - 1] = rhs[m - 1] / diag[m - 1];
    for (std::size_t k = m - 1; k-- > 0;) sol[k] = (rhs[k] - sup[k] * sol[k + 1]) / diag[k];
    return sol;
}

// Solve the harmonic-type system over sites [lo, hi] with boundary values at
// lo-1 and hi+1 and per-site source term:
//   (h(z-1) - 2 h(z) + h(z+1)) / (2 sigma_z) = -source_z
// Returns h on [lo, hi]. The sigma scaling keeps the assembled rows those of
// the actual generator.
std::vector<double> solve_block(const Landscape& L, long long lo, long long hi,
                                double left_bc, double right_bc, double source) {
    const std::size_t m = static_cast<std::size_t>(hi - lo + 1);
    std::vector<double> sub(m), diag(m), sup(m), rhs(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double half = 0.5 / L.sigma(lo + static_cast<long long>(k));
        sub[k] = half;
        sup[k] = half;
        diag[k] = -2.0 * half;
        rhs[k] = -source;
    }
    rhs[0] -= sub[0] * left_bc;
    rhs[m - 1] -= sup[m - 1] * right_bc;
    return thomas(sub, diag, sup, rhs);
}

} // namespace

double gambler_ruin(long long x, long long y) {
    if (x < 1 || y < 1) throw invalid_parameter("gambler_ruin: x and y must be >= 1");
    return static_cast<double>(y) / static_cast<double>(x + y);
}

double hit_before_exit(long long x, long long r, long long y, long long i) {
    check_exit_geometry(r, y - x, i - x);
    // min of two integer rationals, selected exactly in 64-bit arithmetic
    const long long p1 = x + r - y, q1 = x + r - i; // reach i before the right edge
    const long long p2 = y - x + r, q2 = i - x + r; // ... before the left edge
    if (p1 * q2 <= p2 * q1) return static_cast<double>(p1) / static_cast<double>(q1);
    return static_cast<double>(p2) / static_cast<double>(q2);
}

double return_escape(long long x, long long r, long long i) {
    check_exit_geometry(r, i - x, i - x);
    const double L = static_cast<double>(i - x + r);
    const double R = static_cast<double>(x + r - i);
    return 0.5 * (1.0 / L + 1.0 / R);
}

double expected_exit_time(const Landscape& L, long long x, long long r, long long y) {
    check_exit_geometry(r, y - x, y - x);
    // E^y tau = sum_i P^y(hit i first) / P^i(escape per visit) * sigma_i.
    // Each weight is the integer rational 2 p L R / (q (L+R)); forming it as
    // one 64-bit-exact quotient keeps sigma = 1 sums exactly r^2 - (y-x)^2...
    // in particular r^2 when started at the centre.
    double sum = 0.0, comp = 0.0;
    for (long long i = x - r + 1; i <= x + r - 1; ++i) {
        const long long p1 = x + r - y, q1 = x + r - i;
        const long long p2 = y - x + r, q2 = i - x + r;
        long long p, q;
        if (p1 * q2 <= p2 * q1) {
            p = p1;
            q = q1;
        } else {
            p = p2;
            q = q2;
        }
        const long long Lc = i - x + r, Rc = x + r - i; // escape odds components
        const long long num = 2 * p * Lc * Rc;
        const long long den = q * (Lc + Rc);
        const double weight = static_cast<double>(num) / static_cast<double>(den);
        const double term = weight * L.sigma(i);
        const double yk = term - comp; // Kahan
        const double tk = sum + yk;
        comp = (tk - sum) - yk;
        sum = tk;
    }
    return sum;
}

ExitTailBounds exit_tail_bounds(const Landscape& L, long long x, long long y, double t) {
    if (x < 1 || y < 1) throw invalid_parameter("exit_tail_bounds: x and y must be >= 1");
    if (y <= x) throw invalid_parameter("exit_tail_bounds: needs y > x");
    if (!(t > 0.0)) throw invalid_parameter("exit_tail_bounds: t must be positive");
    const IntervalStats left = L.stats({-y + 1, x - 1});
    ExitTailBounds b;
    b.upper_raw = static_cast<double>(x) * left.sum / t;
    b.upper = std::min(1.0, b.upper_raw);
    b.lower_raw = 1.0 - t / (static_cast<double>(y - x) * L.sigma(x));
    b.lower = std::max(0.0, b.lower_raw);
    return b;
}

double solve_gambler_ruin(const Landscape& L, long long x, long long y) {
    if (x < 1 || y < 1) throw invalid_parameter("solve_gambler_ruin: x and y must be >= 1");
    // h harmonic on (-y, x), h(-y) = 0, h(x) = 1; report h(0)
    const std::vector<double> h = solve_block(L, -y + 1, x - 1, 0.0, 1.0, 0.0);
    return h[static_cast<std::size_t>(y - 1)];
}

double solve_hit_before_exit(const Landscape& L, long long x, long long r, long long y,
                             long long i) {
    check_exit_geometry(r, y - x, i - x);
    if (y == i) return 1.0;
    // h harmonic on (x-r, x+r) \ {i}; h = 0 on the exit edges, h(i) = 1.
    // The two sides of i decouple; y lives on one of them.
    if (y < i) {
        const std::vector<double> h = solve_block(L, x - r + 1, i - 1, 0.0, 1.0, 0.0);
        return h[static_cast<std::size_t>(y - (x - r + 1))];
    }
    const std::vector<double> h = solve_block(L, i + 1, x + r - 1, 1.0, 0.0, 0.0);
    return h[static_cast<std::size_t>(y - (i + 1))];
}

double solve_return_escape(const Landscape& L, long long x, long long r, long long i) {
    check_exit_geometry(r, i - x, i - x);
    // g(z) = P^z(exit before hitting i): g(x +- r) = 1, g(i) = 0; after the
    // first (fair) jump from i the answer is the mean of the neighbours
    double g_left = 1.0, g_right = 1.0; // boundary defaults when i is edge-adjacent
    if (i - 1 > x - r) {
        const std::vector<double> h = solve_block(L, x - r + 1, i - 1, 1.0, 0.0, 0.0);
        g_left = h.back();
    }
    if (i + 1 < x + r) {
        const std::vector<double> h = solve_block(L, i + 1, x + r - 1, 0.0, 1.0, 0.0);
        g_right = h.front();
    }
    return 0.5 * (g_left + g_right);
}

double solve_expected_exit_time(const Landscape& L, long long x, long long r, long long y) {
    check_exit_geometry(r, y - x, y - x);
    // Q u = -1 on (x-r, x+r), u = 0 at the edges
    const std::vector<double> u = solve_block(L, x - r + 1, x + r - 1, 0.0, 0.0, 1.0);
    return u[static_cast<std::size_t>(y - (x - r + 1))];
}

} // namespace btm
