#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "btm/events.hpp"
#include "btm/solver.hpp"

namespace btm {

// One verified inequality: lhs vs rhs as printed, the signed slack of the
// claim, the solver truncation charged against that slack, and the verdict.
// A check is `vacuous` when the claimed bound has no content (e.g. a lower
// bound that is zero); vacuous checks never count as failures but are
// reported as such.
struct BoundCheck {
    std::string id;
    std::map<std::string, double> inputs;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double deficit = 0.0;
    bool verdict = false;
    bool vacuous = false;
    std::string note;
};

// --- localization side -----------------------------------------------------

// Two-factor lower bound for P_sigma(X_t = x) given confinement data on
// [-y, y], 0 < x < y:
//   (y/(x+y) - x sum_{-y<z<x} sigma_z / t)_+ *
//   (sigma_x / S([-y,y]) - t / ((y-x) sigma_x))_+
double localization_lower_bound(const Landscape& L, long long x, long long y, double t);

// The bound's epsilon profile on the favourable configuration:
// (1/(1+eps) - 3 eps)_+ * (1/(1+3 eps) - eps/(1-eps))_+.
double localized_mass_bound(double epsilon);

// Compare the exact absorbing-window pmf at x against the two-factor bound.
// Paths counted by the bound never leave (-y, y), so the window [-y, y]
// lower-bounds the infinite-lattice pmf while still dominating the bound;
// verdict requires slack > deficit.
BoundCheck verify_localization_instance(Landscape& L, long long x, long long y, double t);

// On a landscape satisfying E_loc (precondition): exact pmf at the deepest
// trap x_n at horizon t_n exceeds localized_mass_bound(epsilon), with slack
// beyond the solver deficit. Window [-b_n, b_n], the exact region the bound's
// paths are confined to.
BoundCheck verify_corollary(Landscape& L, int n, double epsilon);

// --- delocalization side ---------------------------------------------------

// Volume V(x, r) = S([x-r+1, x+r-1]).
double ball_volume(const Landscape& L, long long x, long long r);

// Universal on-diagonal decay: p_t(x,x) <= 2 / V(x,r) at t = 2 r V(x,r),
// evaluated on an absorbing window via the spectral cache (p is then a lower
// bound, so the comparison is conservative only through `deficit`, which is
// charged to the margin).
BoundCheck diag_heat_check(const Generator& g, long long x, long long r);

// Cauchy-Schwarz cross bound p_t(x,y) <= sqrt(p_t(x,x) p_t(y,y)) with an
// explicit rounding allowance.
BoundCheck cs_check(const Generator& g, double t, long long x, long long y,
                    double slack = 1.0e-12);

// sup_x P(X_{t_n} = x) over the checked blocks against 4 epsilon, on a
// landscape satisfying E_deloc. `g` must be an absorbing window generator
// containing the core with enough slack that the deficit is negligible.
BoundCheck sup_mass_check(const Generator& g, const DelocScales& sc);

// Block-volume sandwich implied by E_deloc:
// trap_scale/2 < V(x, a_n) < 6 trap_scale for x in [a_{n,-K+1}, a_{n,K}];
// one aggregated check over every site in that range.
BoundCheck volume_sandwich_check(const Landscape& L, const DelocScales& sc);

// Exit-time expectations at a grid site x in [a_{n,-K+2}, a_{n,K-1}]:
//   E^x tau(x, 2 a_n) > a_n^(1+1/alpha) ell, and
//   E^y tau(x, 2 a_n) < 16 a_n^(1+1/alpha) ell for every start y in the ball.
std::vector<BoundCheck> exit_expectation_checks(const Landscape& L, const DelocScales& sc,
                                                long long x);

// Survival P^x(tau(x, 2 a_n) >= t_tilde) > 1/32, computed exactly on the
// absorbing window (x - 2a_n, x + 2a_n).
BoundCheck confinement_check(Landscape& L, const DelocScales& sc, long long x);

// P(Bin(floor((k-1)/2), 1/32) <= 24): exactly 1 while the trial count is
// <= 24, then strictly decreasing in the trial count.
double confinement_count_bound(unsigned long long k);

// --- heavy-tail sums (Laplace machinery) ------------------------------------

// 1 - E exp(-theta sigma) for the Pareto(alpha) trap law, theta >= 0.
double trap_laplace_one_minus(double alpha, double theta);

// ratio of the above to its regular-variation profile
// c_alpha theta^alpha ell_alpha(1/theta), c_alpha = Gamma(1-alpha) for
// alpha < 1 and 1 at alpha = 1.
double laplace_ratio(double alpha, double theta);

// P(S_n > c) <= (1 - e^-1)^-1 (1 - E(exp(-sigma/c))^n), evaluated stably.
double sum_tail_bound(double alpha, unsigned long long n, double c);

// --- suites ------------------------------------------------------------------

std::vector<BoundCheck> run_lemma3_suite(std::uint64_t seed, int instances);
std::vector<BoundCheck> run_corollary4_suite(std::uint64_t seed, const std::vector<double>& eps_list,
                                             int constructed_per_eps, int found_per_eps, int n);
std::vector<BoundCheck> run_nearbound_suite(std::uint64_t seed, int landscapes, int n,
                                            double epsilon, int K);
std::vector<BoundCheck> run_confinement_suite(std::uint64_t seed, int landscapes, int n,
                                              double epsilon, int K);
std::vector<BoundCheck> run_laplace_suite(std::uint64_t seed);

} // namespace btm
