#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "btm/landscape.hpp"
#include "btm/scales.hpp"

namespace btm {

// Outcome of one event check. `holds` is the verdict; M and S are the
// headline witnesses feeding the binding inequalities (per-event meaning is
// documented in README); `margin` is the smallest signed slack among the
// defining inequalities, in the same units as the inequality itself, so
// near-boundary configurations are visible. `witnesses` carries every
// intermediate quantity by name.
struct EventReport {
    std::string event;
    int n = 0;
    double epsilon = 0.0;
    int K = 0;
    bool holds = false;
    double M = 0.0;
    double S = 0.0;
    double margin = 0.0;
    std::vector<std::pair<std::string, double>> witnesses;

    double witness(const std::string& name) const;
};

// Localization events at level n (alpha <= 1, epsilon in (0,1)):
//   E: max sigma over [1,a_n] dominates, and the rest of [-b_n,b_n] is small;
//   A: same shape over the fresh intervals I_n, J_n only;
//   B: the old region [-b_{n-1}, b_{n-1}] carries little mass (n >= 2).
EventReport check_E_loc(const Landscape& L, int n, double epsilon);
EventReport check_A_loc(const Landscape& L, int n, double epsilon);
EventReport check_B_loc(const Landscape& L, int n, double epsilon);

// Streaming twins for seeded laws (no materialization).
EventReport check_E_loc_streaming(std::uint64_t seed, Alpha alpha, int n, double epsilon);
EventReport check_A_loc_streaming(std::uint64_t seed, Alpha alpha, int n, double epsilon);
EventReport check_B_loc_streaming(std::uint64_t seed, Alpha alpha, int n, double epsilon);

// Delocalization events at level n >= 2 with blocks k = -K..K:
//   E: every block sum is moderate ((1/2,2) trap-scale units) and every block
//      max is small (< eps units);
//   A: same over blocks trimmed away from the level n-1 core, with sums in
//      (1/2, 3/2);
//   B: the level n-1 core [-K a_{n-1}, (K+1) a_{n-1}) is light.
EventReport check_E_deloc(const Landscape& L, int n, double epsilon, int K);
EventReport check_A_deloc(const Landscape& L, int n, double epsilon, int K);
EventReport check_B_deloc(const Landscape& L, int n, double epsilon, int K);

EventReport check_E_deloc_streaming(std::uint64_t seed, Alpha alpha, int n, double epsilon, int K);
EventReport check_A_deloc_streaming(std::uint64_t seed, Alpha alpha, int n, double epsilon, int K);
EventReport check_B_deloc_streaming(std::uint64_t seed, Alpha alpha, int n, double epsilon, int K);

// Trimmed blocks used by the deloc A event: block k with the level n-1 core
// cut away (k = 0 starts at (K+1) a_{n-1}; k = -1 is [-a_n, -K a_{n-1} - 1]).
Interval deloc_trimmed_block(const DelocScales& sc, int k);
// The light region of the deloc B event: [-K a_{n-1}, (K+1) a_{n-1} - 1].
Interval deloc_b_interval(const DelocScales& sc);

// Max/sum ratio guaranteed by the events (closed [1, a_n] convention):
// on E_loc the ratio exceeds 1/(1+3 eps); on E_deloc the ratio over the
// block [0, a_n) stays below 2 eps.
double loc_ratio_lower(double epsilon);

// --- engineered landscapes realizing the events ---------------------------

// Constructed localization configuration: one planted deep trap inside
// [1, a_n] on a mild background; `variant` varies trap position, strength
// and background. Holds E_loc by construction.
Landscape make_localized_landscape(std::uint64_t variant, int n, double epsilon, Alpha alpha);

// Conditioned delocalization configuration: per-block rejection sampling
// until every block of the core meets the E_deloc constraints; outside the
// core the table continues with unconditioned draws up to `halo` sites each
// side, then falls back to sigma = 1. Deterministic in (seed, parameters).
Landscape make_delocalized_landscape(std::uint64_t seed, int n, double epsilon, int K,
                                     Alpha alpha, long long halo = 2048);

// Scan seeds s, s+1, ... for seeded landscapes satisfying E_loc; returns the
// first `want` hits, giving up (resource_limit) after scan_limit seeds.
std::vector<std::uint64_t> find_E_loc_seeds(Alpha alpha, int n, double epsilon, int want,
                                            std::uint64_t scan_start, int scan_limit);

} // namespace btm
