#pragma once

#include <cstddef>
#include <string>

namespace btm {

// Resource budgets. Defaults suit a small single-core workstation with a few
// GB of memory. Every field can be overridden through the BTM_LAB_BUDGET
// environment variable, a comma-separated key=value list, e.g.
//
//   BTM_LAB_BUDGET="landscape_sites=100000000,eigen_n=16000"
//
// Unknown keys and malformed values are rejected (invalid_parameter) so typos
// do not silently keep defaults.
struct Budget {
    // max number of materialized sites per landscape
    std::size_t landscape_sites = std::size_t{1} << 26;
    // max window size handed to the dense symmetric eigensolver; the
    // decomposition needs ~2*8*n^2 bytes of scratch, so 12000 stays under
    // ~2.5 GB
    std::size_t eigen_n = 12000;
    // transient dispatch: step-based evolution for t below this, else spectral
    double uniformization_t_max = 1.0e5;
    // hard cap on the number of jump-chain convolution steps
    std::size_t uniformization_steps = 250000;
    // adaptive window growth limit for whole-lattice pmf queries
    int window_doublings = 12;
    // cap on Monte Carlo paths per experiment
    std::size_t mc_paths = 50000000;

    static Budget from_env(); // defaults overridden by BTM_LAB_BUDGET
    // apply a key=value,... override list on top of `base` (or the defaults)
    static Budget parse(const std::string& spec, Budget base);
    static Budget parse(const std::string& spec);
};

// Process-wide budget, parsed from the environment on first use.
const Budget& budget();

// Replace the process budget (used by CLI flags and by tests).
void set_budget(const Budget& b);

} // namespace btm
