#pragma once

#include <memory>
#include <vector>

#include "btm/landscape.hpp"

namespace btm {

enum class Boundary { absorbing, reflecting };

// Eigendecomposition of the symmetrized generator, cached per Generator.
// With D = diag(sqrt sigma), A = D Q D^-1 is symmetric tridiagonal; its
// eigenpairs give exp(tQ) rows in O(n) per entry.
struct SpectralCache {
    std::size_t n = 0;
    std::vector<double> lambda;     // ascending; clamped to <= 0
    std::vector<double> z;          // row-major eigenvectors, z[i*n+j]
    std::vector<double> sqrt_sigma;
};

// Nearest-neighbour generator on a finite window: rate 1/(2 sigma_x) to each
// neighbour. Absorbing windows drop boundary-exit mass; reflecting windows
// suppress the outward jump.
struct Generator {
    Interval window;
    Boundary boundary = Boundary::absorbing;
    std::vector<double> sigma;

    std::size_t size() const { return sigma.size(); }
    long long site(std::size_t i) const { return window.lo + static_cast<long long>(i); }
    std::size_t index(long long x) const; // invalid_parameter if outside

    double off(std::size_t i) const { return 0.5 / sigma[i]; } // Q(i,i+-1)
    double diag(std::size_t i) const;                          // Q(i,i)

    mutable std::shared_ptr<const SpectralCache> spectral;
};

// Copies sigma from the landscape (which must already be materialized on the
// window; window must have >= 3 sites).
Generator build_generator(const Landscape& L, Interval window, Boundary boundary);

// Distribution of X_t on a window, started from a single site.
struct TransientResult {
    double t = 0.0;
    Interval window;
    Boundary boundary = Boundary::absorbing;
    std::vector<double> pmf;     // indexed from window.lo
    double deficit = 0.0;        // absorbing: mass lost at the boundary (upper bound)
    double trunc_error = 0.0;    // reflecting: series tail not accumulated
    const char* backend = "";

    double at_site(long long x) const {
        return window.contains(x) ? pmf[static_cast<std::size_t>(x - window.lo)] : 0.0;
    }
    double sup() const;
    long long argmax_site() const; // smallest site attaining sup
    double mass(Interval iv) const;
    double total() const;
};

// Jump-chain convolution at uniform rate 1 (valid since exit rates are
// 1/sigma <= 1): exp(tQ) = sum_k Poisson_t(k) P^k with P = I + Q. Poisson
// weights are accumulated in log space; stops once their mass reaches 1-tol.
TransientResult transient_uniformization(const Generator& g, long long init, double t, double tol);

// Dense-spectral variant; cost is one O(n^3) decomposition per generator
// (cached), then O(n^2) per query. Exact in t, so arbitrary horizons work.
TransientResult transient_spectral(const Generator& g, long long init, double t);

// Dispatch: step-based evolution for t <= budget().uniformization_t_max,
// spectral beyond.
TransientResult transient(const Generator& g, long long init, double t, double tol = 1.0e-12);

// Whole-lattice pmf of X_t started at 0: absorbing window, initially
// [-2 ceil(sqrt t), 2 ceil(sqrt t)], doubled until the absorbed mass is below
// tol (at most budget().window_doublings times). The result lower-bounds the
// infinite-lattice pmf pointwise and is within `deficit` of it in total
// variation.
TransientResult quenched_pmf(Landscape& L, double t, double tol);

// Heat kernel p_t(x,y) = P^x(X_t = y) / sigma_y via the spectral cache;
// algebraically and bitwise symmetric in (x,y).
double heat_kernel(const Generator& g, double t, long long x, long long y);
std::vector<double> heat_kernel_diag(const Generator& g, double t);

// Build (or fetch) the eigendecomposition; resource_limit past budget eigen_n.
const SpectralCache& spectral_cache(const Generator& g);

// Stationary law sigma / sum(sigma) of a reflecting window.
std::vector<double> stationary(const Generator& g);

} // namespace btm
