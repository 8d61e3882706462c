#include "btm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <lapacke.h>

#include "btm/budget.hpp"
#include "btm/errors.hpp"

namespace btm {

std::size_t Generator::index(long long x) const {
    if (!window.contains(x))
        throw invalid_parameter("Generator::index: site " + std::to_string(x) +
                                " outside window");
    return static_cast<std::size_t>(x - window.lo);
}

double Generator::diag(std::size_t i) const {
    const double rate = 1.0 / sigma[i];
    if (boundary == Boundary::reflecting && (i == 0 || i + 1 == size()))
        return -0.5 * rate; // outward jump suppressed
    return -rate;           // interior, or absorbing edge (mass exits)
}

Generator build_generator(const Landscape& L, Interval window, Boundary boundary) {
    if (window.empty() || window.size() < 3)
        throw invalid_parameter("build_generator: window needs at least 3 sites");
    if (!L.is_materialized(window))
        throw precondition_violation("build_generator: window not materialized");
    Generator g;
    g.window = window;
    g.boundary = boundary;
    g.sigma.resize(static_cast<std::size_t>(window.size()));
    for (std::size_t i = 0; i < g.sigma.size(); ++i)
        g.sigma[i] = L.sigma(window.lo + static_cast<long long>(i));
    return g;
}

double TransientResult::sup() const {
    double m = 0.0;
    for (double p : pmf) m = std::max(m, p);
    return m;
}

long long TransientResult::argmax_site() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pmf.size(); ++i)
        if (pmf[i] > pmf[best]) best = i; // strict: ties keep the smallest site
    return window.lo + static_cast<long long>(best);
}

double TransientResult::mass(Interval iv) const {
    double s = 0.0;
    const long long lo = std::max(iv.lo, window.lo);
    const long long hi = std::min(iv.hi, window.hi);
    for (long long x = lo; x <= hi; ++x) s += pmf[static_cast<std::size_t>(x - window.lo)];
    return s;
}

double TransientResult::total() const {
    double s = 0.0;
    for (double p : pmf) s += p;
    return s;
}

TransientResult transient_uniformization(const Generator& g, long long init, double t,
                                         double tol) {
    if (!std::isfinite(t) || t < 0.0)
        throw invalid_parameter("transient_uniformization: t must be finite and >= 0");
    if (!(tol > 0.0) || tol >= 1.0)
        throw invalid_parameter("transient_uniformization: tol must lie in (0,1)");
    const std::size_t n = g.size();
    const std::size_t i0 = g.index(init);

    // Poisson(t) weight window [klo, khi] with mass outside below tol/2, from
    // Chernoff tail bounds; refuses over-budget horizons up front
    const double log_tail = std::log(0.25 * tol);
    unsigned long long klo = 0, khi = 0;
    if (t > 0.0) {
        const double step = std::max(1.0, 0.5 * std::sqrt(t));
        double hi = std::floor(t);
        for (;;) {
            hi += step;
            const double x = hi / t;
            if (x > 1.0 && -t * (x * std::log(x) - x + 1.0) < log_tail) break;
            if (hi > static_cast<double>(budget().uniformization_steps))
                throw resource_limit("transient_uniformization: about " + std::to_string(hi) +
                                     " steps needed, over the uniformization_steps budget");
        }
        khi = static_cast<unsigned long long>(hi);
        if (khi > budget().uniformization_steps)
            throw resource_limit("transient_uniformization: about " + std::to_string(hi) +
                                 " steps needed, over the uniformization_steps budget");
        double lo = std::floor(t);
        while (lo > 0.0) {
            const double x = lo / t;
            const double xlx = x > 0.0 ? x * std::log(x) : 0.0;
            if (-t * (xlx - x + 1.0) < log_tail) break;
            lo = std::max(0.0, lo - step);
        }
        klo = static_cast<unsigned long long>(lo);
    }

    // weights by two-sided recurrence off the mode, then normalized to unit
    // sum: avoids lgamma noise, so backend agreement sits near machine level;
    // the clipped tail and the renormalization shift are charged below
    std::vector<double> wt(khi - klo + 1, 0.0);
    const unsigned long long mode =
        std::min(khi, std::max(klo, static_cast<unsigned long long>(t)));
    wt[mode - klo] = 1.0;
    for (unsigned long long k = mode; k < khi; ++k)
        wt[k + 1 - klo] = wt[k - klo] * (t / static_cast<double>(k + 1));
    for (unsigned long long k = mode; k > klo; --k)
        wt[k - 1 - klo] = wt[k - klo] * (static_cast<double>(k) / t);
    double wsum = 0.0, wcomp = 0.0;
    for (const double w : wt) {
        const double y = w - wcomp;
        const double s = wsum + y;
        wcomp = (s - wsum) - y;
        wsum = s;
    }
    for (double& w : wt) w /= wsum;

    // jump chain at uniform rate 1: P = I + Q, valid because exit rates are
    // 1/sigma <= 1
    std::vector<double> pd(n), off(n);
    for (std::size_t i = 0; i < n; ++i) {
        off[i] = 0.5 / g.sigma[i];
        pd[i] = 1.0 + g.diag(i);
    }

    std::vector<double> v(n, 0.0), w(n), acc(n, 0.0);
    v[i0] = 1.0;
    for (unsigned long long k = 0;; ++k) {
        if (k >= klo) {
            const double wk = wt[k - klo];
            for (std::size_t i = 0; i < n; ++i) acc[i] += wk * v[i];
        }
        if (k == khi) break;
        w[0] = v[0] * pd[0] + (n > 1 ? v[1] * off[1] : 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i)
            w[i] = v[i] * pd[i] + v[i - 1] * off[i - 1] + v[i + 1] * off[i + 1];
        if (n > 1) w[n - 1] = v[n - 1] * pd[n - 1] + v[n - 2] * off[n - 2];
        v.swap(w);
    }

    TransientResult r;
    r.t = t;
    r.window = g.window;
    r.boundary = g.boundary;
    r.backend = "uniformization";
    r.pmf = std::move(acc);
    const double total = r.total();
    if (g.boundary == Boundary::absorbing) {
        // counts boundary-exit mass plus the Poisson window clip, so it
        // upper-bounds the true absorbed mass
        r.deficit = std::max(0.0, 1.0 - total) + tol;
        r.trunc_error = tol;
    } else {
        r.trunc_error = std::max(0.0, 1.0 - total) + tol;
    }
    return r;
}

const SpectralCache& spectral_cache(const Generator& g) {
    if (g.spectral) return *g.spectral;
    const std::size_t n = g.size();
    if (n > budget().eigen_n)
        throw resource_limit("spectral_cache: window of " + std::to_string(n) +
                             " sites exceeds the eigen_n budget");
    auto cache = std::make_shared<SpectralCache>();
    cache->n = n;
    cache->sqrt_sigma.resize(n);
    for (std::size_t i = 0; i < n; ++i) cache->sqrt_sigma[i] = std::sqrt(g.sigma[i]);

    // symmetrization D Q D^-1 with D = diag(sqrt sigma): tridiagonal with the
    // same diagonal and off-diagonal 1/(2 sqrt(sigma_i sigma_{i+1}))
    std::vector<double> d(n);
    std::vector<double> e(n > 1 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) d[i] = g.diag(i);
    for (std::size_t i = 0; i + 1 < n; ++i)
        e[i] = 0.5 / (cache->sqrt_sigma[i] * cache->sqrt_sigma[i + 1]);

    cache->z.assign(n * n, 0.0);
    const lapack_int info =
        LAPACKE_dstevd(LAPACK_ROW_MAJOR, 'V', static_cast<lapack_int>(n), d.data(), e.data(),
                       cache->z.data(), static_cast<lapack_int>(n));
    if (info != 0)
        throw numerical_failure("spectral_cache: dstevd failed, info=" + std::to_string(info));

    // generator spectrum is nonpositive; clamp rounding spill across zero,
    // and pin the exact null mode of a conservative (reflecting) chain
    for (std::size_t j = 0; j < n; ++j) d[j] = std::min(d[j], 0.0);
    if (g.boundary == Boundary::reflecting) d[n - 1] = 0.0;
    cache->lambda = std::move(d);

    g.spectral = std::move(cache);
    return *g.spectral;
}

TransientResult transient_spectral(const Generator& g, long long init, double t) {
    if (!std::isfinite(t) || t < 0.0)
        throw invalid_parameter("transient_spectral: t must be finite and >= 0");
    const SpectralCache& c = spectral_cache(g);
    const std::size_t n = c.n;
    const std::size_t i0 = g.index(init);

    std::vector<double> ew(n);
    for (std::size_t j = 0; j < n; ++j) ew[j] = std::exp(t * c.lambda[j]);

    TransientResult r;
    r.t = t;
    r.window = g.window;
    r.boundary = g.boundary;
    r.backend = "spectral";
    r.pmf.assign(n, 0.0);
    const double* z0 = &c.z[i0 * n];
    const double inv_s0 = 1.0 / c.sqrt_sigma[i0];
    double band_max = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
        const double* zy = &c.z[y * n];
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += ew[j] * (z0[j] * zy[j]);
        const double ratio = c.sqrt_sigma[y] * inv_s0;
        double p = ratio * s;
        // probabilities only leave [0,1] by eigensolver rounding, which the
        // similarity transform amplifies by sqrt(sigma_y / sigma_x0); clamp
        // inside that band and fail loudly beyond it
        const double band =
            64.0 * static_cast<double>(n) * 2.220446049250313e-16 * std::max(1.0, ratio);
        band_max = std::max(band_max, band);
        if (p < 0.0) {
            if (p < -band)
                throw numerical_failure("transient_spectral: pmf entry " + std::to_string(p) +
                                        " below -" + std::to_string(band));
            p = 0.0;
        } else if (p > 1.0) {
            if (p > 1.0 + band)
                throw numerical_failure("transient_spectral: pmf entry " + std::to_string(p) +
                                        " above 1 + " + std::to_string(band));
            p = 1.0;
        }
        r.pmf[y] = p;
    }

    const double total = r.total();
    if (g.boundary == Boundary::reflecting) {
        if (std::abs(total - 1.0) > 1.0e-9)
            throw numerical_failure("transient_spectral: conservation off by " +
                                    std::to_string(total - 1.0));
        for (double& p : r.pmf) p /= total; // renormalize within the stated tolerance
        r.trunc_error = band_max;
    } else {
        r.deficit = std::max(0.0, 1.0 - total) + band_max;
        r.trunc_error = band_max;
    }
    return r;
}

TransientResult transient(const Generator& g, long long init, double t, double tol) {
    if (t <= budget().uniformization_t_max) return transient_uniformization(g, init, t, tol);
    return transient_spectral(g, init, t);
}

TransientResult quenched_pmf(Landscape& L, double t, double tol) {
    if (!std::isfinite(t) || t < 0.0)
        throw invalid_parameter("quenched_pmf: t must be finite and >= 0");
    if (!(tol > 0.0) || tol >= 1.0)
        throw invalid_parameter("quenched_pmf: tol must lie in (0,1)");

    long long w = std::max(2ll, 2 * static_cast<long long>(std::ceil(std::sqrt(t))));
    const int max_d = budget().window_doublings;
    const bool spectral_path = t > budget().uniformization_t_max;
    for (int d = 0;; ++d) {
        const Interval window{-w, w};
        if (window.size() > budget().landscape_sites)
            throw resource_limit("quenched_pmf: window exceeds the landscape_sites budget");
        if (spectral_path && window.size() > budget().eigen_n)
            throw resource_limit("quenched_pmf: window exceeds the eigen_n budget");
        L.materialize(window);
        const Generator g = build_generator(L, window, Boundary::absorbing);
        TransientResult r = transient(g, 0, t, std::min(0.1 * tol, 1.0e-12));
        if (r.deficit < tol) return r;
        if (d >= max_d)
            throw resource_limit("quenched_pmf: deficit " + std::to_string(r.deficit) +
                                 " still above tol after " + std::to_string(max_d) +
                                 " doublings");
        w *= 2;
    }
}

double heat_kernel(const Generator& g, double t, long long x, long long y) {
    if (!std::isfinite(t) || t < 0.0)
        throw invalid_parameter("heat_kernel: t must be finite and >= 0");
    const SpectralCache& c = spectral_cache(g);
    const std::size_t n = c.n;
    const std::size_t ix = g.index(x);
    const std::size_t iy = g.index(y);
    const double* zx = &c.z[ix * n];
    const double* zy = &c.z[iy * n];
    double s = 0.0;
    // the product z_x z_y is formed first, so the value is bitwise symmetric
    for (std::size_t j = 0; j < n; ++j) s += std::exp(t * c.lambda[j]) * (zx[j] * zy[j]);
    const double p = s / (c.sqrt_sigma[ix] * c.sqrt_sigma[iy]);
    return std::max(p, 0.0);
}

std::vector<double> heat_kernel_diag(const Generator& g, double t) {
    if (!std::isfinite(t) || t < 0.0)
        throw invalid_parameter("heat_kernel_diag: t must be finite and >= 0");
    const SpectralCache& c = spectral_cache(g);
    const std::size_t n = c.n;
    std::vector<double> ew(n);
    for (std::size_t j = 0; j < n; ++j) ew[j] = std::exp(t * c.lambda[j]);
    std::vector<double> out(n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        const double* zx = &c.z[x * n];
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += ew[j] * (zx[j] * zx[j]);
        out[x] = std::max(s, 0.0) / g.sigma[x];
    }
    return out;
}

std::vector<double> stationary(const Generator& g) {
    if (g.boundary != Boundary::reflecting)
        throw invalid_parameter("stationary: defined for reflecting windows");
    double total = 0.0;
    for (double s : g.sigma) total += s;
    std::vector<double> pi(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) pi[i] = g.sigma[i] / total;
    return pi;
}

} // namespace btm
