#include "btm/simulate.hpp"

#include <cmath>
#include <string>

#include "btm/budget.hpp"
#include "btm/errors.hpp"

namespace btm {

namespace {

// lazy chunked materialization while a path wanders
void need_site(Landscape& L, long long x) {
    if (!L.is_seeded()) return;
    if (L.materialized_range().contains(x)) return;
    L.materialize({x - 256, x + 256});
}

void check_paths(std::size_t paths) {
    if (paths == 0) throw invalid_parameter("paths must be positive");
    if (paths > budget().mc_paths)
        throw resource_limit("paths " + std::to_string(paths) + " over the mc_paths budget");
}

} // namespace

PathRecord simulate_path(Landscape& L, double t_end, std::uint64_t seed,
                         const PathOptions& opt) {
    if (!std::isfinite(t_end) || t_end < 0.0)
        throw invalid_parameter("simulate_path: t_end must be finite and >= 0");
    if (opt.exit_radius < 0)
        throw invalid_parameter("simulate_path: exit_radius must be >= 0");

    rng::Stream s(seed);
    PathRecord rec;
    rec.hit_times.assign(opt.hit_sites.size(), no_time);

    long long x = 0;
    double t = 0.0;
    const bool track_exit = opt.exit_radius > 0;
    const bool track_hits = !opt.hit_sites.empty();

    auto note_hit = [&](long long site) {
        for (std::size_t i = 0; i < opt.hit_sites.size(); ++i)
            if (opt.hit_sites[i] == site && rec.hit_times[i] == no_time) rec.hit_times[i] = t;
    };

    need_site(L, 0);
    if (track_hits) note_hit(0);

    while (true) {
        const double hold = L.sigma(x) * s.next_exp();
        if (t + hold >= t_end) {
            t = t_end; // clock runs out while sitting at x
            break;
        }
        t += hold;
        x += s.next_bit() ? 1 : -1;
        ++rec.jumps;
        need_site(L, x);
        if (track_hits) note_hit(x);
        if (track_exit && rec.exit_time == no_time) {
            const long long d = x >= opt.exit_center ? x - opt.exit_center
                                                     : opt.exit_center - x;
            if (d >= opt.exit_radius) {
                rec.exit_time = t;
                if (opt.stop_at_exit) break;
            }
        }
    }
    rec.end_site = x;
    rec.end_time = t;
    return rec;
}

std::vector<double> mc_pmf(Landscape& L, double t, Interval window, std::size_t paths,
                           std::uint64_t seed) {
    if (window.empty()) throw invalid_parameter("mc_pmf: empty window");
    check_paths(paths);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(window.size()), 0);
    for (std::size_t p = 0; p < paths; ++p) {
        const PathRecord rec = simulate_path(L, t, rng::keyed_word(seed, p));
        if (window.contains(rec.end_site))
            ++counts[static_cast<std::size_t>(rec.end_site - window.lo)];
    }
    std::vector<double> pmf(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        pmf[i] = static_cast<double>(counts[i]) / static_cast<double>(paths);
    return pmf;
}

namespace {

void check_exit_geometry(long long r, long long off_y, long long off_i) {
    if (r < 1) throw invalid_parameter("exit radius must be >= 1");
    if (off_y >= r || off_y <= -r)
        throw invalid_parameter("start must lie strictly inside (x-r, x+r)");
    if (off_i >= r || off_i <= -r)
        throw invalid_parameter("target must lie strictly inside (x-r, x+r)");
}

} // namespace

double mc_hit_before_exit(long long x, long long r, long long y, long long i,
                          std::size_t paths, std::uint64_t seed) {
    check_exit_geometry(r, y - x, i - x);
    check_paths(paths);
    std::size_t hits = 0;
    for (std::size_t p = 0; p < paths; ++p) {
        rng::Stream s(rng::keyed_word(seed, p));
        long long pos = y;
        while (true) {
            if (pos == i) {
                ++hits;
                break;
            }
            const long long d = pos >= x ? pos - x : x - pos;
            if (d >= r) break;
            pos += s.next_bit() ? 1 : -1;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(paths);
}

double mc_return_escape(long long x, long long r, long long i, std::size_t paths,
                        std::uint64_t seed) {
    check_exit_geometry(r, i - x, i - x);
    check_paths(paths);
    std::size_t escapes = 0;
    for (std::size_t p = 0; p < paths; ++p) {
        rng::Stream s(rng::keyed_word(seed, p));
        long long pos = i + (s.next_bit() ? 1 : -1);
        while (true) {
            if (pos == i) break; // returned first
            const long long d = pos >= x ? pos - x : x - pos;
            if (d >= r) {
                ++escapes;
                break;
            }
            pos += s.next_bit() ? 1 : -1;
        }
    }
    return static_cast<double>(escapes) / static_cast<double>(paths);
}

} // namespace btm
