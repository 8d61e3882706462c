#include "btm/landscape.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "btm/budget.hpp"
#include "btm/csvio.hpp"

namespace btm {

Landscape::Landscape(std::uint64_t seed, Alpha alpha)
    : seeded_(true), seed_(seed), alpha_(alpha.value) {}

Landscape Landscape::constructed(std::map<long long, double> values, double fill,
                                 double alpha_attr) {
    if (!(fill >= 1.0))
        throw invalid_parameter("constructed landscape: fill must be >= 1");
    for (const auto& [x, v] : values) {
        (void)x;
        if (!(v >= 1.0))
            throw invalid_parameter("constructed landscape: all sigma must be >= 1");
    }
    Landscape L;
    L.seeded_ = false;
    L.alpha_ = Alpha(alpha_attr).value;
    L.table_ = std::move(values);
    L.fill_ = fill;
    return L;
}

void Landscape::materialize(Interval iv) {
    if (iv.empty()) return;
    if (!seeded_) return; // constructed landscapes are defined everywhere
    Interval h = hull(range_, iv);
    if (h == range_) return;
    if (h.size() > budget().landscape_sites)
        throw resource_limit("materialize: hull of " + std::to_string(h.size()) +
                             " sites exceeds landscape_sites budget");
    std::vector<double> fresh(static_cast<std::size_t>(h.size()));
    for (long long x = h.lo; x <= h.hi; ++x) {
        auto i = static_cast<std::size_t>(x - h.lo);
        if (range_.contains(x))
            fresh[i] = values_[static_cast<std::size_t>(x - range_.lo)];
        else
            fresh[i] = sample_trap(seed_, alpha_, x);
    }
    range_ = h;
    values_ = std::move(fresh);
}

bool Landscape::is_materialized(Interval iv) const {
    if (!seeded_) return true;
    return range_.contains(iv);
}

namespace {

// shared by materialized and streaming paths so the two agree bitwise
template <class SigmaAt>
IntervalStats scan_interval(Interval iv, SigmaAt&& sigma_at) {
    IntervalStats st;
    st.interval = iv;
    double sum = 0.0, comp = 0.0;
    double mx = 0.0;
    long long arg = iv.lo;
    for (long long x = iv.lo; x <= iv.hi; ++x) {
        const double v = sigma_at(x);
        const double y = v - comp; // Kahan step
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (v > mx) { // strict: ties keep the smallest index
            mx = v;
            arg = x;
        }
    }
    st.sum = sum;
    st.max = mx;
    st.argmax = arg;
    return st;
}

} // namespace

IntervalStats Landscape::stats(Interval iv) const {
    if (iv.empty()) throw invalid_parameter("interval_stats: empty interval");
    if (seeded_ && !is_materialized(iv))
        throw precondition_violation("interval_stats: interval not materialized");
    return scan_interval(iv, [this](long long x) { return sigma(x); });
}

IntervalStats interval_stats(const Landscape& L, Interval iv) { return L.stats(iv); }

IntervalStats seeded_interval_stats(std::uint64_t seed, Alpha alpha, Interval iv) {
    if (iv.empty()) throw invalid_parameter("seeded_interval_stats: empty interval");
    return scan_interval(
        iv, [&](long long x) { return sample_trap(seed, alpha.value, x); });
}

void Landscape::save(const std::string& path, Interval iv) const {
    if (iv.empty()) throw invalid_parameter("save: empty interval");
    if (seeded_ && !is_materialized(iv))
        throw precondition_violation("save: interval not materialized");
    std::ostringstream out;
    out << "btm-landscape v1 seed=" << (seeded_ ? seed_ : 0) << " alpha=" << fmt17(alpha_)
        << " range=" << iv.lo << ".." << iv.hi << "\n";
    if (!seeded_) out << "fill," << fmt17(fill_) << "\n";
    for (long long x = iv.lo; x <= iv.hi; ++x)
        out << x << "," << fmt17(sigma(x)) << "\n";
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::trunc);
        if (!f) throw resource_limit("save: cannot open " + tmp);
        f << out.str();
        if (!f.flush()) throw resource_limit("save: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw resource_limit("save: rename failed for " + path);
}

Landscape Landscape::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw invalid_parameter("load: cannot open " + path);
    std::string header;
    std::getline(f, header);
    std::uint64_t seed = 0;
    double alpha = 0;
    long long lo = 0, hi = 0;
    char alpha_buf[64] = {0};
    if (std::sscanf(header.c_str(),
                    "btm-landscape v1 seed=%" SCNu64 " alpha=%63s range=%lld..%lld", &seed,
                    alpha_buf, &lo, &hi) != 4)
        throw invalid_parameter("load: bad header in " + path + ": '" + header + "'");
    {
        std::size_t pos = 0;
        alpha = std::stod(alpha_buf, &pos);
        if (pos != std::strlen(alpha_buf))
            throw invalid_parameter("load: bad alpha in " + path);
    }

    // a "fill" row marks a constructed landscape; seeded caches never have one
    std::map<long long, double> table;
    double fill = 1.0;
    bool has_fill = false;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw invalid_parameter("load: bad row in " + path + ": '" + line + "'");
        const std::string key = line.substr(0, comma);
        const double v = std::stod(line.substr(comma + 1));
        if (key == "fill") {
            fill = v;
            has_fill = true;
            continue;
        }
        const long long x = std::stoll(key);
        if (!(v >= 1.0))
            throw invalid_parameter("load: sigma < 1 in " + path + " at x=" + key);
        table[x] = v;
    }

    if (has_fill) return Landscape::constructed(std::move(table), fill, alpha);

    std::vector<double> vals;
    vals.reserve(table.size());
    long long expect = lo;
    for (const auto& [x, v] : table) {
        if (x != expect)
            throw invalid_parameter("load: non-contiguous rows in " + path);
        vals.push_back(v);
        ++expect;
    }
    if (expect != hi + 1)
        throw invalid_parameter("load: row count does not match range in " + path);
    Landscape L(seed, Alpha(alpha));
    L.range_ = {lo, hi};
    L.values_ = std::move(vals);
    return L;
}

} // namespace btm
