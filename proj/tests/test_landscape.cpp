// landscape and rng behavior: trap law shape, streaming vs materialized
// agreement, cache round-trips.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <vector>

#include "doctest.h"

#include "btm/errors.hpp"
#include "btm/landscape.hpp"
#include "btm/rng.hpp"
#include "btm/stats.hpp"

using namespace btm;

TEST_CASE("pareto transform hits pinned values") {
    CHECK(pareto_from_uniform(1.0, Alpha(0.5)) == 1.0);
    CHECK(pareto_from_uniform(0.25, Alpha(0.5)) == 16.0);
    CHECK(pareto_from_uniform(0.25, Alpha(2.0)) == 2.0);
    CHECK(pareto_from_uniform(0.01, Alpha(1.0)) == doctest::Approx(100.0).epsilon(1e-15));
    // decreasing in u, always >= 1
    double prev = pareto_from_uniform(1.0, Alpha(0.5));
    for (double u = 0.9; u > 0.05; u -= 0.1) {
        const double s = pareto_from_uniform(u, Alpha(0.5));
        CHECK(s >= prev);
        CHECK(s >= 1.0);
        prev = s;
    }
    CHECK_THROWS_AS(pareto_from_uniform(0.0, Alpha(0.5)), invalid_parameter);
    CHECK_THROWS_AS(pareto_from_uniform(1.5, Alpha(0.5)), invalid_parameter);
    CHECK_THROWS_AS(Alpha(0.0), invalid_parameter);
    CHECK_THROWS_AS(Alpha(-0.5), invalid_parameter);
}

TEST_CASE("trap draws follow the stated tail law") {
    // sigma = U^(-1/alpha) means sigma^(-alpha) should be uniform on (0,1]
    for (const double alpha : {0.5, 1.0, 2.0}) {
        std::vector<double> transformed;
        transformed.reserve(20000);
        for (long long x = -10000; x < 10000; ++x) {
            const double s = sample_trap(99u, Alpha(alpha), x);
            REQUIRE(s >= 1.0);
            transformed.push_back(std::pow(s, -alpha));
        }
        const double ks = ks_statistic(transformed, [](double u) { return u; });
        CHECK(ks < ks_critical_1pct(transformed.size()));
    }
}

TEST_CASE("uniform01 stream is uniform and bits are fair") {
    rng::Stream st(12345u);
    std::vector<double> u;
    std::uint64_t ones = 0;
    const std::size_t n = 20000;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = st.next_uniform01();
        REQUIRE(v > 0.0);
        REQUIRE(v <= 1.0);
        u.push_back(v);
        ones += st.next_bit() ? 1u : 0u;
    }
    CHECK(ks_statistic(u, [](double x) { return x; }) < ks_critical_1pct(n));
    const WilsonBand band = wilson_interval(ones, n, 4.0);
    CHECK(band.lo < 0.5);
    CHECK(band.hi > 0.5);
}

TEST_CASE("derive_seed separates tags and keyed_word separates keys") {
    const std::uint64_t a = rng::derive_seed(7u, "alpha");
    const std::uint64_t b = rng::derive_seed(7u, "beta");
    CHECK(a != b);
    CHECK(rng::derive_seed(8u, "alpha") != a);
    CHECK(rng::keyed_word(7u, 0) != rng::keyed_word(7u, 1));
    CHECK(rng::keyed_word(7u, 0) != rng::keyed_word(8u, 0));
}

TEST_CASE("streaming stats equal materialized stats bit for bit") {
    const Interval iv{-351, 412};
    for (const double alpha : {0.5, 1.0}) {
        Landscape L(4242u, Alpha(alpha));
        L.materialize(iv);
        const IntervalStats a = L.stats(iv);
        const IntervalStats b = seeded_interval_stats(4242u, Alpha(alpha), iv);
        CHECK(a.sum == b.sum);
        CHECK(a.max == b.max);
        CHECK(a.argmax == b.argmax);
        const IntervalStats c = interval_stats(L, iv);
        CHECK(a.sum == c.sum);
        CHECK(a.argmax == c.argmax);
    }
}

TEST_CASE("interval stats match a direct scan and are nearly additive") {
    Landscape L(77u, Alpha(0.5));
    L.materialize({-200, 200});
    const IntervalStats whole = L.stats({-200, 200});
    double sum = 0.0, mx = 0.0;
    long long arg = 0;
    for (long long x = -200; x <= 200; ++x) {
        sum += L.sigma(x);
        if (L.sigma(x) > mx) {
            mx = L.sigma(x);
            arg = x;
        }
    }
    CHECK(whole.max == mx);
    CHECK(whole.argmax == arg);
    CHECK(whole.sum == doctest::Approx(sum).epsilon(1e-12));
    const IntervalStats left = L.stats({-200, -1});
    const IntervalStats right = L.stats({0, 200});
    CHECK(left.sum + right.sum == doctest::Approx(whole.sum).epsilon(1e-12));
    CHECK(std::max(left.max, right.max) == whole.max);
}

TEST_CASE("materialize grows the hull and guards point access") {
    Landscape L(5u, Alpha(0.5));
    CHECK_THROWS_AS(L.sigma(0), precondition_violation);
    L.materialize({-10, 10});
    const double s0 = L.sigma(0);
    L.materialize({50, 60}); // hull extends to [-10, 60]
    CHECK(L.sigma(0) == s0); // previously materialized values never change
    CHECK(L.is_materialized({-10, 60}));
    CHECK_THROWS_AS(L.sigma(61), precondition_violation);
    CHECK(L.sigma(55) >= 1.0);
}

TEST_CASE("constructed landscapes read table plus fill") {
    Landscape L = Landscape::constructed({{5, 1.0e6}, {-2, 3.5}}, 1.0, 0.5);
    CHECK(L.sigma(5) == 1.0e6);
    CHECK(L.sigma(-2) == 3.5);
    CHECK(L.sigma(0) == 1.0);
    CHECK(L.sigma(123456) == 1.0);
    CHECK_FALSE(L.is_seeded());
    const IntervalStats st = L.stats({-10, 10});
    CHECK(st.max == 1.0e6);
    CHECK(st.argmax == 5);
    CHECK(st.sum == doctest::Approx(20.0 + 1.0e6 + 3.5).epsilon(1e-15));
}

TEST_CASE("cache files round-trip seeded and constructed landscapes") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "btm_landscape_test";
    fs::create_directories(dir);

    Landscape s(31u, Alpha(1.0));
    s.materialize({-40, 55});
    const std::string sp = (dir / "seeded.csv").string();
    s.save(sp, {-40, 55});
    Landscape s2 = Landscape::load(sp);
    CHECK(s2.is_seeded());
    CHECK(s2.seed() == 31u);
    CHECK(s2.alpha() == 1.0);
    for (long long x = -40; x <= 55; ++x) CHECK(s2.sigma(x) == s.sigma(x));

    Landscape c = Landscape::constructed({{0, 2.25}, {7, 9.5e12}}, 1.0, 0.5);
    const std::string cp = (dir / "constructed.csv").string();
    c.save(cp, {-5, 10});
    Landscape c2 = Landscape::load(cp);
    CHECK_FALSE(c2.is_seeded());
    CHECK(c2.sigma(7) == 9.5e12);
    CHECK(c2.sigma(3) == 1.0);
    CHECK(c2.sigma(900) == 1.0); // fill survives the round-trip

    CHECK_THROWS_AS(Landscape::load((dir / "missing.csv").string()), invalid_parameter);
}
