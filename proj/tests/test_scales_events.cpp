// scale ladder and event indicators: pinned values, structural identities,
// and the event implications the constructions rely on.
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"

#include "btm/errors.hpp"
#include "btm/events.hpp"
#include "btm/landscape.hpp"
#include "btm/scales.hpp"

using namespace btm;

TEST_CASE("scale_a is the exact integer ladder n^(2n)") {
    CHECK(scale_a(1) == 1ull);
    CHECK(scale_a(2) == 16ull);
    CHECK(scale_a(3) == 729ull);
    CHECK(scale_a(4) == 65536ull);
    CHECK(scale_a(5) == 9765625ull);
    CHECK(scale_a(9) == 150094635296999121ull); // 9^18
    CHECK_THROWS_AS(scale_a(10), resource_limit);
    CHECK_THROWS_AS(scale_a(0), invalid_parameter);
}

TEST_CASE("scale_b rounds a_n / epsilon upward on the evaluated double") {
    CHECK(scale_b(2, 0.2) == 80ull);
    CHECK(scale_b(2, 0.5) == 32ull);
    CHECK(scale_b(1, 0.3) == 4ull);
    // 729 / 0.3 evaluates just above 2430, so the honest ceiling is 2431
    CHECK(scale_b(3, 0.3) == 2431ull);
    for (int n = 1; n <= 4; ++n)
        CHECK(static_cast<double>(scale_b(n, 0.25)) >=
              static_cast<double>(scale_a(n)) / 0.25 - 1e-9);
    CHECK_THROWS_AS(scale_b(2, 0.0), invalid_parameter);
    CHECK_THROWS_AS(scale_b(2, 1.0), invalid_parameter);
}

TEST_CASE("ell_alpha is log only at alpha = 1") {
    CHECK(ell_alpha(0.5, 729.0) == 1.0);
    CHECK(ell_alpha(2.0, 16.0) == 1.0);
    CHECK(ell_alpha(1.0, 729.0) == doctest::Approx(6.0 * std::log(3.0)).epsilon(1e-15));
    CHECK(ell_alpha(1.0, 16.0) == doctest::Approx(std::log(16.0)).epsilon(1e-15));
}

TEST_CASE("loc scales carry the pinned level-2 values") {
    const LocScales sc = loc_scales(2, 0.2, Alpha(0.5));
    CHECK(sc.a_n == 16ull);
    CHECK(sc.b_n == 80ull);
    CHECK(sc.trap_scale == doctest::Approx(256.0).epsilon(1e-15)); // 16^2
    CHECK(sc.t_n == doctest::Approx(25.0 * 4096.0).epsilon(1e-13)); // eps^-2 a^3
    CHECK_FALSE(sc.x_n_set);

    Landscape L(11u, Alpha(0.5));
    L.materialize({1, 16});
    const LocScales sl = loc_scales(2, 0.2, Alpha(0.5), L);
    CHECK(sl.x_n_set);
    CHECK(sl.x_n >= 1);
    CHECK(sl.x_n <= 16);
    CHECK(L.stats({1, 16}).argmax == sl.x_n);

    // alpha = 1 at n = 1 has ell(a_1) = log 1 = 0: degenerate, refused
    CHECK_THROWS_AS(loc_scales(1, 0.2, Alpha(1.0)), invalid_parameter);
}

TEST_CASE("deloc scales and grid geometry") {
    const DelocScales sc = deloc_scales(2, 0.2, 2, Alpha(0.5));
    CHECK(sc.a_n == 16ull);
    CHECK(sc.a_prev == 1ull);
    CHECK(sc.t_n == doctest::Approx(12.0 * 4096.0).epsilon(1e-13));
    CHECK(sc.t_tilde == doctest::Approx(sc.t_n / 24.0).epsilon(1e-15));
    CHECK(sc.grid_site(0) == 0);
    CHECK(sc.grid_site(-2) == -32);
    CHECK(sc.block(0).lo == 0);
    CHECK(sc.block(0).hi == 15);
    CHECK(sc.block(-1).lo == -16);
    CHECK(sc.block(-1).hi == -1);
    CHECK(sc.core().lo == -32);
    CHECK(sc.core().hi == 47);
    // blocks tile the core
    long long covered = 0;
    for (int k = -2; k <= 2; ++k) covered += sc.block(k).hi - sc.block(k).lo + 1;
    CHECK(covered == sc.core().hi - sc.core().lo + 1);
    CHECK_THROWS_AS(deloc_scales(1, 0.2, 2, Alpha(0.5)), invalid_parameter);
}

TEST_CASE("loc intervals partition the fresh window") {
    const LocIntervals iv1 = loc_intervals(1, 0.2);
    CHECK(iv1.I.lo == 1);
    CHECK(iv1.I.hi == 1);
    CHECK(iv1.J_left.lo == -5); // -b_1, b_1 = ceil(1/0.2) = 5
    CHECK(iv1.J_left.hi == 0);
    CHECK(iv1.J_right.lo == 2);
    CHECK(iv1.J_right.hi == 5);

    const LocIntervals iv2 = loc_intervals(2, 0.2);
    CHECK(iv2.I.lo == 6); // b_1 + 1
    CHECK(iv2.I.hi == 16);
    CHECK(iv2.J_left.lo == -80);
    CHECK(iv2.J_left.hi == -6);
    CHECK(iv2.J_right.lo == 17);
    CHECK(iv2.J_right.hi == 80);
}

TEST_CASE("desk scale guard") {
    CHECK_NOTHROW(check_desk_scale(4, true, false));
    CHECK_THROWS_AS(check_desk_scale(5, true, false), resource_limit);
    CHECK_NOTHROW(check_desk_scale(5, true, true));
    CHECK_NOTHROW(check_desk_scale(6, false, false));
    CHECK_THROWS_AS(check_desk_scale(7, false, false), resource_limit);
}

TEST_CASE("trimmed blocks and light region of the deloc events") {
    const DelocScales sc = deloc_scales(2, 0.2, 2, Alpha(0.5));
    const Interval b = deloc_b_interval(sc);
    CHECK(b.lo == -2); // [-K a_1, (K+1) a_1 - 1] with a_1 = 1
    CHECK(b.hi == 2);
    const Interval t0 = deloc_trimmed_block(sc, 0);
    CHECK(t0.lo == 3); // (K+1) a_1
    CHECK(t0.hi == 15);
    const Interval tm1 = deloc_trimmed_block(sc, -1);
    CHECK(tm1.lo == -16);
    CHECK(tm1.hi == -3); // -K a_1 - 1
    // off-core blocks are untrimmed
    const Interval t1 = deloc_trimmed_block(sc, 1);
    CHECK(t1.lo == 16);
    CHECK(t1.hi == 31);
}

TEST_CASE("event reports expose a coherent holds/margin pair") {
    int holds_seen = 0;
    for (std::uint64_t s = 0; s < 400; ++s) {
        const EventReport e = check_E_loc_streaming(s, Alpha(0.5), 2, 0.3);
        CHECK(e.event == "E_loc");
        CHECK(e.n == 2);
        CHECK(e.M > 0.0);
        CHECK(e.S >= e.M);
        CHECK(e.holds == (e.margin > 0.0));
        holds_seen += e.holds ? 1 : 0;
    }
    CHECK(holds_seen > 0); // the scan parameters make hits reachable
}

TEST_CASE("A and B together imply E, localization side") {
    int a_and_b = 0;
    for (std::uint64_t s = 0; s < 4000; ++s) {
        const EventReport a = check_A_loc_streaming(s, Alpha(0.5), 2, 0.3);
        const EventReport b = check_B_loc_streaming(s, Alpha(0.5), 2, 0.3);
        if (a.holds && b.holds) {
            ++a_and_b;
            const EventReport e = check_E_loc_streaming(s, Alpha(0.5), 2, 0.3);
            CHECK(e.holds);
        }
    }
    CHECK(a_and_b > 0);
}

TEST_CASE("A and B together imply E, delocalization side") {
    int a_and_b = 0;
    for (std::uint64_t s = 0; s < 3000; ++s) {
        const EventReport a = check_A_deloc_streaming(s, Alpha(0.5), 2, 0.25, 1);
        const EventReport b = check_B_deloc_streaming(s, Alpha(0.5), 2, 0.25, 1);
        if (a.holds && b.holds) {
            ++a_and_b;
            const EventReport e = check_E_deloc_streaming(s, Alpha(0.5), 2, 0.25, 1);
            CHECK(e.holds);
        }
    }
    CHECK(a_and_b > 0);
}

TEST_CASE("streaming event checks agree with materialized ones") {
    for (std::uint64_t s : {3u, 17u, 4242u}) {
        Landscape L(s, Alpha(0.5));
        const EventReport em = check_E_loc(L, 2, 0.2);
        const EventReport es = check_E_loc_streaming(s, Alpha(0.5), 2, 0.2);
        CHECK(em.holds == es.holds);
        CHECK(em.M == es.M);
        CHECK(em.S == es.S);

        Landscape D(s, Alpha(0.5));
        const EventReport dm = check_E_deloc(D, 2, 0.2, 2);
        const EventReport ds = check_E_deloc_streaming(s, Alpha(0.5), 2, 0.2, 2);
        CHECK(dm.holds == ds.holds);
        CHECK(dm.M == ds.M);
    }
}

TEST_CASE("engineered localized landscapes satisfy E_loc") {
    for (std::uint64_t v = 0; v < 10; ++v) {
        Landscape L = make_localized_landscape(v, 2, 0.2, Alpha(0.5));
        CHECK(check_E_loc(L, 2, 0.2).holds);
    }
    for (std::uint64_t v = 0; v < 4; ++v) {
        Landscape L = make_localized_landscape(v, 3, 0.3, Alpha(0.5));
        CHECK(check_E_loc(L, 3, 0.3).holds);
    }
}

TEST_CASE("engineered delocalized landscapes satisfy E_deloc") {
    for (std::uint64_t s = 0; s < 6; ++s) {
        Landscape L = make_delocalized_landscape(s, 2, 0.2, 2, Alpha(0.5), 256);
        const EventReport e = check_E_deloc(L, 2, 0.2, 2);
        CHECK(e.holds);
        // on E_deloc the block max/sum ratio over [0, a_n) is small
        const DelocScales sc = deloc_scales(2, 0.2, 2, Alpha(0.5));
        const IntervalStats st = L.stats(sc.block(0));
        CHECK(st.max / st.sum < 2.0 * 0.2);
    }
}

TEST_CASE("found seeds satisfy E_loc and the scan is deterministic") {
    const std::vector<std::uint64_t> seeds = find_E_loc_seeds(Alpha(0.5), 2, 0.2, 2, 0, 200000);
    REQUIRE(seeds.size() == 2);
    for (const std::uint64_t s : seeds) CHECK(check_E_loc_streaming(s, Alpha(0.5), 2, 0.2).holds);
    CHECK(find_E_loc_seeds(Alpha(0.5), 2, 0.2, 2, 0, 200000) == seeds);
    CHECK_THROWS_AS(find_E_loc_seeds(Alpha(0.5), 2, 0.2, 1, 0, 3), resource_limit);
}

TEST_CASE("loc ratio lower bound constant") {
    CHECK(loc_ratio_lower(0.2) == doctest::Approx(1.0 / 1.6).epsilon(1e-15));
    // and it is the ratio E_loc actually certifies on engineered landscapes
    Landscape L = make_localized_landscape(1u, 2, 0.2, Alpha(0.5));
    const IntervalStats st = L.stats({1, 16});
    const IntervalStats all = L.stats({-80, 80});
    CHECK(st.max / all.sum > loc_ratio_lower(0.2));
}
