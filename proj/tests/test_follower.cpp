#include <doctest.h>

#include <cmath>

#include "ose/demand.hpp"
#include "ose/follower.hpp"
#include "ose/oracle.hpp"
#include "support.hpp"

using namespace ose;
using ose::testing::default_scenario;
using ose::testing::ParamSampler;

namespace {

// Exact equilibrium wholesale prices of the two worked scenarios.
double w_low(const Market& m) { return (m.theta - m.m_e) / 2.0 - 2.0 * m.theta * m.pi0 / (m.A_hat * (m.theta - m.m_e)); }

}  // namespace

TEST_CASE("region labels round-trip") {
    for (int k = 1; k <= 6; ++k) {
        const auto r = static_cast<RegionId>(k);
        CHECK(region_from_string(to_string(r)) == r);
    }
    CHECK_FALSE(region_from_string("R7"));
}

TEST_CASE("classification of the worked scenarios") {
    const auto low = make_market(default_scenario(0.8));
    CHECK(classify_region(0.65, w_low(low), low) == RegionId::R3);
    CHECK(classify_region(0.65, 0.100862, low) == RegionId::R3);

    const auto high = make_market(default_scenario(1.25));
    CHECK(classify_region(0.54, w_low(high), high) == RegionId::R6);
    CHECK(classify_region(0.54, 0.338048, high) == RegionId::R6);

    CHECK_FALSE(classify_region(0.65, 0.8 - 0.1, low));
    CHECK_FALSE(classify_region(0.9, 1.25 - 0.1, high));
}

TEST_CASE("best response in the worked scenarios binds at pi0") {
    const auto low = make_market(default_scenario(0.8));
    auto f = follower_best_response(0.65, w_low(low), low);
    CHECK(f.source == Source::SwitchToS);
    CHECK(f.region == RegionId::R3);
    CHECK(f.p_e == doctest::Approx(0.45));
    CHECK(std::abs(f.profit - low.pi0) <= 1e-9);

    const auto high = make_market(default_scenario(1.25));
    f = follower_best_response(0.54, w_low(high), high);
    CHECK(f.source == Source::SwitchToS);
    CHECK(f.region == RegionId::R6);
    CHECK(f.p_e == doctest::Approx(0.675));
    CHECK(std::abs(f.profit - high.pi0) <= 1e-9);
}

TEST_CASE("below the entry threshold the follower stays") {
    auto r = default_scenario(0.8).raw();
    r.gamma1 = 0.1;  // A_hat = 0.37
    const auto p = validate_params(r);
    CHECK(nonempty_regions(p).empty());
    for (double pi : {0.2, 0.5, 0.8, 1.0})
        for (double w : {0.0, 0.1, 0.3}) {
            const auto f = follower_best_response(pi, w, p);
            CHECK(f.source == Source::StayWithIncumbent);
            CHECK(f.p_e == exterior_baseline(p).price);
            CHECK(f.profit == exterior_baseline(p).profit);
            CHECK_FALSE(f.region);
        }
}

TEST_CASE("nonempty regions") {
    CHECK(nonempty_regions(default_scenario(0.8)) == std::set<RegionId>{RegionId::R1, RegionId::R3});
    // A_hat = 0.58 clears (2 theta - 1)^2 pi0 / ((theta - 1)(theta - m_e)^2) = 0.4302 with m_e <= 1/2.
    CHECK(nonempty_regions(default_scenario(1.25)) ==
          std::set<RegionId>{RegionId::R4, RegionId::R5, RegionId::R6});
    CHECK(nonempty_regions(default_scenario(0.8, 0.05)) ==
          std::set<RegionId>{RegionId::R1, RegionId::R2, RegionId::R3});
}

TEST_CASE("returned price lies in the branch its region claims") {
    ParamSampler s(3);
    for (int k = 0; k < 3000; ++k) {
        const auto p = s.draw(k % 2 == 0);
        const auto m = make_market(p);
        const double pi = s.uni(0.0, 1.0), w = s.uni(0.0, std::max(0.0, pi - m.m_e));
        const auto f = follower_best_response(pi, w, m);
        if (f.source != Source::SwitchToS) continue;
        CHECK(f.profit >= m.pi0 - 1e-12);
        const double th = m.theta, pe = f.p_e, eps = 1e-12;
        switch (*f.region) {
            case RegionId::R1: CHECK(pe <= pi - 1.0 + th + eps); break;
            case RegionId::R2: CHECK((pe >= pi - 1.0 + th - eps && pe <= th * pi + eps)); break;
            case RegionId::R3: CHECK(std::abs(pe - (pi - 1.0 + th)) <= eps); break;
            case RegionId::R4: CHECK(pe <= th * pi + eps); break;
            case RegionId::R5: CHECK((pe >= th * pi - eps && pe <= pi + th - 1.0 + eps)); break;
            case RegionId::R6: CHECK(std::abs(pe - th * pi) <= eps); break;
        }
        // The region's price is the best the follower can do.
        const auto g = follower_grid_search(pi, w, m, {1e-3, 1e-3, 1e-3});
        CHECK(f.profit >= g.profit - 1e-12);
    }
}

TEST_CASE("profit equals pi0 on the binding curves") {
    const auto m = make_market(default_scenario(0.8));
    for (double pi : {0.45, 0.55, 0.65, 0.75}) {
        // Participation curve of R3: A_hat (1-p)/theta (p - 1 + theta - w - m_e) = pi0.
        const double w = pi - 1.0 + m.theta - m.m_e - m.theta * m.pi0 / (m.A_hat * (1.0 - pi));
        if (w < 0.0 || !in_region(RegionId::R3, pi, w, m)) continue;
        CHECK(std::abs(region_follower_profit(RegionId::R3, pi, w, m) - m.pi0) <= 1e-9);
    }
}

TEST_CASE("emptiness agrees with a grid scan") {
    ParamSampler s(9);
    for (int k = 0; k < 12; ++k) {
        const auto p = k % 3 == 0 ? s.draw_below_entry(k % 2 == 0) : s.draw_entering(k % 2 == 0);
        const auto m = make_market(p);
        bool any = false;
        for (int i = 0; i < 200 && !any; ++i)
            for (int j = 0; j < 200 && !any; ++j) any = classify_region(i / 199.0, m.theta * j / 199.0, m).has_value();
        CHECK(nonempty_regions(m).empty() == !any);
    }
}

TEST_CASE("agreement with the brute-force follower") {
    ParamSampler s(17);
    const GridSpec g{1e-3, 1e-3, 1e-3};
    for (int k = 0; k < 400; ++k) {
        const auto m = make_market(s.draw(k % 2 == 0));
        const double pi = s.uni(0.0, 1.0), w = s.uni(0.0, std::max(0.0, pi - m.m_e));
        const auto a = follower_best_response(pi, w, m);
        const auto o = brute_force_follower(pi, w, m, g);
        REQUIRE(a.source == o.source);
        CHECK(std::abs(a.p_e - o.p_e) <= 1e-3);
        CHECK(std::abs(a.profit - o.profit) <= 1e-4);
    }
}
