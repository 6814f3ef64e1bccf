#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "eihlab/normal.hpp"
#include "eihlab/strategies.hpp"
#include "fixtures.hpp"

using namespace eihlab;

TEST(TwoSided, WealthAndBeatFactor) {
    const auto p = fixtures::set_a();
    for (double delta : {0.01, 0.05, 0.3}) {
        const auto s = build_two_sided(p, delta);
        ASSERT_EQ(s.components().size(), 2u);
        EXPECT_NEAR(s.total_initial_wealth(), delta, 1e-12);
        EXPECT_NEAR(s.beat_factor(), 1.0 / delta, 1e-9);
        for (const auto& c : s.components()) EXPECT_NEAR(c.initial_wealth, delta / 2, 1e-12);
    }
}

TEST(TwoSided, PaysExactlyIndexOutsideBand) {
    const auto p = fixtures::set_a();
    const auto s = build_two_sided(p, 0.05);
    const auto t = thresholds(reduce_dimension(p), p.T(), 0.05);
    const double index = 1.7;
    EXPECT_EQ(s.terminal_wealth(index, index * t.b * 1.01), index);
    EXPECT_EQ(s.terminal_wealth(index, index * t.a * 0.99), index);
    EXPECT_EQ(s.terminal_wealth(index, index), 0.0);
    EXPECT_EQ(s.components_paying(index, index), 0);
}

TEST(OneSided, ThresholdAtDeltaQuantile) {
    const auto p = fixtures::set_a();
    const auto up = build_one_sided(p, 0.05, Side::upper);
    const auto down = build_one_sided(p, 0.05, Side::lower);
    ASSERT_EQ(up.components().size(), 1u);
    EXPECT_EQ(up.components()[0].spec.direction, Direction::at_least);
    EXPECT_EQ(down.components()[0].spec.direction, Direction::at_most);
    EXPECT_NEAR(up.total_initial_wealth(), 0.05, 1e-12);
    EXPECT_NEAR(down.total_initial_wealth(), 0.05, 1e-12);
    const double s = p.ratio_vol();
    const double z = upper_quantile(0.05).finite();
    EXPECT_NEAR(std::log(up.components()[0].spec.threshold), -0.5 * s * s * 10 + z * s * std::sqrt(10.0), 1e-13);
}

TEST(IndexVsBond, UsesIndexVolatility) {
    const auto p = fixtures::set_a();
    const auto s = build_index_vs_bond(p, 0.05);
    EXPECT_NEAR(s.total_initial_wealth(), 0.05, 1e-12);
    for (const auto& c : s.components()) EXPECT_EQ(c.numerator, Numerator::bond);
    EXPECT_NEAR(s.reduced_for(Numerator::bond).ratio_vol(), p.norm_sigma_i(), 1e-16);
    EXPECT_NEAR(s.numerator_value(Numerator::bond, 10.0, 123.0), std::exp(0.2), 1e-15);
}

TEST(Sides, FollowExcessSigns) {
    EXPECT_EQ(capm_side(fixtures::set_a()), Side::lower);
    EXPECT_EQ(capm_side(fixtures::set_a_with_excess(0.01)), Side::upper);
    EXPECT_EQ(capm_side(fixtures::set_a_capm()), Side::upper);
    // Set A's premium excess is +0.015: the index outruns the bond.
    EXPECT_NEAR(premium_excess(fixtures::set_a()), 0.015, 1e-15);
    EXPECT_EQ(premium_side(fixtures::set_a()), Side::lower);
    EXPECT_EQ(premium_side(fixtures::set_a().with_drifts(0.02, 0.05)), Side::upper);
}

TEST(CapmExcess, SetA) {
    EXPECT_NEAR(capm_excess(fixtures::set_a()), -0.0175, 1e-15);
    EXPECT_NEAR(capm_excess(fixtures::set_a_capm()), 0.0, 1e-16);
}

TEST(Composites, WealthAndBeatFactor) {
    const auto p = fixtures::set_a();
    const double d = 0.05;
    const auto mu = build_capm_composite(p, d, 0.05, CapmVariant::prop_mu);
    EXPECT_EQ(mu.label(), "prop_mu");
    EXPECT_NEAR(mu.total_initial_wealth(), d, 1e-12);

    const auto c2 = build_capm_composite(p, d, 0.05, CapmVariant::cor_2delta);
    ASSERT_EQ(c2.components().size(), 2u);
    EXPECT_NEAR(c2.total_initial_wealth(), 2.0, 1e-12);
    EXPECT_NEAR(c2.beat_factor(), 1.0 / (2.0 * d), 1e-9);
    EXPECT_EQ(c2.components()[0].numerator, Numerator::stock);
    EXPECT_EQ(c2.components()[1].numerator, Numerator::bond);

    const auto c3 = build_capm_composite(p, d, 0.05, CapmVariant::cor_3delta);
    ASSERT_EQ(c3.components().size(), 3u);
    EXPECT_NEAR(c3.total_initial_wealth(), 3.0, 1e-12);
    EXPECT_NEAR(c3.beat_factor(), 1.0 / (3.0 * d), 1e-9);
}

TEST(Composites, CombiningAcrossMarketsThrows) {
    const auto a = build_two_sided(fixtures::set_a(), 0.05);
    const auto b = build_two_sided(fixtures::set_a(5.0), 0.05);
    EXPECT_THROW(a.combined_with(b, "x"), std::invalid_argument);
    EXPECT_THROW(a.scaled_to(0.0), std::invalid_argument);
}

TEST(BoundCheck, OracleValuesAtSetA) {
    const auto p = fixtures::set_a();
    const auto mu = bound_check(p, 0.05, 0.05, BoundKind::mu);
    EXPECT_NEAR(mu.rhs, 0.205506222629360532363805154701, 1e-14);
    EXPECT_NEAR(mu.lhs, 0.0175, 1e-15);
    EXPECT_TRUE(mu.holds);
    EXPECT_NEAR(bound_check(p, 0.05, 0.05, BoundKind::mu_bis).rhs, 0.187542168333525444433269337193, 1e-14);
    const auto idx = bound_check(p, 0.05, 0.05, BoundKind::index);
    EXPECT_NEAR(idx.rhs, 0.164485362695147282251073223411, 1e-14);
    EXPECT_NEAR(idx.lhs, 0.015, 1e-15);
    const auto c1 = bound_check(p, 0.05, 0.05, BoundKind::capm1);
    EXPECT_NEAR(c1.rhs, 0.352027531028672726684342560603, 1e-14);
    EXPECT_NEAR(c1.lhs, 0.0025, 1e-15);
    const auto cf = bound_check(p, 0.05, 0.05, BoundKind::capm_final);
    EXPECT_NEAR(cf.rhs, 0.632136010316192747868930529677, 1e-14);
    EXPECT_NEAR(cf.lhs, 0.022, 1e-15);
}

TEST(BoundCheck, FailsBeyondMargin) {
    const auto p = fixtures::set_a();
    const double rhs = bound_check(p, 0.05, 0.05, BoundKind::mu_bis).rhs;
    EXPECT_FALSE(bound_check(fixtures::set_a_with_excess(1.01 * rhs), 0.05, 0.05, BoundKind::mu_bis).holds);
    EXPECT_TRUE(bound_check(fixtures::set_a_with_excess(0.99 * rhs), 0.05, 0.05, BoundKind::mu_bis).holds);
    EXPECT_FALSE(bound_check(fixtures::set_a_with_excess(-1.01 * rhs), 0.05, 0.05, BoundKind::mu_bis).holds);
}

TEST(BoundCheck, WidthsShrinkLikeInverseRootT) {
    const auto p = fixtures::set_a();
    for (auto kind : {BoundKind::mu, BoundKind::mu_bis, BoundKind::index, BoundKind::capm1, BoundKind::capm_final}) {
        const double w1 = bound_check(p.with_horizon(1.0), 0.05, 0.05, kind).rhs;
        const double w4 = bound_check(p.with_horizon(4.0), 0.05, 0.05, kind).rhs;
        EXPECT_NEAR(w4 / w1, 0.5, 1e-14);
    }
}

TEST(Events, MatchTwoSidedPayment) {
    const auto p = fixtures::set_a();
    const auto s = build_two_sided(p, 0.05);
    const TerminalSampler sampler(p, Measure::physical, 3);
    for (std::uint64_t k = 0; k < 20'000; ++k) {
        const auto x = sampler.sample(k);
        EXPECT_EQ(event_two_sided(p, 0.05, x.stock, x.index), s.components_paying(x.index, x.stock) == 0);
    }
}

TEST(Events, MatchOneSidedPayment) {
    const auto p = fixtures::set_a();
    const TerminalSampler sampler(p, Measure::physical, 4);
    for (auto side : {Side::upper, Side::lower}) {
        const auto s = build_one_sided(p, 0.05, side);
        for (std::uint64_t k = 0; k < 20'000; ++k) {
            const auto x = sampler.sample(k);
            EXPECT_EQ(event_one_sided(p, 0.05, side, x.stock, x.index), s.components_paying(x.index, x.stock) == 0);
        }
    }
}

TEST(Events, RecoverMatchesIndexVsBondPayment) {
    const auto p = fixtures::set_a();
    const auto s = build_index_vs_bond(p, 0.05);
    const TerminalSampler sampler(p, Measure::physical, 5);
    for (std::uint64_t k = 0; k < 20'000; ++k) {
        const auto x = sampler.sample(k);
        EXPECT_EQ(event_recover(p, 0.05, x.index), s.components_paying(x.index, x.stock) == 0);
    }
}

TEST(Wealth, AnalyticStartsAtInitialWealthAndIsNonnegative) {
    const auto p = fixtures::set_a();
    const auto s = build_capm_composite(p, 0.05, 0.05, CapmVariant::cor_3delta);
    for (std::uint64_t k = 0; k < 50; ++k) {
        const auto path = simulate_path(p, Measure::physical, 64, 8, k);
        const auto w = analytic_wealth(s, p, path);
        EXPECT_NEAR(w.front(), s.total_initial_wealth(), 1e-12);
        for (double v : w) EXPECT_GE(v, 0.0);
        EXPECT_EQ(w.back(), s.terminal_wealth(path.index_values.back(), path.stock_values.back()));
    }
}

TEST(Wealth, HedgeTracksAnalyticOnFineGrid) {
    const auto p = fixtures::set_a();
    const auto s = build_two_sided(p, 0.05);
    const auto path = simulate_path(p, Measure::physical, 2048, 9, 0);
    const auto track = track_wealth(s, p, path, p.T() - p.T() / 2048);
    EXPECT_EQ(track.hedged_wealth.front(), s.total_initial_wealth());
    // Away from expiry the discrete hedge stays close to the claim value.
    EXPECT_NEAR(track.hedged_wealth[1024], track.analytic_wealth[1024], 5e-3);
}

TEST(Wealth, BondLegHedgeIsExactWithoutIndexNoise) {
    // With both volatilities zero the index is the bond, S/I stays at one and a
    // claim on {B/I >= 0.5} is just a unit of index.
    const auto p = test_hooks::unchecked_market_params(0.03, 0.03, {0.0, 0.0}, {0.0, 0.0}, 0.03, 2.0);
    const PrudentStrategy s("flat", {{DigitalSpec::create(Direction::at_least, 0.5), Numerator::bond, 1.0, 1.0}},
                            reduce_dimension(p), bond_reduction(p), p.T(), p.r());
    const auto path = simulate_path(p, Measure::risk_neutral, 16, 1, 0);
    const auto w = hedged_wealth(s, p, path, p.T() - p.T() / 16);
    EXPECT_NEAR(w.back(), std::exp(p.r() * p.T()), 1e-12);
}

TEST(Wealth, CutoffMustPrecedeExpiry) {
    const auto p = fixtures::set_a();
    const auto path = simulate_path(p, Measure::physical, 4, 1, 0);
    EXPECT_THROW(hedged_wealth(build_two_sided(p, 0.05), p, path, p.T()), std::invalid_argument);
}
