// SPDX-License-Identifier: Apache-2.0

#include "epb/sources.hpp"

#include <gtest/gtest.h>

#include <numbers>

#include "test_util.hpp"

using namespace epb;
using epb::testutil::expect_field_near;
using epb::testutil::RandomDraw;

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-12;

TEST(ClauserSource, TwoEqualWeightAnticorrelatedRealizations)
{
    const SourceEnsemble ens = clauser_aspect_source();
    ASSERT_EQ(ens.realizations.size(), 2u);
    EXPECT_NEAR(total_weight(ens), 1.0, kTol);

    const auto& n0 = ens.realizations[0];
    const auto& n1 = ens.realizations[1];
    EXPECT_EQ(n0.weight, 0.5);
    expect_field_near(n0.channels[0], {{1.0}, {0.0}}, kTol);
    expect_field_near(n0.channels[1], {{0.0}, {-1.0}}, kTol);
    expect_field_near(n1.channels[0], {{0.0}, {1.0}}, kTol);
    expect_field_near(n1.channels[1], {{1.0}, {0.0}}, kTol);

    // mode-to-mode orthogonality per channel, and anticorrelation inside
    // each realization
    EXPECT_NEAR(std::abs(inner_conj(n0.channels[0], n1.channels[0])), 0.0, kTol);
    EXPECT_NEAR(std::abs(inner_conj(n0.channels[1], n1.channels[1])), 0.0, kTol);
    for (const auto& r : ens.realizations)
        EXPECT_NEAR(std::abs(inner_conj(r.channels[0], r.channels[1])), 0.0, kTol);
}

TEST(GhzSource, FourModesQuarterWeightEach)
{
    const SourceEnsemble ens = ghz_source();
    ASSERT_EQ(ens.realizations.size(), 4u);
    EXPECT_NEAR(total_weight(ens), 1.0, kTol);

    for (const auto& r : ens.realizations) {
        ASSERT_EQ(r.channels.size(), 4u);
        EXPECT_EQ(r.weight, 0.25);
        // each pair is internally anticorrelated
        EXPECT_NEAR(std::abs(inner_conj(r.channels[0], r.channels[1])), 0.0, kTol);
        EXPECT_NEAR(std::abs(inner_conj(r.channels[2], r.channels[3])), 0.0, kTol);
    }

    const auto& nm00 = ens.realizations[0];
    EXPECT_EQ(nm00.mode_n, 0);
    EXPECT_EQ(nm00.mode_m, 0);
    expect_field_near(nm00.channels[0], {{1.0}, {0.0}}, kTol);   // A1
    expect_field_near(nm00.channels[1], {{0.0}, {-1.0}}, kTol);  // A2
    expect_field_near(nm00.channels[2], {{1.0}, {0.0}}, kTol);   // B1
    expect_field_near(nm00.channels[3], {{0.0}, {-1.0}}, kTol);  // B2

    // n=1 flips pair A only
    const auto& nm10 = ens.realizations[2];
    EXPECT_EQ(nm10.mode_n, 1);
    EXPECT_EQ(nm10.mode_m, 0);
    expect_field_near(nm10.channels[1], {{1.0}, {0.0}}, kTol);  // A2 at n=1
}

TEST(FransonSource, SingleUnitWeightRealization)
{
    const SourceEnsemble ens = franson_source(0.0, 0.0);
    ASSERT_EQ(ens.realizations.size(), 1u);
    EXPECT_EQ(ens.realizations[0].weight, 1.0);

    const double a = 1.0 / std::numbers::sqrt2;
    expect_field_near(ens.realizations[0].channels[0], {{a}, {a}}, kTol);
    expect_field_near(ens.realizations[0].channels[1], {{a}, {a}}, kTol);

    expect_field_near(franson_source(kPi, 0.0).realizations[0].channels[0], {{-a}, {a}}, kTol);
}

TEST(BrendelSource, ZeroSpreadDegeneratesToFranson)
{
    RandomDraw rnd(201);
    for (int i = 0; i < 50; ++i) {
        const double phi = rnd.angle();
        const double psi = rnd.angle();
        const auto franson = franson_source(phi, psi).realizations[0].channels;
        const auto brendel = brendel_source(phi, psi, 0.0).realizations[0].channels;
        EXPECT_EQ(franson[0].c0, brendel[0].c0);
        EXPECT_EQ(franson[0].c1, brendel[0].c1);
        EXPECT_EQ(franson[1].c0, brendel[1].c0);
        EXPECT_EQ(franson[1].c1, brendel[1].c1);
    }
}

TEST(BrendelSource, SpreadScalesArmPhases)
{
    const double s = 0.03;
    // left arm carries phi(1-s); right arm psi(1+s)
    expect_field_near(brendel_source(1.0, 0.0, s).realizations[0].channels[0],
                      phase_arm(1.0 - s), kTol);
    expect_field_near(brendel_source(0.0, 1.0, s).realizations[0].channels[1],
                      phase_arm(1.0 + s), kTol);
    EXPECT_THROW(brendel_source(1.0, 1.0, 1.0), std::invalid_argument);
}

TEST(BrendelSource, ContinuousInSpread)
{
    const double phi = 2.0, psi = -0.7;
    const auto at = [&](double s) { return brendel_source(phi, psi, s).realizations[0]; };
    const auto base = at(1e-9);
    const auto ref = franson_source(phi, psi).realizations[0];
    expect_field_near(base.channels[0], ref.channels[0], 1e-8);
    expect_field_near(base.channels[1], ref.channels[1], 1e-8);
}

TEST(GhoshMandelSource, BitIdenticalToFranson)
{
    RandomDraw rnd(202);
    for (int i = 0; i < 50; ++i) {
        const double d1 = rnd.angle();
        const double d2 = rnd.angle();
        const auto a = ghosh_mandel_source(d1, d2).realizations[0].channels;
        const auto b = franson_source(d1, d2).realizations[0].channels;
        EXPECT_EQ(a[0].c0, b[0].c0);
        EXPECT_EQ(a[1].c1, b[1].c1);
    }

    const Cplx c0 = ghosh_mandel_source(kPi / 2, 0.0).realizations[0].channels[0].c0;
    EXPECT_NEAR(c0.real(), 0.0, kTol);
    EXPECT_NEAR(c0.imag(), 1.0 / std::numbers::sqrt2, kTol);
}

TEST(SpreadSpec, RejectsInvalidSettings)
{
    EXPECT_NO_THROW((SpreadSpec{0.05, 201}.validate()));
    EXPECT_THROW((SpreadSpec{0.05, 200}.validate()), std::invalid_argument);
    EXPECT_THROW((SpreadSpec{0.05, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((SpreadSpec{0.0, 201}.validate()), std::invalid_argument);
    EXPECT_THROW((SpreadSpec{1.0, 201}.validate()), std::invalid_argument);
}
