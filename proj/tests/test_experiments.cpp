// SPDX-License-Identifier: Apache-2.0

#include "epb/experiments.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "epb/e2_oracle.hpp"
#include "test_util.hpp"

using namespace epb;
using epb::testutil::RandomDraw;

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-12;

TEST(ClauserAspect, NormalizedMalusLaw)
{
    EXPECT_NEAR(clauser_aspect(0.9, 0.9).value, 0.0, kTol);
    EXPECT_NEAR(clauser_aspect(0.0, kPi / 2).value, 1.0, kTol);
    EXPECT_NEAR(clauser_aspect(0.0, kPi / 4).value, 0.5, kTol);

    RandomDraw rnd(401);
    for (int i = 0; i < 100; ++i) {
        const double t1 = rnd.angle();
        const double t2 = rnd.angle();
        const double d = std::sin(t1 - t2);
        EXPECT_NEAR(clauser_aspect(t1, t2).value, d * d, kTol);
    }
}

TEST(ClauserAspect, ComplementaryAnalyzersSumToOne)
{
    RandomDraw rnd(402);
    for (int i = 0; i < 100; ++i) {
        const double delta = rnd.angle();
        const double p = clauser_aspect(0.0, delta).value;
        const double q = clauser_aspect(0.0, delta + kPi / 2).value;
        EXPECT_NEAR(p + q, 1.0, kTol);
    }
}

TEST(GhzRate, ReportedRegimeRatios)
{
    constexpr double q = kPi / 4;
    const double c_rate = ghz_reference_rate();
    ASSERT_GT(c_rate, 0.0);

    EXPECT_NEAR(ghz_rate({q, q, q, q}, true).raw / c_rate, 0.25, kTol);
    EXPECT_NEAR(ghz_rate({q, q, q, -q}, true).raw / c_rate, 0.0, kTol);
    EXPECT_NEAR(ghz_rate({q, q, q, q}, false).raw / c_rate, 0.125, kTol);
    EXPECT_NEAR(ghz_rate({q, q, q, -q}, false).raw / c_rate, 0.125, kTol);
}

TEST(GhzRate, EngineUnitsReference)
{
    // coherent amplitude (1/4)(1 + 0 + 0 + 0) at {0, pi/2, pi/2, 0}
    EXPECT_NEAR(ghz_reference_rate(), 0.0625, kTol);
}

TEST(GhzRegimeTable, ExactlyTwoNonzeroRegimes)
{
    const auto rows = ghz_regime_table();
    ASSERT_EQ(rows.size(), 16u);

    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].raw > kTol) nonzero.push_back(i);
    ASSERT_EQ(nonzero.size(), 2u);

    // lexicographic order: {0,pi/2,pi/2,0} is row 6, {pi/2,0,0,pi/2} row 9
    EXPECT_EQ(nonzero[0], 6u);
    EXPECT_EQ(nonzero[1], 9u);
    EXPECT_NEAR(rows[6].raw, rows[9].raw, kTol);
    EXPECT_NEAR(rows[6].value, 1.0, kTol);
    EXPECT_NEAR(rows[9].value, 1.0, kTol);
    for (std::size_t i = 0; i < 16; ++i) {
        if (i != 6 && i != 9) {
            EXPECT_LE(rows[i].raw, kTol);
        }
    }
}

TEST(GhzSkewSweep, QuarterPiMatchesRegimeValues)
{
    const std::array<double, 3> grid{0.0, kPi / 4, kPi / 2};

    const auto same_on = ghz_skew_sweep(SkewMode::same, true, grid);
    EXPECT_NEAR(same_on[0].value, 1.0, kTol);
    EXPECT_NEAR(same_on[1].value, 0.25, kTol);

    const auto opp_on = ghz_skew_sweep(SkewMode::opposite, true, grid);
    EXPECT_NEAR(opp_on[0].value, 1.0, kTol);
    EXPECT_NEAR(opp_on[1].value, 0.0, kTol);

    const auto same_off = ghz_skew_sweep(SkewMode::same, false, grid);
    EXPECT_NEAR(same_off[1].value, 0.125, kTol);
    const auto opp_off = ghz_skew_sweep(SkewMode::opposite, false, grid);
    EXPECT_NEAR(opp_off[1].value, 0.125, kTol);
}

TEST(GhzSkewSweep, CurvesMatchBruteForceOraclePointwise)
{
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(i * kPi / 40.0);
    for (const bool crosstalk : {true, false}) {
        const ExperimentPreset preset = ghz_preset(crosstalk);
        for (const SkewMode mode : {SkewMode::same, SkewMode::opposite}) {
            const auto rows = ghz_skew_sweep(mode, crosstalk, grid);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const auto theta = ghz_skewed_settings(mode, grid[i]);
                const AnalyzerSettings set{{theta[0], theta[1], theta[2], theta[3]}};
                EXPECT_NEAR(rows[i].raw,
                            e2_direct_oracle(preset.source, preset.network, set), kTol);
            }
        }
    }
}

TEST(GhzSkewSweep, UpperCurveSymmetricAboutQuarterPi)
{
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(i * kPi / 80.0);
    const auto rows = ghz_skew_sweep(SkewMode::same, true, grid);
    for (int i = 0; i <= 40; ++i)
        EXPECT_NEAR(rows[i].value, rows[40 - i].value, kTol);
}

TEST(Franson, FullVisibilityFringe)
{
    EXPECT_NEAR(franson(0.0, 0.0).value, 1.0, kTol);
    EXPECT_NEAR(franson(kPi, 0.0).value, 0.0, kTol);
    EXPECT_NEAR(franson(kPi / 2, 0.0).value, 0.5, kTol);

    RandomDraw rnd(403);
    for (int i = 0; i < 200; ++i) {
        const double phi = rnd.angle();
        const double psi = rnd.angle();
        EXPECT_NEAR(franson(phi, psi).value, 0.5 * (1.0 + std::cos(phi - psi)), kTol);
    }
}

TEST(Franson, VisibilityIsUnity)
{
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double v = franson(i * 2.0 * kPi / 1000.0, 0.0).value;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    EXPECT_NEAR((hi - lo) / (hi + lo), 1.0, 1e-9);
}

TEST(GhoshMandel, BitIdenticalToFranson)
{
    RandomDraw rnd(404);
    for (int i = 0; i < 100; ++i) {
        const double a = rnd.angle();
        const double b = rnd.angle();
        EXPECT_EQ(ghosh_mandel(a, b).raw, franson(a, b).raw);
        EXPECT_EQ(ghosh_mandel(a, b).value, franson(a, b).value);
    }
    EXPECT_NEAR(ghosh_mandel(kPi, 0.0).value, 0.0, kTol);
}

TEST(BrendelSweep, EnvelopeAndNode)
{
    const SpreadSpec spec{0.05, 201};
    std::vector<double> grid;
    for (int i = 0; i <= 160; ++i) grid.push_back(i * kPi / 4.0);  // 0 .. 40pi
    const auto rows = brendel_sweep(grid, 0.0, spec);

    EXPECT_NEAR(rows[0].raw, 1.0, kTol);  // phi = 0
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double phi = grid[i];
        const double x = phi * spec.s_max;
        const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
        EXPECT_NEAR(rows[i].raw, 0.5 * (1.0 + std::cos(phi) * sinc), 1e-6);
    }

    // envelope node: phi * s_max = pi at phi = 20pi
    const double node = brendel_rate(20.0 * kPi, 0.0, spec).raw;
    EXPECT_LE(std::abs(2.0 * node - 1.0), 1e-3);

    // 10pi fringe sits at 2/pi of the zero-spread amplitude
    const double ten_pi = brendel_rate(10.0 * kPi, 0.0, spec).raw;
    EXPECT_NEAR(std::abs(2.0 * ten_pi - 1.0), 2.0 / kPi, 1e-6);
}

TEST(BrendelSweep, VanishingSpreadRecoversFranson)
{
    const SpreadSpec spec{1e-6, 201};
    for (double phi = 0.0; phi <= 8.0 * kPi; phi += kPi / 7.0)
        EXPECT_NEAR(brendel_rate(phi, 0.3, spec).raw, franson(phi, 0.3).value, 1e-6);
}

TEST(OrderInvariance, ClauserSwap)
{
    const ExperimentPreset preset = clauser_preset();
    const AnalyzerSettings set{{0.2, 1.3}};
    const std::array<std::size_t, 2> swap{1, 0};
    EXPECT_TRUE(detection_order_invariance(preset, set, swap));
}

TEST(OrderInvariance, AllGhzPermutations)
{
    RandomDraw rnd(405);
    for (const bool crosstalk : {true, false}) {
        const ExperimentPreset preset = ghz_preset(crosstalk);
        const AnalyzerSettings set{{rnd.angle(), rnd.angle(), rnd.angle(), rnd.angle()}};
        std::array<std::size_t, 4> perm{0, 1, 2, 3};
        do {
            EXPECT_TRUE(detection_order_invariance(preset, set, perm));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST(OrderInvariance, FransonArmSwapAndPhaseParity)
{
    const ExperimentPreset preset = franson_preset(0.8, -0.9);
    const std::array<std::size_t, 2> swap{1, 0};
    EXPECT_TRUE(detection_order_invariance(preset, {}, swap));

    // swapping the arms is the same as swapping the phases
    RandomDraw rnd(406);
    for (int i = 0; i < 100; ++i) {
        const double phi = rnd.angle();
        const double psi = rnd.angle();
        EXPECT_NEAR(franson(phi, psi).value, franson(psi, phi).value, kTol);
    }
}

TEST(OrderInvariance, RejectsInvalidPermutation)
{
    const ExperimentPreset preset = clauser_preset();
    const AnalyzerSettings set{{0.0, 0.0}};
    const std::array<std::size_t, 2> dup{0, 0};
    EXPECT_THROW(detection_order_invariance(preset, set, dup), std::invalid_argument);
}
