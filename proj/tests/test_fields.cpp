// SPDX-License-Identifier: Apache-2.0

#include "epb/fields.hpp"

#include <gtest/gtest.h>

#include <numbers>

#include "test_util.hpp"

using namespace epb;
using epb::testutil::expect_cplx_near;
using epb::testutil::expect_field_near;
using epb::testutil::expect_mat_near;
using epb::testutil::RandomDraw;

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-12;

TEST(Polarizer, AxisAlignedAndDiagonal)
{
    expect_mat_near(polarizer(0.0), {{1.0}, {0.0}, {0.0}, {0.0}}, kTol);
    expect_mat_near(polarizer(kPi / 2), {{0.0}, {0.0}, {0.0}, {1.0}}, kTol);
    expect_mat_near(polarizer(kPi / 4), {{0.5}, {0.5}, {0.5}, {0.5}}, kTol);
}

TEST(Polarizer, IdempotentAndPiPeriodic)
{
    RandomDraw rnd(101);
    for (int i = 0; i < 200; ++i) {
        const double theta = rnd.angle();
        const Mat2 p = polarizer(theta);
        expect_mat_near(p * p, p, kTol);
        expect_mat_near(polarizer(theta + kPi), p, kTol);
    }
}

TEST(Polarizer, RealSymmetricRankOne)
{
    RandomDraw rnd(102);
    for (int i = 0; i < 100; ++i) {
        const Mat2 p = polarizer(rnd.angle());
        EXPECT_EQ(p.m00.imag(), 0.0);
        EXPECT_EQ(p.m01, p.m10);
        // eigenvalues {1, 0}: trace 1, determinant 0
        EXPECT_NEAR((p.m00 + p.m11).real(), 1.0, kTol);
        EXPECT_NEAR((p.m00 * p.m11 - p.m01 * p.m10).real(), 0.0, kTol);
    }
}

TEST(Apply, PolarizerOnBasisVectors)
{
    const FieldVec2 x{{1.0}, {0.0}};
    expect_field_near(apply(polarizer(0.0), x), x, kTol);
    expect_field_near(apply(polarizer(kPi / 2), x), {{0.0}, {0.0}}, kTol);
    expect_field_near(apply(polarizer(kPi / 4), x), {{0.5}, {0.5}}, kTol);
}

TEST(Apply, PolarizerNeverIncreasesNorm)
{
    RandomDraw rnd(103);
    for (int i = 0; i < 500; ++i) {
        const FieldVec2 e = rnd.field();
        const double before = norm2(e);
        const double after = norm2(apply(polarizer(rnd.angle()), e));
        EXPECT_LE(after, before + kTol);
        EXPECT_TRUE(std::isfinite(after));
    }
}

TEST(Project, AnalyzerAmplitudes)
{
    expect_cplx_near(project({{1.0}, {0.0}}, 0.0), {1.0}, kTol);
    expect_cplx_near(project({{0.0}, {-1.0}}, kPi / 4), {-std::numbers::sqrt2 / 2.0}, kTol);
    expect_cplx_near(project({{1.0}, {0.0}}, kPi / 2), {0.0}, kTol);
}

TEST(Project, MatchesPolarizerIntensity)
{
    RandomDraw rnd(104);
    for (int i = 0; i < 300; ++i) {
        const FieldVec2 e = rnd.field();
        const double theta = rnd.angle();
        EXPECT_NEAR(std::norm(project(e, theta)), norm2(apply(polarizer(theta), e)), kTol);
    }
}

TEST(Project, EnergySplitsAcrossOrthogonalAnalyzers)
{
    RandomDraw rnd(105);
    for (int i = 0; i < 300; ++i) {
        const FieldVec2 e = rnd.field();
        const double theta = rnd.angle();
        const double split =
            std::norm(project(e, theta)) + std::norm(project(e, theta + kPi / 2));
        EXPECT_NEAR(split, norm2(e), kTol);
    }
}

TEST(InnerConj, OrthonormalBasis)
{
    const FieldVec2 x{{1.0}, {0.0}};
    const FieldVec2 y{{0.0}, {1.0}};
    expect_cplx_near(inner_conj(x, x), {1.0}, kTol);
    expect_cplx_near(inner_conj(x, y), {0.0}, kTol);
}

TEST(InnerConj, SelfInnerProductIsNormSquared)
{
    RandomDraw rnd(106);
    for (int i = 0; i < 300; ++i) {
        const FieldVec2 a = rnd.field();
        const Cplx self = inner_conj(a, a);
        EXPECT_NEAR(self.imag(), 0.0, kTol);
        EXPECT_GE(self.real(), 0.0);
        EXPECT_NEAR(self.real(), norm2(a), kTol);
    }
}

// conj(phase_arm(phi)) . phase_arm(psi) = (e^{i(psi-phi)} + 1)/2, by
// expanding (e^{-i phi} e^{i psi} + 1)/2.
TEST(InnerConj, PhaseArmPairClosedForm)
{
    RandomDraw rnd(107);
    for (int i = 0; i < 300; ++i) {
        const double phi = rnd.angle();
        const double psi = rnd.angle();
        const Cplx expected = 0.5 * (std::polar(1.0, psi - phi) + Cplx{1.0});
        expect_cplx_near(inner_conj(phase_arm(phi), phase_arm(psi)), expected, kTol);
    }
}

TEST(PhaseArm, ReferencePoints)
{
    const double a = 1.0 / std::numbers::sqrt2;
    expect_field_near(phase_arm(0.0), {{a}, {a}}, kTol);
    expect_field_near(phase_arm(kPi), {{-a}, {a}}, kTol);
}

TEST(PhaseArm, UnitNormForAnyPhase)
{
    RandomDraw rnd(108);
    for (int i = 0; i < 300; ++i) EXPECT_NEAR(norm2(phase_arm(rnd.angle())), 1.0, kTol);
}
