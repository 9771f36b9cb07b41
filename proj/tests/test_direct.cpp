#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kinescope/angle.hpp"
#include "kinescope/direct.hpp"
#include "kinescope/errors.hpp"
#include "test_support.hpp"

using namespace kinescope;
namespace kt = kinescope::testing;

namespace {

const double kSqrt3 = std::sqrt(3.0);

KinematicImage unit_trace(const Shape& shape, int samples = 2048, double turns = 2.0) {
    return trace(shape, MotionProfile::constant(1.0, 1.0),
                 TimeGrid{0.0, turns * kTwoPi, samples});
}

}  // namespace

TEST(Trace, CircleAboutCentreIsAStrip) {
    const auto img = unit_trace(SmoothContour::circle(1.0));
    ASSERT_EQ(img.size(), 2048u);
    for (const auto& s : img.samples) {
        EXPECT_NEAR(s.ys, 1.0, 1e-12);
        EXPECT_NEAR(s.yi, -1.0, 1e-12);
    }
    ASSERT_TRUE(img.meta.has_value());
    EXPECT_EQ(img.meta->grid.samples, 2048);
}

TEST(Trace, CircleAboutRimIsAWave) {
    const auto img = unit_trace(SmoothContour::circle(1.0, {1.0, 0.0}));
    double hi = -1e300, lo = 1e300;
    for (const auto& s : img.samples) {
        EXPECT_NEAR(s.ys, 1.0 + std::sin(s.z), 1e-12);
        EXPECT_NEAR(s.yi, s.ys - 2.0, 1e-12);
        hi = std::max(hi, s.ys);
        lo = std::min(lo, s.ys);
    }
    EXPECT_NEAR(hi, 2.0, 1e-5);
    EXPECT_NEAR(lo, 0.0, 1e-5);
}

TEST(Trace, EllipseFollowsClosedForm) {
    const auto img = unit_trace(SmoothContour::ellipse(2.0, 1.0), 1000, 1.0);
    for (const auto& s : img.samples) {
        const double y = std::sqrt(4.0 * std::sin(s.z) * std::sin(s.z) + std::cos(s.z) * std::cos(s.z));
        EXPECT_NEAR(s.ys, y, 1e-12);
        EXPECT_NEAR(s.yi, -y, 1e-12);
    }
}

TEST(Trace, PoleChoiceLeavesHeightUnchanged) {
    const auto centred = unit_trace(SmoothContour::circle(1.0));
    const auto rim = unit_trace(SmoothContour::circle(1.0, {1.0, 0.0}));
    ASSERT_EQ(centred.size(), rim.size());
    for (std::size_t k = 0; k < rim.size(); ++k) {
        EXPECT_NEAR(centred.samples[k].ys - centred.samples[k].yi,
                    rim.samples[k].ys - rim.samples[k].yi, 1e-10);
        EXPECT_DOUBLE_EQ(centred.samples[k].z, rim.samples[k].z);
    }
}

TEST(Trace, PeriodicForSymmetricShapes) {
    // 1536 steps per turn, so a 1/k turn is 1536/k steps
    const struct {
        Shape shape;
        int fold;
    } cases_[] = {{regular_ngon(4, 1.0), 4}, {regular_ngon(3, 1.0), 3},
                  {SmoothContour::ellipse(2.0, 1.0), 2}};
    for (const auto& c : cases_) {
        const auto img = unit_trace(c.shape, 3073, 2.0);
        const std::size_t lag = 1536 / static_cast<std::size_t>(c.fold);
        for (std::size_t k = 0; k + lag < img.size(); ++k) {
            EXPECT_NEAR(img.samples[k + lag].ys, img.samples[k].ys, 1e-9);
            EXPECT_NEAR(img.samples[k + lag].z - img.samples[k].z, kTwoPi / c.fold, 1e-9);
        }
    }
}

TEST(Trace, PiecewiseMotionGivesIncreasingZ) {
    const MotionProfile m(SpeedProfile::piecewise({{0.0, 1.0}, {2.0, -0.5}}),
                          SpeedProfile::piecewise({{0.0, 1.0}, {1.0, 3.0}}));
    const auto img = trace(regular_ngon(5, 1.0), m, TimeGrid{0.0, 4.0, 400});
    EXPECT_NO_THROW(img.validate());
    EXPECT_NEAR(img.samples.back().z, 1.0 + 3.0 * 3.0, 1e-12);
}

TEST(Trace, PropagatesInvalidGrid) {
    EXPECT_THROW(unit_trace(SmoothContour::circle(1.0), 1), InvalidArgument);
}

TEST(ClosedForm, WorkedExamples) {
    auto h = closed_form(cases::EllipseCenter{2.0, 1.0}, 0.0);
    EXPECT_DOUBLE_EQ(h.ys, 1.0);
    EXPECT_DOUBLE_EQ(h.yi, -1.0);

    h = closed_form(cases::SquareCenter{1.0}, kPi / 4.0);
    EXPECT_NEAR(h.ys, std::sqrt(2.0) / 2.0, 1e-15);
    EXPECT_NEAR(h.yi, -std::sqrt(2.0) / 2.0, 1e-15);

    h = closed_form(cases::CircleRim{2.0}, kPi / 6.0);
    EXPECT_NEAR(h.ys, 3.0, 1e-15);
    EXPECT_NEAR(h.yi, -1.0, 1e-15);
}

TEST(ClosedForm, TriangleAtThirdPiAgreesWithVertexBruteForce) {
    const ConvexPolygon tri({{0.5, kSqrt3 / 6.0}, {-0.5, kSqrt3 / 6.0}, {0.0, -kSqrt3 / 3.0}});
    const auto brute = kt::brute_support(tri, kPi / 3.0);
    EXPECT_NEAR(brute.ys, kSqrt3 / 3.0, 1e-15);
    EXPECT_NEAR(brute.yi, -kSqrt3 / 6.0, 1e-15);

    const auto h = closed_form(cases::TriangleCenter{1.0}, kPi / 3.0);
    EXPECT_NEAR(h.ys, 0.57735026918962573, 1e-15);
    EXPECT_NEAR(h.yi, -0.28867513459481287, 1e-15);
}

TEST(ClosedForm, ReducesAngles) {
    const ClosedFormCase c = cases::TriangleCenter{1.3};
    for (double theta : {0.2, 1.5, 3.9, 5.8}) {
        const auto a = closed_form(c, theta);
        const auto b = closed_form(c, theta + 3.0 * kTwoPi);
        EXPECT_NEAR(a.ys, b.ys, 1e-13);
        EXPECT_NEAR(a.yi, b.yi, 1e-13);
    }
}

TEST(OracleCheck, GenericMachineryMatchesClosedForms) {
    EXPECT_LE(oracle_check(SmoothContour::ellipse(2.0, 1.0), cases::EllipseCenter{2.0, 1.0}, 1000),
              1e-8);
    EXPECT_LE(oracle_check(SmoothContour::circle(1.0), cases::CircleCenter{1.0}, 1000), 1e-12);
    EXPECT_LE(oracle_check(regular_ngon(4, std::sqrt(2.0) / 2.0), cases::SquareCenter{1.0}, 1000),
              1e-12);
    const ClosedFormCase all[] = {cases::CircleCenter{0.7}, cases::CircleRim{1.9},
                                  cases::EllipseCenter{5.0, 0.5}, cases::SquareCenter{2.5},
                                  cases::TriangleCenter{0.8}};
    for (const auto& c : all) {
        EXPECT_LE(oracle_check(shape_for(c), c, 997), 1e-8) << describe(c);
    }
}

TEST(OracleCheck, MismatchedKinds) {
    EXPECT_THROW(oracle_check(SmoothContour::circle(1.0), cases::EllipseCenter{2.0, 1.0}, 10),
                 MismatchedCase);
    EXPECT_THROW(oracle_check(regular_ngon(5, 1.0), cases::SquareCenter{1.0}, 10), MismatchedCase);
    EXPECT_THROW(oracle_check(regular_ngon(4, 1.0), cases::CircleCenter{1.0}, 10), MismatchedCase);
}

TEST(DefaultGrid, ThousandTwentyFourSamplesPerTurn) {
    const auto g = default_grid(MotionProfile::constant(2.0, 1.0), 3.0);
    EXPECT_EQ(g.samples, 3072);
    EXPECT_NEAR(g.duration, 3.0 * kPi, 1e-15);
    EXPECT_THROW(default_grid(MotionProfile(SpeedProfile::piecewise({{0, 1}, {1, 2}}),
                                            SpeedProfile::constant(1.0))),
                 InvalidArgument);
}

TEST(Image, ValidationAndScaling) {
    KinematicImage img;
    img.samples = {{0.0, 1.0, -1.0}, {1.0, 2.0, 0.0}};
    EXPECT_NO_THROW(img.validate());
    const auto big = img.scaled(3.0);
    EXPECT_DOUBLE_EQ(big.samples[1].z, 3.0);
    EXPECT_DOUBLE_EQ(big.samples[1].ys, 6.0);
    img.samples.push_back({1.0, 1.0, 0.0});
    EXPECT_THROW(img.validate(), InvalidArgument);
    img.samples.back() = {2.0, -1.0, 0.0};
    EXPECT_THROW(img.validate(), InvalidArgument);
}
