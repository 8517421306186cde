#include "dubint/targets.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dubint;

namespace {

/// Sampled continuity check: metric between neighbors stays within the
/// declared Lipschitz bound (plus slack for the bound being approximate).
void expect_continuous(const TargetTrajectory& target, double t_hi) {
    const double h = 1e-6;
    for (double t = 0.0; t < t_hi; t += t_hi / 500.0) {
        const double d = metric(target(t), target(t + h));
        ASSERT_LE(d, (target.lipschitz + 1e-3) * h) << "at t=" << t;
    }
}

TEST(StaticTarget, ConstantEverywhere) {
    const auto e = static_target({0.0, 4.0, kHalfPi});
    EXPECT_NEAR(metric(e(17.0), {0.0, 4.0, kHalfPi}), 0.0, 0.0);
    EXPECT_NEAR(metric(e(0.0), {0.0, 4.0, kHalfPi}), 0.0, 0.0);
    EXPECT_DOUBLE_EQ(e.lipschitz, 0.0);
}

TEST(RotatingPoint, HeadingWraps) {
    const auto e = rotating_point(1.0, 2.0, kPi);
    EXPECT_NEAR(metric(e(1.0), {1.0, 2.0, kPi}), 0.0, 1e-12);
    EXPECT_NEAR(metric(e(2.0), {1.0, 2.0, 0.0}), 0.0, 1e-12);  // 2*pi == 0 on S
    const auto unit = rotating_point(0.0, 0.0, 1.0);
    EXPECT_NEAR(metric(unit(kHalfPi), {0.0, 0.0, kHalfPi}), 0.0, 1e-12);
}

TEST(LinearUniform, DriftAndConstantHeading) {
    const auto e = linear_uniform({3.0, 0.0, kHalfPi}, 0.0, 0.5);
    EXPECT_NEAR(metric(e(2.0), {3.0, 1.0, kHalfPi}), 0.0, 1e-12);
    const auto still = linear_uniform({1.0, 2.0, 0.3}, 0.0, 0.0);
    for (double t : {0.0, 5.0, 20.0})
        ASSERT_NEAR(metric(still(t), {1.0, 2.0, 0.3}), 0.0, 1e-12);
}

TEST(CircularTarget, GeometryAndTangentialHeading) {
    EXPECT_THROW(static_cast<void>(circular_target(0, 0, 0.0, 1, 0, 0)), std::domain_error);
    const auto frozen = circular_target(2.0, 3.0, 1.5, 0.0, 0.7, 0.1);
    EXPECT_NEAR(metric(frozen(9.0), frozen(0.0)), 0.0, 1e-12);

    const auto e = circular_target(5.0, -1.0, 1.0, 1.0, 0.0, kHalfPi);
    EXPECT_NEAR(e(0.0).x, 6.0, 1e-12);
    EXPECT_NEAR(e(0.0).y, -1.0, 1e-12);
    EXPECT_NEAR(angle_abs(e(0.0).phi - kHalfPi), 0.0, 1e-12);
    for (double t = 0.0; t < 10.0; t += 0.37)
        ASSERT_NEAR(std::hypot(e(t).x - 5.0, e(t).y + 1.0), 1.0, 1e-12);
}

TEST(WindGoal, ZeroWindIsStatic) {
    const WindField calm{[](double) { return std::array<double, 2>{0.0, 0.0}; },
                         {1.0, 2.0, 0.5}, 0.0};
    const auto e = wind_goal_target(calm);
    for (double t : {0.0, 1.0, 7.0, 20.0})
        ASSERT_NEAR(metric(e(t), {1.0, 2.0, 0.5}), 0.0, 1e-9);
}

TEST(WindGoal, ConstantWindEqualsLinearDrift) {
    const double wx = 0.3, wy = -0.2;
    const WindField wind{[=](double) { return std::array<double, 2>{wx, wy}; },
                         {2.0, -1.0, 1.1}, std::hypot(wx, wy)};
    const auto from_wind = wind_goal_target(wind);
    const auto from_linear = linear_uniform({2.0, -1.0, 1.1}, -wx, -wy);
    for (int i = 0; i <= 100; ++i) {
        const double t = 25.0 * i / 100.0;
        ASSERT_NEAR(metric(from_wind(t), from_linear(t)), 0.0, 1e-10) << "t=" << t;
    }
}

TEST(WindGoal, SinusoidalWindMatchesAntiderivative) {
    // wx = sin t integrates to 1 - cos t
    const WindField wind{[](double t) { return std::array<double, 2>{std::sin(t), 0.0}; },
                         {0.0, 5.0, kHalfPi}, 1.0};
    const auto e = wind_goal_target(wind);
    for (double t : {0.4, 2.0, 6.5, 12.0, 24.9}) {
        ASSERT_NEAR(e(t).x, 0.0 - (1.0 - std::cos(t)), 1e-9) << "t=" << t;
        ASSERT_NEAR(e(t).y, 5.0, 1e-9);
    }
}

TEST(Mirror, PointwiseReflection) {
    const auto e = mirror(static_target({3.0, 2.0, kHalfPi}));
    EXPECT_NEAR(metric(e(1.0), {-3.0, 2.0, kHalfPi}), 0.0, 1e-12);  // pi - pi/2 = pi/2

    const auto f = mirror(static_target({1.0, 1.0, 0.0}));
    EXPECT_NEAR(angle_abs(f(0.0).phi - kPi), 0.0, 1e-12);
}

TEST(Mirror, InvolutionAndDistancePreservation) {
    auto rng = dubint::test::make_rng(20);
    const auto base = circular_target(1.0, -2.0, 2.0, 0.7, 0.3, 0.9);
    const auto twice = mirror(mirror(base));
    const Configuration start_mirror{0.0, 0.0, kHalfPi};  // start maps to itself
    for (int i = 0; i < 50; ++i) {
        const double t = dubint::test::uniform(rng, 0.0, 20.0);
        ASSERT_NEAR(metric(twice(t), base(t)), 0.0, 1e-12);
        ASSERT_NEAR(mirror(base)(t).y, base(t).y, 0.0);
        ASSERT_NEAR(metric(mirror(base)(t), start_mirror), metric(base(t), start_mirror),
                    1e-12);
    }
}

TEST(SampledTarget, LinearInterpolation) {
    const auto e = sampled_target({{0.0, {0.0, 0.0, 0.0}}, {1.0, {2.0, 0.0, 0.0}}});
    EXPECT_NEAR(metric(e(0.5), {1.0, 0.0, 0.0}), 0.0, 1e-12);
    EXPECT_NEAR(metric(e(1.0), {2.0, 0.0, 0.0}), 0.0, 1e-12);  // sample time hits sample
    EXPECT_NEAR(metric(e(9.0), {2.0, 0.0, 0.0}), 0.0, 1e-12);  // constant extrapolation
}

TEST(SampledTarget, ShortestArcHeading) {
    const auto e = sampled_target(
        {{0.0, {0.0, 0.0, 7.0 * kPi / 4.0}}, {1.0, {0.0, 0.0, kPi / 4.0}}});
    // the midpoint heading passes through 0, not pi
    EXPECT_NEAR(angle_abs(e(0.5).phi - 0.0), 0.0, 1e-12);
}

TEST(SampledTarget, RejectsNonMonotoneTimes) {
    EXPECT_THROW(static_cast<void>(sampled_target({{1.0, {}}, {1.0, {}}})), std::domain_error);
    EXPECT_THROW(static_cast<void>(sampled_target({{2.0, {}}, {1.0, {}}})), std::domain_error);
    EXPECT_THROW(static_cast<void>(sampled_target({{0.0, {}}})), std::domain_error);
}

TEST(Continuity, AllBuildersWithinDeclaredBound) {
    expect_continuous(static_target({1.0, 2.0, 3.0}), 4.0 * kTwoPi);
    expect_continuous(rotating_point(3.0, 3.0, 1.0), 4.0 * kTwoPi);
    expect_continuous(linear_uniform({0.0, 5.0, 0.0}, 0.4, -0.3), 4.0 * kTwoPi);
    expect_continuous(circular_target(0.0, 2.0, 1.5, 0.8, 0.0, kHalfPi), 4.0 * kTwoPi);
    const WindField wind{[](double t) { return std::array<double, 2>{0.5 * std::sin(t), 0.3}; },
                         {3.0, 3.0, 0.0}, std::hypot(0.5, 0.3)};
    expect_continuous(wind_goal_target(wind), 4.0 * kTwoPi);
    expect_continuous(mirror(circular_target(0.0, 2.0, 1.5, 0.8, 0.0, kHalfPi)), 4.0 * kTwoPi);
    expect_continuous(sampled_target({{0.0, {0.0, 0.0, 0.0}},
                                      {5.0, {2.0, 1.0, kPi / 3.0}},
                                      {30.0, {-1.0, 4.0, -kPi / 2.0}}}),
                      4.0 * kTwoPi);
}

}  // namespace
