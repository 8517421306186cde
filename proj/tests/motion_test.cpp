#include "dubint/motion.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dubint;

namespace {

TEST(ControlAt, PiecewiseValuesAndRightContinuity) {
    const auto csc = make_csc(TurnSign::kLeft, TurnSign::kRight, 1.0, 2.0);
    EXPECT_DOUBLE_EQ(control_at(csc, 0.5), 1.0);
    EXPECT_DOUBLE_EQ(control_at(csc, 1.0), 0.0);  // right-continuous at the switch
    EXPECT_DOUBLE_EQ(control_at(csc, 2.0), -1.0);

    const auto ccc = make_ccc(TurnSign::kRight, 1.0, 2.0);
    EXPECT_DOUBLE_EQ(control_at(ccc, 0.5), -1.0);
    EXPECT_DOUBLE_EQ(control_at(ccc, 1.5), 1.0);  // middle arc runs opposite to s
    EXPECT_DOUBLE_EQ(control_at(ccc, 3.0), -1.0);
}

TEST(ScheduleFactories, RejectInvalidSwitchTimes) {
    const auto csc = [](double a, double b) {
        static_cast<void>(make_csc(TurnSign::kLeft, TurnSign::kLeft, a, b));
    };
    EXPECT_THROW(csc(2.0, 1.0), std::domain_error);
    EXPECT_THROW(csc(-0.1, 1.0), std::domain_error);
    EXPECT_THROW(csc(kTwoPi, kTwoPi), std::domain_error);
    EXPECT_THROW(static_cast<void>(make_ccc(TurnSign::kLeft, 0.0, kTwoPi)), std::domain_error);
}

TEST(CscEndpoint, PureStraightGoesUp) {
    for (const TurnSign s : {TurnSign::kLeft, TurnSign::kRight})
        for (const TurnSign sigma : {TurnSign::kLeft, TurnSign::kRight}) {
            const auto e = csc_endpoint(s, sigma, 0.0, 4.0, 4.0);
            EXPECT_NEAR(e.x, 0.0, 1e-12);
            EXPECT_NEAR(e.y, 4.0, 1e-12);
            EXPECT_NEAR(angle_abs(e.phi - kHalfPi), 0.0, 1e-12);
        }
}

TEST(CscEndpoint, FullLeftCircleReturnsToStart) {
    // the raw endpoint map accepts tau1 = 2*pi; only schedules restrict it
    const auto e = csc_endpoint(TurnSign::kLeft, TurnSign::kLeft, kTwoPi, kTwoPi, kTwoPi);
    EXPECT_NEAR(metric(e, kStartConfiguration), 0.0, 1e-12);
}

TEST(CscEndpoint, OrderingViolationThrows) {
    EXPECT_THROW(static_cast<void>(csc_endpoint(TurnSign::kLeft, TurnSign::kLeft, 1.0, 2.0, 1.5)),
                 std::domain_error);
}

TEST(CscEndpoint, MatchesRk4OnTheSpecCase) {
    const double tau1 = kHalfPi;
    const double tau2 = kHalfPi + 1.0;
    const double t = kPi + 1.0;
    const auto closed = csc_endpoint(TurnSign::kLeft, TurnSign::kRight, tau1, tau2, t);
    const auto ode = integrate_ode(make_csc(TurnSign::kLeft, TurnSign::kRight, tau1, tau2), t,
                                   1e-5);
    EXPECT_NEAR(metric(closed, ode), 0.0, 1e-9);
}

TEST(CccEndpoint, SingleFullCircle) {
    for (const TurnSign s : {TurnSign::kLeft, TurnSign::kRight}) {
        const auto e = ccc_endpoint(s, 0.0, 0.0, kTwoPi);
        EXPECT_NEAR(metric(e, kStartConfiguration), 0.0, 1e-12);
    }
}

TEST(CccEndpoint, HalfLeftCircle) {
    // half a left turn from the origin lands at (-2, 0) heading downward
    const auto e = ccc_endpoint(TurnSign::kLeft, 0.0, 0.0, kPi);
    EXPECT_NEAR(e.x, -2.0, 1e-12);
    EXPECT_NEAR(e.y, 0.0, 1e-12);
    EXPECT_NEAR(angle_abs(e.phi - 3.0 * kHalfPi), 0.0, 1e-12);
    const auto ode = integrate_ode(make_ccc(TurnSign::kLeft, 0.0, 0.0), kPi, 1e-5);
    EXPECT_NEAR(metric(e, ode), 0.0, 1e-10);
}

TEST(CccEndpoint, MatchesRk4OnThreeArcCase) {
    const auto closed = ccc_endpoint(TurnSign::kRight, 1.0, 3.0, 5.0);
    const auto ode = integrate_ode(make_ccc(TurnSign::kRight, 1.0, 3.0), 5.0, 1e-5);
    EXPECT_NEAR(metric(closed, ode), 0.0, 1e-9);
}

TEST(IntegrateOde, StraightScheduleAndInitialCondition) {
    const auto straight = make_csc(TurnSign::kLeft, TurnSign::kLeft, 0.0, 0.0);
    // tau1 = tau2 = 0 means the last arc starts immediately; use a long
    // straight segment instead
    const auto sched = make_csc(TurnSign::kLeft, TurnSign::kLeft, 0.0, 10.0);
    const auto e = integrate_ode(sched, 1.0, 1e-4);
    EXPECT_NEAR(e.x, 0.0, 1e-10);
    EXPECT_NEAR(e.y, 1.0, 1e-10);
    EXPECT_NEAR(angle_abs(e.phi - kHalfPi), 0.0, 1e-10);

    const auto at_zero = integrate_ode(straight, 0.0, 1e-4);
    EXPECT_NEAR(metric(at_zero, kStartConfiguration), 0.0, 1e-15);
}

TEST(ClosedFormsVsOde, RandomSchedules) {
    auto rng = dubint::test::make_rng(10);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto [sched, t] = dubint::test::random_schedule(rng);
        const double err = metric(endpoint(sched, t), integrate_ode(sched, t, 1e-4));
        worst = std::max(worst, err);
    }
    EXPECT_LE(worst, 1e-7);
}

TEST(CscEndpoint, DegenerateMiddleMatchesCcc) {
    // a CSC schedule whose straight segment vanishes and whose last arc turns
    // the same way is a single arc, exactly the CCC with an empty middle arc
    auto rng = dubint::test::make_rng(11);
    for (int i = 0; i < 200; ++i) {
        const double tau1 = dubint::test::uniform(rng, 0.0, kTwoPi * 0.999);
        const double t = tau1 + dubint::test::uniform(rng, 0.0, 10.0);
        const auto s = dubint::test::random_sign(rng);
        const auto a = csc_endpoint(s, s, tau1, tau1, t);
        const auto b = ccc_endpoint(s, tau1, tau1, t);
        ASSERT_NEAR(a.x, b.x, 1e-13);
        ASSERT_NEAR(a.y, b.y, 1e-13);
        ASSERT_NEAR(angle_abs(a.phi - b.phi), 0.0, 1e-13);
    }
}

TEST(CscEndpoint, WrapIdentityAtTau1TwoPi) {
    // P(t; 2*pi, tau2) = P(t; 0, tau2 - 2*pi): a first-arc cycle can be
    // shifted to the last arc without moving the endpoint
    auto rng = dubint::test::make_rng(12);
    for (int i = 0; i < 200; ++i) {
        const double tau2 = kTwoPi + dubint::test::uniform(rng, 0.0, 8.0);
        const double t = tau2 + dubint::test::uniform(rng, 0.0, 6.0);
        const auto s = dubint::test::random_sign(rng);
        const auto sigma = dubint::test::random_sign(rng);
        const auto wrapped = csc_endpoint(s, sigma, kTwoPi, tau2, t);
        const auto shifted = csc_endpoint(s, sigma, 0.0, tau2 - kTwoPi, t);
        ASSERT_NEAR(metric(wrapped, shifted), 0.0, 1e-9);
    }
}

TEST(CscEndpoint, HeadingFormula) {
    auto rng = dubint::test::make_rng(13);
    for (int i = 0; i < 200; ++i) {
        const auto [sched, t] = dubint::test::random_schedule(rng);
        if (sched.family != TrajectoryFamily::kCsc)
            continue;
        const auto e = endpoint(sched, t);
        const double expected = kHalfPi + sign_of(sched.s) * sched.tau1 +
                                sign_of(*sched.sigma) * (t - sched.tau2);
        ASSERT_NEAR(angle_abs(e.phi - expected), 0.0, 1e-12);
    }
}

TEST(SampleTrajectory, StraightSamples) {
    const auto sched = make_csc(TurnSign::kLeft, TurnSign::kLeft, 0.0, 5.0);
    const auto samples = sample_trajectory(sched, 2.0, 3);
    ASSERT_EQ(samples.size(), 3u);
    EXPECT_NEAR(samples[0].config.y, 0.0, 1e-12);
    EXPECT_NEAR(samples[1].config.y, 1.0, 1e-12);
    EXPECT_NEAR(samples[2].config.y, 2.0, 1e-12);
    EXPECT_DOUBLE_EQ(samples[0].t, 0.0);
    EXPECT_DOUBLE_EQ(samples[2].t, 2.0);
}

TEST(SampleTrajectory, EndpointsAndControlsMatch) {
    auto rng = dubint::test::make_rng(14);
    for (int i = 0; i < 50; ++i) {
        const auto [sched, t] = dubint::test::random_schedule(rng);
        const auto samples = sample_trajectory(sched, t, 9);
        ASSERT_NEAR(metric(samples.front().config, kStartConfiguration), 0.0, 1e-12);
        ASSERT_NEAR(metric(samples.back().config, endpoint(sched, t)), 0.0, 1e-12);
        for (const auto& s : samples)
            ASSERT_DOUBLE_EQ(s.u, control_at(sched, s.t));
    }
}

TEST(SampleTrajectory, RejectsTooFewSamples) {
    const auto sched = make_csc(TurnSign::kLeft, TurnSign::kLeft, 0.0, 1.0);
    EXPECT_THROW(sample_trajectory(sched, 1.0, 1), std::domain_error);
}

}  // namespace
