#pragma once

// Bang-bang control schedules with at most two switches, the integrated
// closed-form endpoint maps for CSC and CCC trajectories, and a fixed-step
// RK4 integrator of the car dynamics used to cross-verify the closed forms.

#include "dubint/geometry.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dubint {

/// Where every scenario starts: the origin, heading straight up.
inline constexpr Configuration kStartConfiguration{0.0, 0.0, kHalfPi};

/// Turn direction of a circle arc; L is counterclockwise (u = +1).
enum class TurnSign : int { kRight = -1, kLeft = +1 };

[[nodiscard]] constexpr double sign_of(TurnSign s) noexcept {
    return static_cast<double>(static_cast<int>(s));
}

[[nodiscard]] constexpr TurnSign opposite(TurnSign s) noexcept {
    return s == TurnSign::kLeft ? TurnSign::kRight : TurnSign::kLeft;
}

[[nodiscard]] constexpr char turn_char(TurnSign s) noexcept {
    return s == TurnSign::kLeft ? 'L' : 'R';
}

[[nodiscard]] constexpr TurnSign turn_from_sign(double v) noexcept {
    return v < 0.0 ? TurnSign::kRight : TurnSign::kLeft;
}

enum class TrajectoryFamily { kCsc, kCcc };

/// A candidate bang-bang control: arc-straight-arc or arc-arc-arc, with
/// switch times tau1 <= tau2. For CSC the last-arc sign sigma is free;
/// for CCC the middle arc runs opposite to s and the last equals s.
struct ControlSchedule {
    TrajectoryFamily family = TrajectoryFamily::kCsc;
    TurnSign s = TurnSign::kLeft;
    std::optional<TurnSign> sigma;  // present iff family == kCsc
    double tau1 = 0.0;
    double tau2 = 0.0;
};

namespace detail {
inline void check_switch_times(double tau1, double tau2) {
    if (!(tau1 >= 0.0 && tau1 <= tau2))
        throw std::domain_error("schedule: switch times must satisfy 0 <= tau1 <= tau2");
    if (!(tau1 < kTwoPi))
        throw std::domain_error("schedule: tau1 must be below 2*pi");
}
}  // namespace detail

[[nodiscard]] inline ControlSchedule make_csc(TurnSign s, TurnSign sigma, double tau1, double tau2) {
    detail::check_switch_times(tau1, tau2);
    return ControlSchedule{TrajectoryFamily::kCsc, s, sigma, tau1, tau2};
}

[[nodiscard]] inline ControlSchedule make_ccc(TurnSign s, double tau1, double tau2) {
    detail::check_switch_times(tau1, tau2);
    if (!(tau2 - tau1 < kTwoPi))
        throw std::domain_error("schedule: CCC middle arc must be below 2*pi");
    return ControlSchedule{TrajectoryFamily::kCcc, s, std::nullopt, tau1, tau2};
}

/// Control input at time t; right-continuous at the switches.
[[nodiscard]] inline double control_at(const ControlSchedule& sched, double t) {
    if (t < sched.tau1)
        return sign_of(sched.s);
    if (t < sched.tau2)
        return sched.family == TrajectoryFamily::kCsc ? 0.0 : -sign_of(sched.s);
    return sched.family == TrajectoryFamily::kCsc ? sign_of(*sched.sigma) : sign_of(sched.s);
}

/// Integrated CSC endpoint at time t >= tau2.
[[nodiscard]] inline Configuration csc_endpoint(TurnSign s, TurnSign sigma, double tau1,
                                                double tau2, double t) {
    if (!(0.0 <= tau1 && tau1 <= tau2 && tau2 <= t))
        throw std::domain_error("csc_endpoint: need 0 <= tau1 <= tau2 <= t");
    const double sv = sign_of(s);
    const double gv = sign_of(sigma);
    const double w = sv * tau1 + gv * (t - tau2);
    const double c1 = std::cos(tau1);
    const double s1 = std::sin(tau1);
    return Configuration{
        sv * (c1 - 1.0 - (tau2 - tau1) * s1) + gv * (std::cos(w) - c1),
        s1 + (tau2 - tau1) * c1 - gv * (sv * s1 - std::sin(w)),
        kHalfPi + w,
    };
}

/// Integrated CCC endpoint at time t >= tau2; middle arc shorter than 2*pi.
[[nodiscard]] inline Configuration ccc_endpoint(TurnSign s, double tau1, double tau2, double t) {
    if (!(0.0 <= tau1 && tau1 <= tau2 && tau2 <= t))
        throw std::domain_error("ccc_endpoint: need 0 <= tau1 <= tau2 <= t");
    if (!(tau2 - tau1 < kTwoPi))
        throw std::domain_error("ccc_endpoint: middle arc must be below 2*pi");
    const double sv = sign_of(s);
    const double a = 2.0 * tau1 - 2.0 * tau2 + t;
    return Configuration{
        sv * (2.0 * std::cos(tau1) - 1.0 - 2.0 * std::cos(2.0 * tau1 - tau2) + std::cos(a)),
        2.0 * std::sin(tau1) - 2.0 * std::sin(2.0 * tau1 - tau2) + std::sin(a),
        kHalfPi + sv * a,
    };
}

[[nodiscard]] inline Configuration endpoint(const ControlSchedule& sched, double t) {
    return sched.family == TrajectoryFamily::kCsc
               ? csc_endpoint(sched.s, *sched.sigma, sched.tau1, sched.tau2, t)
               : ccc_endpoint(sched.s, sched.tau1, sched.tau2, t);
}

/// Configuration reached at any t in [0, horizon): evaluates the closed form
/// of the prefix schedule (switch times clamped to t) instead of integrating.
[[nodiscard]] inline Configuration config_at(const ControlSchedule& sched, double t) {
    if (t < 0.0)
        throw std::domain_error("config_at: time must be non-negative");
    const double t1 = std::min(sched.tau1, t);
    const double t2 = std::min(sched.tau2, t);
    return sched.family == TrajectoryFamily::kCsc
               ? csc_endpoint(sched.s, *sched.sigma, t1, t2, t)
               : ccc_endpoint(sched.s, t1, t2, t);
}

namespace detail {

inline Configuration rk4_span(Configuration c, double u, double duration, double step) {
    if (duration <= 0.0)
        return c;
    const auto n = static_cast<std::size_t>(std::ceil(duration / step));
    const double h = duration / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        // derivative of (x, y, phi) is (cos phi, sin phi, u); u is constant here
        const double k1 = c.phi;
        const double k2 = c.phi + 0.5 * h * u;
        const double k4 = c.phi + h * u;
        c.x += h / 6.0 * (std::cos(k1) + 4.0 * std::cos(k2) + std::cos(k4));
        c.y += h / 6.0 * (std::sin(k1) + 4.0 * std::sin(k2) + std::sin(k4));
        c.phi = k4;
    }
    return c;
}

}  // namespace detail

/// Independent check of the closed forms: classic RK4 with fixed step,
/// with integration intervals split exactly at the switch times so the
/// control is constant within every step.
[[nodiscard]] inline Configuration integrate_ode(const ControlSchedule& sched, double t,
                                                 double step) {
    if (!(t >= 0.0))
        throw std::domain_error("integrate_ode: time must be non-negative");
    if (!(step > 0.0))
        throw std::domain_error("integrate_ode: step must be positive");
    Configuration c = kStartConfiguration;
    const double t1 = std::min(sched.tau1, t);
    const double t2 = std::min(sched.tau2, t);
    c = detail::rk4_span(c, control_at(sched, 0.0), t1, step);
    c = detail::rk4_span(c, t1 < sched.tau2 ? control_at(sched, sched.tau1) : 0.0, t2 - t1, step);
    c = detail::rk4_span(c, control_at(sched, sched.tau2), t - t2, step);
    return c;
}

struct TrajectorySample {
    double t = 0.0;
    Configuration config;
    double u = 0.0;
};

/// n samples uniform in time on [0, t_end], endpoints included, each
/// evaluated through the closed forms.
[[nodiscard]] inline std::vector<TrajectorySample> sample_trajectory(const ControlSchedule& sched,
                                                                     double t_end,
                                                                     std::size_t n) {
    if (n < 2)
        throw std::domain_error("sample_trajectory: need at least two samples");
    std::vector<TrajectorySample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = t_end * static_cast<double>(i) / static_cast<double>(n - 1);
        out.push_back({t, config_at(sched, t), control_at(sched, t)});
    }
    return out;
}

}  // namespace dubint
