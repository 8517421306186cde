#pragma once

// Independent brute-force verification. Grid search over schedule parameters
// for approximate minimum-time interception, plus verification reports that
// cross-check a solver result against closed forms, the ODE integrator and
// the grid search. Deliberately knows nothing about the residual chains.
//
// The search is two-stage: a coarse tau grid with incremental trig flags
// near-misses, which are then refined on a local sub-grid before the exact
// tolerance test. Without refinement the coarse grid cannot resolve the thin
// feasible slivers that long straight segments produce (endpoint sensitivity
// to tau1 grows with segment length).

#include "dubint/geometry.hpp"
#include "dubint/motion.hpp"
#include "dubint/solver.hpp"
#include "dubint/targets.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace dubint {

struct OracleSettings {
    double tau_step = 0.02;
    double t_step = 0.02;
    /// Feasibility tolerances. Tight enough that the time at which the
    /// tolerance ball is first touched stays within the 2 * t_step window of
    /// the exact interception time for unit-scale relative motion.
    double position_tol = 0.012;
    double heading_tol = 0.012;
    /// Local refinement pitch is tau_step / refine_factor.
    double refine_factor = 32.0;
    double horizon = kDefaultHorizon;
    /// Search free three-piece sign patterns instead of the reduced two-switch
    /// families; very slow, intended for small horizons only.
    bool arbitrary_switching = false;
    unsigned threads = 0;  // 0 = hardware concurrency
};

struct OracleResult {
    std::optional<double> time;  // first grid time with a feasible schedule
    std::optional<ControlSchedule> schedule;
    double achieved_distance = std::numeric_limits<double>::infinity();

    [[nodiscard]] bool feasible() const { return time.has_value(); }
};

namespace detail {

struct GridMatch {
    // absent in the arbitrary-switching mode, whose controls need not be
    // two-switch schedules
    std::optional<ControlSchedule> schedule;
    double distance = std::numeric_limits<double>::infinity();
};

/// Advances (c, s) = (cos a, sin a) to the angle a + d, where (cd, sd) is
/// (cos d, sin d); keeps the hot loops free of libm calls.
inline void rotate(double& c, double& s, double cd, double sd) {
    const double cn = c * cd - s * sd;
    s = s * cd + c * sd;
    c = cn;
}

struct OracleScan {
    double t;
    Configuration target;
    const OracleSettings& set;
    bool early_exit;
    std::optional<GridMatch> best;

    // exact feasibility of one CSC sample; updates best on a hit
    bool try_csc(TurnSign s, TurnSign sigma, double tau1, double seg) {
        if (tau1 < 0.0 || seg < 0.0 || tau1 >= kTwoPi || tau1 + seg > t)
            return false;
        const Configuration e = csc_endpoint(s, sigma, tau1, tau1 + seg, t);
        const double dx = e.x - target.x;
        const double dy = e.y - target.y;
        const double dphi = angle_abs(e.phi - target.phi);
        if (dx * dx + dy * dy > set.position_tol * set.position_tol ||
            dphi > set.heading_tol)
            return false;
        const double dist = std::hypot(dx, dy, dphi);
        if (!best || dist < best->distance)
            best = GridMatch{make_csc(s, sigma, tau1, tau1 + seg), dist};
        return true;
    }

    bool try_ccc(TurnSign s, double tau1, double gap) {
        if (tau1 < 0.0 || gap < 0.0 || tau1 >= kTwoPi || gap >= kTwoPi || tau1 + gap > t)
            return false;
        const Configuration e = ccc_endpoint(s, tau1, tau1 + gap, t);
        const double dx = e.x - target.x;
        const double dy = e.y - target.y;
        const double dphi = angle_abs(e.phi - target.phi);
        if (dx * dx + dy * dy > set.position_tol * set.position_tol ||
            dphi > set.heading_tol)
            return false;
        const double dist = std::hypot(dx, dy, dphi);
        if (!best || dist < best->distance)
            best = GridMatch{make_ccc(s, tau1, tau1 + gap), dist};
        return true;
    }

    // refine a flagged coarse cell on a local sub-grid; true on first hit
    // when early-exiting
    template <class Try>
    bool refine(double p0, double q0, double pitch, Try&& attempt) {
        const double span = set.tau_step;
        bool hit = false;
        for (double p = p0 - span; p <= p0 + span + 0.5 * pitch; p += pitch)
            for (double q = q0 - span; q <= q0 + span + 0.5 * pitch; q += pitch) {
                if (attempt(p, q)) {
                    hit = true;
                    if (early_exit)
                        return true;
                }
            }
        return hit;
    }
};

/// Scans every reduced-family schedule at fixed time t against the target.
/// With early_exit the first refined hit in scan order wins; otherwise the
/// closest refined match by full metric is returned.
inline std::optional<GridMatch> scan_schedules_at(double t, const Configuration& target,
                                                  const OracleSettings& set, bool early_exit) {
    const double step = set.tau_step;
    const double pitch = step / set.refine_factor;
    // coarse triggers: worst-case endpoint displacement across half a cell
    const double pos_slack = (4.0 + t) * step;
    const double trigger = set.position_tol + pos_slack;
    const double trigger2 = trigger * trigger;
    const double cos_head_trigger = std::cos(std::min(kPi, set.heading_tol + 4.0 * step));
    const double cos_phi_t = std::cos(target.phi);
    const double sin_phi_t = std::sin(target.phi);
    const double cos_step = std::cos(step);
    const double sin_step = std::sin(step);

    OracleScan scan{t, target, set, early_exit, std::nullopt};
    const double tau1_max = std::min(t, kTwoPi - 0.5 * step);

    // CSC: the straight length grows by `step` per inner iteration while the
    // last-arc angle w = s*tau1 + sigma*(t - tau2) rotates by -sigma*step.
    for (const auto& [s, sigma] : {std::pair{TurnSign::kLeft, TurnSign::kLeft},
                                   std::pair{TurnSign::kLeft, TurnSign::kRight},
                                   std::pair{TurnSign::kRight, TurnSign::kLeft},
                                   std::pair{TurnSign::kRight, TurnSign::kRight}}) {
        const double sv = sign_of(s);
        const double gv = sign_of(sigma);
        const double sd = -gv * sin_step;
        for (double tau1 = 0.0; tau1 <= tau1_max; tau1 += step) {
            const double c1 = std::cos(tau1);
            const double s1 = std::sin(tau1);
            const double x0 = sv * (c1 - 1.0);
            double seg = 0.0;
            double cw = std::cos(sv * tau1 + gv * (t - tau1));
            double sw = std::sin(sv * tau1 + gv * (t - tau1));
            double last_refined = -1.0;
            for (bool last = seg >= t - tau1;;) {
                const double dx = x0 - sv * s1 * seg + gv * (cw - c1) - target.x;
                const double dy = s1 + c1 * seg - gv * (sv * s1 - sw) - target.y;
                if (dx * dx + dy * dy <= trigger2 &&
                    -(sw * cos_phi_t - cw * sin_phi_t) >= cos_head_trigger &&
                    (last_refined < 0.0 || seg - last_refined >= step)) {
                    last_refined = seg;
                    if (scan.refine(tau1, seg, pitch, [&](double p, double q) {
                            return scan.try_csc(s, sigma, p, q);
                        }) &&
                        early_exit)
                        return scan.best;
                }
                if (last)
                    break;
                seg += step;
                rotate(cw, sw, cos_step, sd);
                if (seg >= t - tau1) {  // snap onto the tau2 = t boundary
                    seg = t - tau1;
                    cw = c1;
                    sw = sv * s1;
                    last = true;
                }
            }
        }
    }

    // CCC: with gap = tau2 - tau1 the endpoint depends on b = tau1 - gap and
    // a = t - 2*gap, which rotate by -step and -2*step per iteration.
    const double cos_2step = std::cos(2.0 * step);
    const double sin_2step = std::sin(2.0 * step);
    for (const TurnSign s : {TurnSign::kLeft, TurnSign::kRight}) {
        const double sv = sign_of(s);
        for (double tau1 = 0.0; tau1 <= tau1_max; tau1 += step) {
            const double c1 = std::cos(tau1);
            const double s1 = std::sin(tau1);
            const double gap_max = std::min(t - tau1, kTwoPi - 0.5 * step);
            double gap = 0.0;
            double cb = c1;  // cos(tau1 - gap)
            double sb = s1;
            double ca = std::cos(t);  // cos(t - 2*gap)
            double sa = std::sin(t);
            double last_refined = -1.0;
            for (bool last = gap >= gap_max;;) {
                const double dx = sv * (2.0 * c1 - 1.0 - 2.0 * cb + ca) - target.x;
                const double dy = 2.0 * s1 - 2.0 * sb + sa - target.y;
                if (dx * dx + dy * dy <= trigger2 &&
                    -(sv * sa * cos_phi_t - ca * sin_phi_t) >= cos_head_trigger &&
                    (last_refined < 0.0 || gap - last_refined >= step)) {
                    last_refined = gap;
                    if (scan.refine(tau1, gap, pitch, [&](double p, double q) {
                            return scan.try_ccc(s, p, q);
                        }) &&
                        early_exit)
                        return scan.best;
                }
                if (last)
                    break;
                gap += step;
                rotate(cb, sb, cos_step, -sin_step);
                rotate(ca, sa, cos_2step, -sin_2step);
                if (gap >= gap_max) {  // snap onto the tau2 = t (or 2*pi) boundary
                    gap = gap_max;
                    cb = std::cos(tau1 - gap);
                    sb = std::sin(tau1 - gap);
                    ca = std::cos(t - 2.0 * gap);
                    sa = std::sin(t - 2.0 * gap);
                    last = true;
                }
            }
        }
    }

    return scan.best;
}

/// Endpoint of a free three-piece piecewise-constant control; only used by
/// the arbitrary-switching mode.
inline Configuration three_piece_endpoint(const std::array<double, 3>& u, double tau1,
                                          double tau2, double t) {
    Configuration c = kStartConfiguration;
    const std::array<double, 3> ends{tau1, tau2, t};
    double from = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double d = ends[i] - from;
        from = ends[i];
        if (d <= 0.0)
            continue;
        if (u[i] == 0.0) {
            c.x += d * std::cos(c.phi);
            c.y += d * std::sin(c.phi);
        } else {
            const double phi1 = c.phi + u[i] * d;
            c.x += (std::sin(phi1) - std::sin(c.phi)) / u[i];
            c.y += (std::cos(c.phi) - std::cos(phi1)) / u[i];
            c.phi = phi1;
        }
    }
    return c;
}

inline std::optional<GridMatch> scan_arbitrary_at(double t, const Configuration& target,
                                                  const OracleSettings& set, bool early_exit) {
    const double step = set.tau_step;
    const double pos_tol2 = set.position_tol * set.position_tol;
    std::optional<GridMatch> best;
    constexpr std::array<double, 3> kLevels{-1.0, 0.0, 1.0};
    for (const double u1 : kLevels)
        for (const double u2 : kLevels)
            for (const double u3 : kLevels)
                for (double tau1 = 0.0; tau1 <= t; tau1 += step)
                    for (double tau2 = tau1; tau2 <= t; tau2 += step) {
                        const Configuration e =
                            three_piece_endpoint({u1, u2, u3}, tau1, tau2, t);
                        const double dx = e.x - target.x;
                        const double dy = e.y - target.y;
                        const double dphi = angle_abs(e.phi - target.phi);
                        if (dx * dx + dy * dy > pos_tol2 || dphi > set.heading_tol)
                            continue;
                        const double dist = std::hypot(dx, dy, dphi);
                        if (!best || dist < best->distance)
                            best = GridMatch{std::nullopt, dist};
                        if (early_exit)
                            return best;
                    }
    return best;
}

inline std::optional<GridMatch> scan_at(double t, const Configuration& target,
                                        const OracleSettings& set, bool early_exit) {
    return set.arbitrary_switching ? scan_arbitrary_at(t, target, set, early_exit)
                                   : scan_schedules_at(t, target, set, early_exit);
}

}  // namespace detail

/// Sweeps t over the grid 0, t_step, ... and returns the first time at which
/// some schedule intercepts within tolerance: a certified upper bound on the
/// optimal time within grid resolution. Block-parallel over t when more than
/// one thread is available; results are deterministic either way.
[[nodiscard]] inline OracleResult brute_force_min_time(const TargetTrajectory& target,
                                                       const OracleSettings& settings = {}) {
    if (!(settings.tau_step > 0.0) || !(settings.t_step > 0.0))
        throw std::domain_error("oracle: grid steps must be positive");

    const auto nt = static_cast<std::size_t>(std::floor(settings.horizon / settings.t_step)) + 1;
    const unsigned threads = settings.threads
                                 ? settings.threads
                                 : std::max(1u, std::thread::hardware_concurrency());

    const auto feasible_at = [&](std::size_t i) -> bool {
        const double t = settings.t_step * static_cast<double>(i);
        return detail::scan_at(t, target(t), settings, /*early_exit=*/true).has_value();
    };

    std::optional<std::size_t> hit;
    if (threads <= 1) {
        for (std::size_t i = 0; i < nt; ++i)
            if (feasible_at(i)) {
                hit = i;
                break;
            }
    } else {
        const std::size_t block = 8 * threads;
        for (std::size_t start = 0; start < nt && !hit; start += block) {
            const std::size_t end = std::min(nt, start + block);
            std::vector<char> flags(end - start, 0);
            std::atomic<std::size_t> next{start};
            std::vector<std::future<void>> futs;
            futs.reserve(threads);
            for (unsigned w = 0; w < threads; ++w)
                futs.push_back(std::async(std::launch::async, [&] {
                    for (std::size_t i = next++; i < end; i = next++)
                        flags[i - start] = feasible_at(i) ? 1 : 0;
                }));
            for (auto& f : futs)
                f.get();
            for (std::size_t i = start; i < end; ++i)
                if (flags[i - start]) {
                    hit = i;
                    break;
                }
        }
    }

    OracleResult out;
    if (!hit)
        return out;
    const double t = settings.t_step * static_cast<double>(*hit);
    const auto match = detail::scan_at(t, target(t), settings, /*early_exit=*/false);
    out.time = t;
    out.schedule = match->schedule;  // absent in arbitrary-switching mode
    out.achieved_distance = match->distance;
    return out;
}

struct VerificationReport {
    double closed_form_error = std::numeric_limits<double>::quiet_NaN();
    double ode_error = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> oracle_time;
    bool endpoint_ok = false;
    bool ode_ok = false;
    bool oracle_agrees = false;           // |T* - T_oracle| <= 2 * t_step
    bool no_earlier_feasibility = false;  // nothing feasible below T* - 2 * t_step

    [[nodiscard]] bool passed() const {
        return endpoint_ok && ode_ok && oracle_agrees && no_earlier_feasibility;
    }
};

inline constexpr double kVerifyEndpointTol = 1e-6;
inline constexpr double kVerifyOdeTol = 1e-5;
inline constexpr double kVerifyOdeStep = 1e-4;

/// Cross-checks a feasible solver result: closed form against the target,
/// RK4 against the target, and the solver time against the grid search.
/// A schedule that cannot even be evaluated (tau2 past the interception
/// time, say) reports infinite errors rather than throwing.
[[nodiscard]] inline VerificationReport verify_solution(const TargetTrajectory& target,
                                                        const SolverResult& result,
                                                        OracleSettings settings = {}) {
    if (!result.feasible() || !result.schedule)
        throw std::invalid_argument("verify_solution: result must be feasible");
    const double t_star = *result.t_star;
    const Configuration e = target(t_star);

    VerificationReport report;
    try {
        report.closed_form_error = metric(endpoint(*result.schedule, t_star), e);
        report.ode_error = metric(integrate_ode(*result.schedule, t_star, kVerifyOdeStep), e);
    } catch (const std::domain_error&) {
        report.closed_form_error = std::numeric_limits<double>::infinity();
        report.ode_error = std::numeric_limits<double>::infinity();
    }
    report.endpoint_ok = report.closed_form_error <= kVerifyEndpointTol;
    report.ode_ok = report.ode_error <= kVerifyOdeTol;

    // the scan is ascending, so the first feasible grid time both bounds the
    // optimum and witnesses the absence of earlier feasibility
    settings.horizon = std::min(settings.horizon, t_star + 0.5);
    const OracleResult oracle = brute_force_min_time(target, settings);
    report.oracle_time = oracle.time;
    if (oracle.time) {
        report.oracle_agrees = std::abs(*oracle.time - t_star) <= 2.0 * settings.t_step;
        report.no_earlier_feasibility = *oracle.time >= t_star - 2.0 * settings.t_step;
    }
    return report;
}

}  // namespace dubint
