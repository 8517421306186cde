#pragma once

// Target motion E(t) as an immutable evaluation contract, plus builders for
// the motions the solver is exercised against: static poses, rotating points,
// straight-line drift, circular motion, wind-field goals, mirrored copies and
// sampled tracks.

#include "dubint/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dubint {

/// Continuous target motion t -> Configuration. Evaluation must be a pure
/// function of t; builders produce immutable values safe for concurrent use.
struct TargetTrajectory {
    std::function<Configuration(double)> eval;
    std::string kind;
    double lipschitz = 0.0;  // declared continuity bound for metric(E(t), E(t+h)) <= L*h

    [[nodiscard]] Configuration operator()(double t) const { return eval(t); }
};

[[nodiscard]] inline TargetTrajectory static_target(const Configuration& p) {
    return {[p](double) { return p; }, "static", 0.0};
}

/// Resting point with uniformly rotating orientation: E(t) = (x0, y0, alpha*t).
[[nodiscard]] inline TargetTrajectory rotating_point(double x0, double y0, double alpha) {
    return {[=](double t) { return Configuration{x0, y0, alpha * t}; },
            "rotating_point", std::abs(alpha)};
}

/// Straight-line uniform drift with constant orientation.
[[nodiscard]] inline TargetTrajectory linear_uniform(const Configuration& p0, double vx,
                                                     double vy) {
    return {[=](double t) { return Configuration{p0.x + vx * t, p0.y + vy * t, p0.phi}; },
            "linear", std::hypot(vx, vy)};
}

/// Point on a circle of radius r about (cx, cy); heading tracks the position
/// angle plus a fixed offset (offset pi/2 gives the tangential heading).
[[nodiscard]] inline TargetTrajectory circular_target(double cx, double cy, double r,
                                                      double omega, double phase,
                                                      double heading_offset) {
    if (!(r > 0.0))
        throw std::domain_error("circular_target: radius must be positive");
    return {[=](double t) {
                const double a = phase + omega * t;
                return Configuration{cx + r * std::cos(a), cy + r * std::sin(a),
                                     a + heading_offset};
            },
            "circular", std::abs(omega) * std::hypot(r, 1.0)};
}

/// Time-dependent wind (wx, wy) plus the ground-frame goal configuration.
struct WindField {
    std::function<std::array<double, 2>(double)> velocity;
    Configuration goal;
    double speed_bound = 1.0;
};

/// Quadrature tolerance for the wind drift integral.
inline constexpr double kWindQuadratureTol = 1e-10;

namespace detail {

inline std::array<double, 2> simpson_slice(double a, double b,
                                           const std::array<double, 2>& fa,
                                           const std::array<double, 2>& fm,
                                           const std::array<double, 2>& fb) {
    const double w = (b - a) / 6.0;
    return {w * (fa[0] + 4.0 * fm[0] + fb[0]), w * (fa[1] + 4.0 * fm[1] + fb[1])};
}

template <class F>
inline std::array<double, 2> adaptive_simpson(F&& f, double a, double b,
                                              const std::array<double, 2>& fa,
                                              const std::array<double, 2>& fm,
                                              const std::array<double, 2>& fb,
                                              const std::array<double, 2>& whole, double tol,
                                              int depth) {
    const double m = 0.5 * (a + b);
    const auto fl = f(0.5 * (a + m));
    const auto fr = f(0.5 * (m + b));
    const auto left = simpson_slice(a, m, fa, fl, fm);
    const auto right = simpson_slice(m, b, fm, fr, fb);
    const double err = std::max(std::abs(left[0] + right[0] - whole[0]),
                                std::abs(left[1] + right[1] - whole[1]));
    if (depth <= 0 || err <= 15.0 * tol)
        return {left[0] + right[0] + (left[0] + right[0] - whole[0]) / 15.0,
                left[1] + right[1] + (left[1] + right[1] - whole[1]) / 15.0};
    const auto lo = adaptive_simpson(f, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1);
    const auto hi = adaptive_simpson(f, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1);
    return {lo[0] + hi[0], lo[1] + hi[1]};
}

/// Adaptive composite Simpson quadrature of a 2-vector integrand on [a, b].
template <class F>
inline std::array<double, 2> integrate2(F&& f, double a, double b, double tol) {
    if (b <= a)
        return {0.0, 0.0};
    const auto fa = f(a);
    const auto fb = f(b);
    const auto fm = f(0.5 * (a + b));
    const auto whole = simpson_slice(a, b, fa, fm, fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

/// Prefix integrals of the wind at fixed checkpoints; the root scanner
/// evaluates E(t) thousands of times at nearby t, so only the tail past the
/// last checkpoint is re-integrated per call.
class WindIntegralCache {
  public:
    explicit WindIntegralCache(std::function<std::array<double, 2>(double)> velocity)
        : velocity_(std::move(velocity)) {
        prefix_.push_back({0.0, 0.0});
    }

    [[nodiscard]] std::array<double, 2> integral_to(double t) const {
        if (t <= 0.0)
            return {0.0, 0.0};
        const auto k = static_cast<std::size_t>(std::floor(t / kCheckpoint));
        std::array<double, 2> base;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            while (prefix_.size() <= k) {
                const double a = kCheckpoint * static_cast<double>(prefix_.size() - 1);
                const auto seg = integrate2(velocity_, a, a + kCheckpoint, kSegmentTol);
                const auto& last = prefix_.back();
                prefix_.push_back({last[0] + seg[0], last[1] + seg[1]});
            }
            base = prefix_[k];
        }
        const auto tail = integrate2(velocity_, kCheckpoint * static_cast<double>(k), t,
                                     kSegmentTol);
        return {base[0] + tail[0], base[1] + tail[1]};
    }

  private:
    static constexpr double kCheckpoint = 0.25;
    // per-segment budget; the composite over ~100 checkpoints stays within
    // kWindQuadratureTol
    static constexpr double kSegmentTol = kWindQuadratureTol / 100.0;

    std::function<std::array<double, 2>(double)> velocity_;
    mutable std::mutex mutex_;
    mutable std::vector<std::array<double, 2>> prefix_;
};

}  // namespace detail

/// Reduction of trajectory planning under known wind: reaching the air-frame
/// point goal - integral(w) at time T is equivalent to reaching the
/// ground-frame goal while drifting with the wind.
[[nodiscard]] inline TargetTrajectory wind_goal_target(const WindField& wind) {
    auto cache = std::make_shared<detail::WindIntegralCache>(wind.velocity);
    const Configuration goal = wind.goal;
    return {[cache, goal](double t) {
                const auto drift = cache->integral_to(t);
                return Configuration{goal.x - drift[0], goal.y - drift[1], goal.phi};
            },
            "wind", wind.speed_bound};
}

/// Pointwise mirror across the plane x = 0 of R^2 x S.
[[nodiscard]] inline TargetTrajectory mirror(const TargetTrajectory& target) {
    auto inner = target.eval;
    return {[inner](double t) {
                const Configuration e = inner(t);
                return Configuration{-e.x, e.y, kPi - e.phi};
            },
            "mirror:" + target.kind, target.lipschitz};
}

/// Piecewise-linear track through timed samples: linear in x, y and
/// shortest-arc in heading, constant beyond the ends.
[[nodiscard]] inline TargetTrajectory sampled_target(
    std::vector<std::pair<double, Configuration>> samples) {
    if (samples.size() < 2)
        throw std::domain_error("sampled_target: need at least two samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i - 1].first < samples[i].first))
            throw std::domain_error("sampled_target: times must be strictly increasing");

    double lipschitz = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const auto& [ta, ca] = samples[i - 1];
        const auto& [tb, cb] = samples[i];
        lipschitz = std::max(lipschitz, metric(ca, cb) / (tb - ta));
    }

    auto data = std::make_shared<std::vector<std::pair<double, Configuration>>>(
        std::move(samples));
    return {[data](double t) {
                const auto& s = *data;
                if (t <= s.front().first)
                    return s.front().second;
                if (t >= s.back().first)
                    return s.back().second;
                const auto it = std::upper_bound(
                    s.begin(), s.end(), t,
                    [](double v, const auto& e) { return v < e.first; });
                const auto& [tb, cb] = *it;
                const auto& [ta, ca] = *(it - 1);
                const double w = (t - ta) / (tb - ta);
                const double dphi = std::remainder(cb.phi - ca.phi, kTwoPi);
                return Configuration{ca.x + w * (cb.x - ca.x), ca.y + w * (cb.y - ca.y),
                                     ca.phi + w * dphi};
            },
            "track", lipschitz};
}

}  // namespace dubint
