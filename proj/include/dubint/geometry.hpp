#pragma once

// Arithmetic on the circle S, the configuration metric on R^2 x S, and the
// two-branch arc-cosine angle used by the switch-time recovery formulas.
// Lengths are measured in units of the minimum turn radius, angles in radians.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dubint {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

/// Tolerance for angle equality on the circle, radians.
inline constexpr double kAngleEqualityTol = 1e-9;

/// Floor-convention remainder: a - b*floor(a/b), always in [0, b).
[[nodiscard]] inline double real_mod(double a, double b) {
    if (!(b > 0.0))
        throw std::domain_error("real_mod: modulus must be positive");
    double r = a - b * std::floor(a / b);
    // floor(a/b) can round across a representable boundary; pin the result
    // back into [0, b).
    if (r >= b)
        r -= b;
    if (r < 0.0)
        r = 0.0;
    return r;
}

/// Distance from an angle to 0 on the circle, in [0, pi].
[[nodiscard]] inline double angle_abs(double phi) {
    const double m = real_mod(phi, kTwoPi);
    return std::min(m, kTwoPi - m);
}

[[nodiscard]] inline bool angles_equal(double a, double b, double tol = kAngleEqualityTol) {
    return angle_abs(a - b) <= tol;
}

/// Planar position plus heading, counterclockwise from the x-axis.
/// The heading is stored unnormalized so that switch-time sums like
/// theta2 = theta1 + length do not accumulate wrap error; comparisons
/// go through angle_abs.
struct Configuration {
    double x = 0.0;
    double y = 0.0;
    double phi = 0.0;
};

/// Metric on R^2 x S: Euclidean in the plane, shortest-arc in heading.
[[nodiscard]] inline double metric(const Configuration& p, const Configuration& q) {
    return std::hypot(p.x - q.x, p.y - q.y, angle_abs(p.phi - q.phi));
}

/// Planar angle of (x, y) via the two-branch arc-cosine form, range [0, 2*pi).
/// Kept in this exact form (rather than remapping std::atan2) so the result
/// lands in the first switch time's domain by construction.
[[nodiscard]] inline double arctan2_paper(double y, double x) {
    const double r = std::hypot(x, y);
    if (r == 0.0)
        throw std::domain_error("arctan2_paper: undefined at the origin");
    const double a = std::acos(std::clamp(x / r, -1.0, 1.0));
    double out = (y >= 0.0) ? a : kTwoPi - a;
    if (out >= kTwoPi)  // y < 0 with |y| tiny can round acos to exactly 0
        out = 0.0;
    return out;
}

}  // namespace dubint
