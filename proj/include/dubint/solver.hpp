#pragma once

// Minimum-time lateral interception solver. Ten residual functions (four
// arc-straight-arc, four arc-arc-arc, plus the two cycled loci), a
// discontinuity-aware minimal-root scanner, switch-time recovery, and the
// final minimum-over-families selection.

#include "dubint/geometry.hpp"
#include "dubint/motion.hpp"
#include "dubint/targets.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dubint {

// ---------------------------------------------------------------------------
// Families

enum class FamilyKind { kCsc, kCcc, kSc, kCc };

/// One of the ten candidate equation families. For kCsc `second` is the
/// last-arc sign sigma; for kCcc it selects the middle-arc branch (kLeft:
/// middle arc in [0, pi], kRight: in (pi, 2*pi)). SC and CC carry no signs.
struct FamilyId {
    FamilyKind kind = FamilyKind::kCsc;
    TurnSign s = TurnSign::kLeft;
    TurnSign second = TurnSign::kLeft;

    [[nodiscard]] bool operator==(const FamilyId& o) const {
        if (kind != o.kind)
            return false;
        if (kind == FamilyKind::kSc || kind == FamilyKind::kCc)
            return true;
        return s == o.s && second == o.second;
    }
};

/// The ten families in tie-break order.
inline constexpr std::array<FamilyId, 10> kAllFamilies{{
    {FamilyKind::kCsc, TurnSign::kLeft, TurnSign::kLeft},
    {FamilyKind::kCsc, TurnSign::kLeft, TurnSign::kRight},
    {FamilyKind::kCsc, TurnSign::kRight, TurnSign::kLeft},
    {FamilyKind::kCsc, TurnSign::kRight, TurnSign::kRight},
    {FamilyKind::kCcc, TurnSign::kLeft, TurnSign::kLeft},
    {FamilyKind::kCcc, TurnSign::kLeft, TurnSign::kRight},
    {FamilyKind::kCcc, TurnSign::kRight, TurnSign::kLeft},
    {FamilyKind::kCcc, TurnSign::kRight, TurnSign::kRight},
    {FamilyKind::kSc, TurnSign::kLeft, TurnSign::kLeft},
    {FamilyKind::kCc, TurnSign::kLeft, TurnSign::kLeft},
}};

/// Compact, comma-free label: CSC++, CSC+-, ..., CCC--, SC, CC.
[[nodiscard]] inline std::string family_label(const FamilyId& f) {
    const auto pm = [](TurnSign v) { return v == TurnSign::kLeft ? '+' : '-'; };
    switch (f.kind) {
        case FamilyKind::kCsc: return std::string("CSC") + pm(f.s) + pm(f.second);
        case FamilyKind::kCcc: return std::string("CCC") + pm(f.s) + pm(f.second);
        case FamilyKind::kSc: return "SC";
        case FamilyKind::kCc: return "CC";
    }
    return "?";
}

/// Human-readable form used in solve reports: CSC(+1,-1), CCC(-1,+1), SC, CC.
[[nodiscard]] inline std::string family_human(const FamilyId& f) {
    const auto pm = [](TurnSign v) { return v == TurnSign::kLeft ? "+1" : "-1"; };
    switch (f.kind) {
        case FamilyKind::kCsc:
            return std::string("CSC(") + pm(f.s) + "," + pm(f.second) + ")";
        case FamilyKind::kCcc:
            return std::string("CCC(") + pm(f.s) + "," + pm(f.second) + ")";
        case FamilyKind::kSc: return "SC";
        case FamilyKind::kCc: return "CC";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Residual chains

/// Intermediates of the CSC chain at one target configuration. cos_tau1 and
/// sin_tau1 satisfy cos^2 + sin^2 = 1 identically wherever defined.
struct CscIntermediates {
    double xi = 0.0;
    double eta = 0.0;
    double rho2 = 0.0;
    double cos_tau1 = 0.0;
    double sin_tau1 = 0.0;
    double theta1 = 0.0;  // recovered tau1, in [0, 2*pi)
    double theta2 = 0.0;  // recovered tau2 = theta1 + straight length
};

struct CccIntermediates {
    double xi = 0.0;
    double eta = 0.0;
    double rho2 = 0.0;
    double cos_tau1 = 0.0;
    double sin_tau1 = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;  // theta1 + middle-arc length, branch chosen by mu
};

/// rho2 at or below this counts as the degenerate division by zero; rounding
/// of the trig terms keeps exact zeros from ever appearing.
inline constexpr double kDegenerateRho2 = 1e-24;

/// CSC chain. Undefined (nullopt) where the square root would be imaginary
/// (rho2 below (1 - s*sigma)^2) or the division degenerates (rho2 = 0);
/// domain gaps are data for the scanner, not errors.
[[nodiscard]] inline std::optional<CscIntermediates> csc_intermediates(
    TurnSign s, TurnSign sigma, const Configuration& target) {
    const double sv = sign_of(s);
    const double gv = sign_of(sigma);
    const double c = 1.0 - sv * gv;  // 0 for equal signs, 2 for opposite
    const double xi = sv * target.x + 1.0 - sv * gv * std::sin(target.phi);
    const double eta = target.y + gv * std::cos(target.phi);
    const double rho2 = xi * xi + eta * eta;
    if (rho2 <= kDegenerateRho2 || rho2 < c * c)
        return std::nullopt;
    const double seg = std::sqrt(rho2 - c * c);  // straight-segment length
    const double cos_t1 = (eta * seg + c * xi) / rho2;
    const double sin_t1 = (-xi * seg + c * eta) / rho2;
    const double theta1 = arctan2_paper(sin_t1, cos_t1);
    return CscIntermediates{xi, eta, rho2, cos_t1, sin_t1, theta1, theta1 + seg};
}

/// CCC chain. Undefined where rho2 exceeds 4 (arc cosine domain) or rho2 = 0.
[[nodiscard]] inline std::optional<CccIntermediates> ccc_intermediates(
    TurnSign s, TurnSign mu, const Configuration& target) {
    const double sv = sign_of(s);
    const double mv = sign_of(mu);
    const double xi = (sv * target.x + 1.0 - std::sin(target.phi)) / 2.0;
    const double eta = (target.y + sv * std::cos(target.phi)) / 2.0;
    const double rho2 = xi * xi + eta * eta;
    if (rho2 <= kDegenerateRho2 || rho2 > 4.0)
        return std::nullopt;
    const double cos_gap = 1.0 - 0.5 * rho2;  // cos of the middle-arc length
    const double sin_gap_mag = std::sqrt(std::max(0.0, 1.0 - cos_gap * cos_gap));
    const double cos_t1 = mv * (eta / rho2) * sin_gap_mag + 0.5 * xi;
    const double sin_t1 = -mv * (xi / rho2) * sin_gap_mag + 0.5 * eta;
    const double theta1 = arctan2_paper(sin_t1, cos_t1);
    const double gap = -kPi * (mv - 1.0) + mv * std::acos(std::clamp(cos_gap, -1.0, 1.0));
    return CccIntermediates{xi, eta, rho2, cos_t1, sin_t1, theta1, theta1 + gap};
}

/// Cycle-free CSC residual; roots are candidate interception times.
[[nodiscard]] inline std::optional<double> residual_csc(double t, TurnSign s, TurnSign sigma,
                                                        const TargetTrajectory& target) {
    const Configuration e = target(t);
    const auto im = csc_intermediates(s, sigma, e);
    if (!im)
        return std::nullopt;
    const double sv = sign_of(s);
    const double gv = sign_of(sigma);
    return -t + im->theta2 + real_mod(gv * (e.phi - kHalfPi) - sv * gv * im->theta1, kTwoPi);
}

/// Cycle-free CCC residual.
[[nodiscard]] inline std::optional<double> residual_ccc(double t, TurnSign s, TurnSign mu,
                                                        const TargetTrajectory& target) {
    const Configuration e = target(t);
    const auto im = ccc_intermediates(s, mu, e);
    if (!im)
        return std::nullopt;
    const double sv = sign_of(s);
    return -t + im->theta2 +
           real_mod(sv * (e.phi - kHalfPi) - 2.0 * im->theta1 + im->theta2, kTwoPi);
}

/// Distance of E(t) to the straight-then-full-circle locus (0, t - 2*pi, pi/2).
[[nodiscard]] inline double residual_sc(double t, const TargetTrajectory& target) {
    if (t < kTwoPi)
        throw std::domain_error("residual_sc: defined for t >= 2*pi only");
    return metric(target(t), Configuration{0.0, t - kTwoPi, kHalfPi});
}

namespace detail {

[[nodiscard]] inline Configuration cc_locus(double t, double sgn) {
    return Configuration{(1.0 - std::cos(t)) * sgn, std::sin(t), kHalfPi - t * sgn};
}

/// CC residual together with the turn sign that achieves it. sgn(0) is
/// undefined in the locus formula; both loci are legitimate by symmetry, so
/// at x_E = 0 the smaller residual decides (ties prefer +1).
[[nodiscard]] inline std::pair<double, TurnSign> residual_cc_signed(
    double t, const TargetTrajectory& target) {
    if (t < kTwoPi)
        throw std::domain_error("residual_cc: defined for t >= 2*pi only");
    const Configuration e = target(t);
    if (e.x > 0.0)
        return {metric(e, cc_locus(t, 1.0)), TurnSign::kLeft};
    if (e.x < 0.0)
        return {metric(e, cc_locus(t, -1.0)), TurnSign::kRight};
    const double rp = metric(e, cc_locus(t, 1.0));
    const double rm = metric(e, cc_locus(t, -1.0));
    return rp <= rm ? std::pair{rp, TurnSign::kLeft} : std::pair{rm, TurnSign::kRight};
}

}  // namespace detail

/// Distance of E(t) to the circle-then-full-circle locus.
[[nodiscard]] inline double residual_cc(double t, const TargetTrajectory& target) {
    return detail::residual_cc_signed(t, target).first;
}

// ---------------------------------------------------------------------------
// Minimal-root scanner

/// Settings for the grid scan. The residuals are discontinuous (mod wraps
/// jump by 2*pi) and partially defined, so sign changes larger than
/// jump_guard are treated as wraps and domain gaps are skipped.
struct RootScanOptions {
    double scan_step = 1e-3;
    double root_tol = 1e-9;    // terminal bracket width for refinement
    double value_tol = 1e-6;   // |f| at a grid point that triggers tangency search
    double jump_guard = kPi;
};

namespace detail {

template <class F>
[[nodiscard]] inline std::optional<double> bisect_root(F&& f, double a, double b, double fa,
                                                       double tol) {
    for (int i = 0; i < 200 && (b - a) > tol; ++i) {
        const double m = 0.5 * (a + b);
        const auto vm = f(m);
        if (!vm)
            return std::nullopt;  // domain gap opened inside the bracket
        if (*vm == 0.0)
            return m;
        if ((fa < 0.0) != (*vm < 0.0)) {
            b = m;
        } else {
            a = m;
            fa = *vm;
        }
    }
    return 0.5 * (a + b);
}

template <class F>
[[nodiscard]] inline double golden_min_abs(F&& f, double a, double b, double tol) {
    const auto val = [&](double t) {
        const auto v = f(t);
        return v ? std::abs(*v) : std::numeric_limits<double>::infinity();
    };
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = val(x1);
    double f2 = val(x2);
    for (int i = 0; i < 200 && (b - a) > tol; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = val(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = val(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

}  // namespace detail

/// Scans f on a uniform grid over [t_lo, t_hi] and returns the smallest
/// certified root, or nullopt. Within maximal runs where f is defined, sign
/// changes below the jump guard are refined by bisection, and grid points
/// that are local minima of |f| within value_tol of zero trigger a |f|
/// minimization in the surrounding cells (tangent roots never change sign).
/// Every candidate must pass `certify` before it is accepted; candidates are
/// tried in ascending order, so a rejected candidate just resumes the scan.
template <class F, class Certifier>
[[nodiscard]] std::optional<double> find_min_root(F&& f, double t_lo, double t_hi,
                                                  const RootScanOptions& opt,
                                                  Certifier&& certify) {
    if (!(opt.scan_step > 0.0) || !(opt.root_tol > 0.0))
        throw std::domain_error("find_min_root: steps and tolerances must be positive");
    if (t_lo > t_hi)
        throw std::domain_error("find_min_root: t_lo must not exceed t_hi");

    const double h = opt.scan_step;
    const auto cells = static_cast<std::size_t>(std::floor((t_hi - t_lo) / h));
    std::vector<double> ts;
    ts.reserve(cells + 2);
    for (std::size_t k = 0; k <= cells; ++k)
        ts.push_back(t_lo + static_cast<double>(k) * h);
    if (ts.back() < t_hi - 1e-12 * std::max(1.0, std::abs(t_hi)))
        ts.push_back(t_hi);

    std::vector<std::optional<double>> vs(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k)
        vs[k] = f(ts[k]);

    const auto abs_at = [&](std::size_t k) {
        return vs[k] ? std::abs(*vs[k]) : std::numeric_limits<double>::infinity();
    };

    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (k > 0 && vs[k - 1] && vs[k] && *vs[k - 1] * *vs[k] < 0.0 &&
            std::abs(*vs[k] - *vs[k - 1]) < opt.jump_guard) {
            const auto root =
                detail::bisect_root(f, ts[k - 1], ts[k], *vs[k - 1], opt.root_tol);
            if (root && certify(*root))
                return root;
        }
        if (vs[k] && std::abs(*vs[k]) <= opt.value_tol) {
            const bool left_ok = k == 0 || abs_at(k - 1) > abs_at(k);
            const bool right_ok = k + 1 == ts.size() || abs_at(k + 1) >= abs_at(k);
            if (left_ok && right_ok) {
                const double a = std::max(t_lo, ts[k] - h);
                const double b = std::min(t_hi, ts[k] + h);
                const double root =
                    (b > a) ? detail::golden_min_abs(f, a, b, opt.root_tol) : ts[k];
                if (certify(root))
                    return root;
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Solver

struct SolverSettings {
    double scan_step = 1e-3;
    double root_tol = 1e-9;
    double value_tol = 1e-6;
    double jump_guard = kPi;
    /// Certification bound on metric(endpoint(schedule, T), E(T)).
    double intercept_tol = 1e-6;
    /// The SC/CC residuals are metric-valued and touch zero without a sign
    /// change; their tangency trigger must scale with the grid step times the
    /// worst expected slope, or roots would hide between grid points.
    double metric_trigger_slope = 8.0;
};

inline constexpr double kDefaultHorizon = 8.0 * kPi;

struct CandidateResult {
    FamilyId family;
    std::optional<double> time;  // minimal certified root, or nullopt
    std::optional<ControlSchedule> schedule;
    double residual = std::numeric_limits<double>::quiet_NaN();

    [[nodiscard]] bool feasible() const { return time.has_value(); }
};

struct SolverResult {
    std::optional<double> t_star;
    std::optional<FamilyId> winner;
    std::optional<ControlSchedule> schedule;
    std::vector<CandidateResult> candidates;
    bool started_at_target = false;  // T = 0 short-circuit

    [[nodiscard]] bool feasible() const { return t_star.has_value(); }
};

namespace detail {

/// Residual of one family as a partial function of t (SC/CC are total on
/// their domain; the scanner never calls below 2*pi for them).
[[nodiscard]] inline std::optional<double> family_residual(const FamilyId& fam, double t,
                                                           const TargetTrajectory& target) {
    switch (fam.kind) {
        case FamilyKind::kCsc: return residual_csc(t, fam.s, fam.second, target);
        case FamilyKind::kCcc: return residual_ccc(t, fam.s, fam.second, target);
        case FamilyKind::kSc: return residual_sc(t, target);
        case FamilyKind::kCc: return residual_cc(t, target);
    }
    return std::nullopt;
}

/// Schedule recovery that reports failure instead of throwing; used inside
/// certification where near-boundary roots legitimately fail.
[[nodiscard]] inline std::optional<ControlSchedule> try_recover(const FamilyId& fam, double t,
                                                                const TargetTrajectory& target) {
    // theta2 can exceed t by rounding when the terminal arc vanishes
    const auto clamp_tau2 = [t](double tau2) -> std::optional<double> {
        if (tau2 <= t)
            return tau2;
        if (tau2 - t < 1e-6)
            return t;
        return std::nullopt;
    };
    switch (fam.kind) {
        case FamilyKind::kCsc: {
            const auto im = csc_intermediates(fam.s, fam.second, target(t));
            if (!im)
                return std::nullopt;
            const auto tau2 = clamp_tau2(im->theta2);
            if (!tau2 || im->theta1 > *tau2 || im->theta1 >= kTwoPi)
                return std::nullopt;
            return make_csc(fam.s, fam.second, im->theta1, *tau2);
        }
        case FamilyKind::kCcc: {
            const auto im = ccc_intermediates(fam.s, fam.second, target(t));
            if (!im)
                return std::nullopt;
            const auto tau2 = clamp_tau2(im->theta2);
            if (!tau2 || im->theta1 > *tau2 || im->theta1 >= kTwoPi)
                return std::nullopt;
            if (!(*tau2 - im->theta1 < kTwoPi))
                return std::nullopt;
            return make_ccc(fam.s, im->theta1, *tau2);
        }
        case FamilyKind::kSc: {
            if (t < kTwoPi)
                return std::nullopt;
            // the last-arc parameters are arbitrary here; fixed for determinism
            return make_csc(TurnSign::kLeft, TurnSign::kLeft, 0.0, t - kTwoPi);
        }
        case FamilyKind::kCc: {
            if (t < kTwoPi || !(t - kTwoPi < kTwoPi))
                return std::nullopt;
            return make_ccc(residual_cc_signed(t, target).second, 0.0, t - kTwoPi);
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Switch-time recovery at a certified root of the family's residual.
[[nodiscard]] inline ControlSchedule recover_schedule(const FamilyId& fam, double t,
                                                      const TargetTrajectory& target) {
    auto sched = detail::try_recover(fam, t, target);
    if (!sched)
        throw std::logic_error("recover_schedule: residual chain undefined at " +
                               family_label(fam) + " root");
    return *sched;
}

namespace detail {

[[nodiscard]] inline CandidateResult search_family(const FamilyId& fam,
                                                   const TargetTrajectory& target,
                                                   double horizon,
                                                   const SolverSettings& settings) {
    CandidateResult out{fam, std::nullopt, std::nullopt,
                        std::numeric_limits<double>::quiet_NaN()};
    const bool cycled = fam.kind == FamilyKind::kSc || fam.kind == FamilyKind::kCc;
    const double lo = cycled ? kTwoPi : 0.0;
    // a CC winner needs a middle arc below 2*pi, which bounds its time by 4*pi
    const double hi = fam.kind == FamilyKind::kCc ? std::min(horizon, 2.0 * kTwoPi) : horizon;
    if (lo > hi)
        return out;

    RootScanOptions opt{settings.scan_step, settings.root_tol, settings.value_tol,
                        settings.jump_guard};
    if (cycled)
        opt.value_tol = std::max(settings.value_tol,
                                 settings.metric_trigger_slope * settings.scan_step);

    const auto f = [&](double t) { return family_residual(fam, t, target); };
    const auto certify = [&](double t) {
        const auto sched = try_recover(fam, t, target);
        return sched && metric(endpoint(*sched, t), target(t)) <= settings.intercept_tol;
    };
    const auto root = find_min_root(f, lo, hi, opt, certify);
    if (!root)
        return out;
    out.time = *root;
    out.schedule = try_recover(fam, *root, target);
    if (const auto v = f(*root))
        out.residual = *v;
    return out;
}

}  // namespace detail

/// Runs the ten family searches and picks the smallest certified interception
/// time; ties go to the earlier family in kAllFamilies order. Starting on the
/// target short-circuits to T = 0 (the residual chains are undefined there).
[[nodiscard]] inline SolverResult solve(const TargetTrajectory& target, double horizon,
                                        const SolverSettings& settings = {}) {
    if (!(horizon > 0.0))
        throw std::domain_error("solve: horizon must be positive");

    SolverResult result;
    if (metric(target(0.0), kStartConfiguration) <= settings.intercept_tol) {
        result.t_star = 0.0;
        result.winner = kAllFamilies[0];
        result.schedule = make_csc(TurnSign::kLeft, TurnSign::kLeft, 0.0, 0.0);
        result.started_at_target = true;
        return result;
    }

    result.candidates.reserve(kAllFamilies.size());
    for (const auto& fam : kAllFamilies) {
        auto cand = detail::search_family(fam, target, horizon, settings);
        if (cand.feasible() && (!result.t_star || *cand.time < *result.t_star)) {
            result.t_star = cand.time;
            result.winner = fam;
            result.schedule = cand.schedule;
        }
        result.candidates.push_back(std::move(cand));
    }
    return result;
}

}  // namespace dubint
