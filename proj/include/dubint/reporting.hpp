#pragma once

// Text output: the solve report, residual-curve CSV and trajectory-trace CSV.
// CSV values are printed with 9 significant digits and a literal lowercase
// `nan` for undefined residuals, so identical inputs give byte-identical
// output.

#include "dubint/geometry.hpp"
#include "dubint/motion.hpp"
#include "dubint/solver.hpp"
#include "dubint/targets.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

namespace dubint {

/// 9-significant-digit fixed formatting shared by all CSV emitters.
[[nodiscard]] inline std::string format_value(double v) {
    if (std::isnan(v))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

/// Residual of one family at time t for CSV purposes: out-of-domain SC/CC
/// times and undefined chain values both render as nan.
[[nodiscard]] inline std::optional<double> residual_for_csv(const FamilyId& fam, double t,
                                                            const TargetTrajectory& target) {
    if ((fam.kind == FamilyKind::kSc || fam.kind == FamilyKind::kCc) && t < kTwoPi)
        return std::nullopt;
    return detail::family_residual(fam, t, target);
}

/// CSV `t,family,F` over a uniform grid, one row per grid point per family.
inline void write_residuals_csv(std::ostream& out, const TargetTrajectory& target, double t_lo,
                                double t_hi, double grid_step) {
    out << "t,family,F\n";
    for (double t = t_lo; t <= t_hi + 1e-12; t += grid_step) {
        for (const auto& fam : kAllFamilies) {
            const auto v = residual_for_csv(fam, t, target);
            out << format_value(t) << ',' << family_label(fam) << ','
                << (v ? format_value(*v) : "nan") << '\n';
        }
    }
}

/// CSV `t,x,y,phi,u,xe,ye,phie`: the optimal trajectory against the target,
/// n rows uniform on [0, T*].
inline void write_trace_csv(std::ostream& out, const TargetTrajectory& target,
                            const SolverResult& result, std::size_t n) {
    out << "t,x,y,phi,u,xe,ye,phie\n";
    const auto samples = sample_trajectory(*result.schedule, *result.t_star, std::max<std::size_t>(n, 2));
    for (const auto& s : samples) {
        const Configuration e = target(s.t);
        out << format_value(s.t) << ',' << format_value(s.config.x) << ','
            << format_value(s.config.y) << ',' << format_value(s.config.phi) << ','
            << format_value(s.u) << ',' << format_value(e.x) << ',' << format_value(e.y) << ','
            << format_value(e.phi) << '\n';
    }
}

/// Human-readable solve report; the first line is stable for scripting.
inline void write_solve_report(std::ostream& out, const TargetTrajectory& target,
                               const SolverResult& result, double horizon) {
    char line[256];
    if (result.feasible()) {
        const auto& sched = *result.schedule;
        std::snprintf(line, sizeof line, "T* = %.6f, family %s, tau1=%.6f, tau2=%.6f\n",
                      *result.t_star, family_human(*result.winner).c_str(), sched.tau1,
                      sched.tau2);
        out << line;
        std::snprintf(line, sizeof line, "signs: s=%+d%s\n",
                      static_cast<int>(sched.s),
                      sched.family == TrajectoryFamily::kCsc
                          ? (std::string(", sigma=") + (sched.sigma == TurnSign::kLeft ? "+1" : "-1")).c_str()
                          : "");
        out << line;
        const Configuration e = endpoint(sched, *result.t_star);
        std::snprintf(line, sizeof line, "interception: x=%.9g y=%.9g phi=%.9g\n", e.x, e.y,
                      e.phi);
        out << line;
        if (result.started_at_target)
            out << "note: target coincides with the start configuration\n";
    } else {
        std::snprintf(line, sizeof line, "infeasible within horizon %.6f\n", horizon);
        out << line;
    }
    if (!result.candidates.empty()) {
        out << "candidates:\n";
        for (const auto& cand : result.candidates) {
            if (cand.feasible())
                std::snprintf(line, sizeof line, "  %-5s T=%.9g residual=%.3g\n",
                              family_label(cand.family).c_str(), *cand.time, cand.residual);
            else
                std::snprintf(line, sizeof line, "  %-5s none\n",
                              family_label(cand.family).c_str());
            out << line;
        }
    }
}

}  // namespace dubint
