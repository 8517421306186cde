#pragma once

// Command-line front end: scenario ingestion, solving, residual and trace
// export, oracle verification and SVG rendering. Kept header-level so the
// command surface (output text and exit codes) is testable in-process.

#include "dubint/oracle.hpp"
#include "dubint/reporting.hpp"
#include "dubint/scenario.hpp"
#include "dubint/solver.hpp"
#include "dubint/svg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace dubint {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitOracleMismatch = 3;

namespace detail {

struct CliFlags {
    std::string scenario_path;
    double horizon = 0.0;    // > 0 overrides the scenario
    double scan_step = 0.0;  // > 0 overrides
    double tol = 0.0;        // > 0 overrides the interception tolerance
    double grid = 0.01;      // residual CSV grid step
    std::size_t samples = 200;
    std::size_t markers = 8;
    double oracle_step = 0.02;
    std::string out_path;
    bool debug_corrupt = false;
};

inline void add_common_flags(CLI::App* cmd, CliFlags& f) {
    cmd->add_option("scenario", f.scenario_path, "Scenario JSON file")->required();
    cmd->add_option("--horizon", f.horizon, "Override the search horizon (time units)");
    cmd->add_option("--scan-step", f.scan_step, "Override the residual scan step");
    cmd->add_option("--tol", f.tol, "Override the interception tolerance");
}

inline Scenario load_with_overrides(const CliFlags& f) {
    Scenario s = load_scenario(f.scenario_path);
    if (f.horizon > 0.0)
        s.horizon = f.horizon;
    if (f.scan_step > 0.0)
        s.solver.scan_step = f.scan_step;
    if (f.tol > 0.0)
        s.solver.intercept_tol = f.tol;
    return s;
}

}  // namespace detail

/// Dispatches one CLI invocation. Exit codes: 0 success/feasible, 1 input or
/// I/O error, 2 infeasible within the horizon, 3 oracle disagreement.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimum-time lateral interception of a moving target by a Dubins car"};
    app.require_subcommand(1);

    detail::CliFlags flags;
    auto* cmd_solve = app.add_subcommand("solve", "Solve a scenario and print the report");
    detail::add_common_flags(cmd_solve, flags);

    auto* cmd_residuals =
        app.add_subcommand("residuals", "Emit the ten residual curves as CSV on stdout");
    detail::add_common_flags(cmd_residuals, flags);
    cmd_residuals->add_option("--grid", flags.grid, "Grid step for the residual curves");

    auto* cmd_trace =
        app.add_subcommand("trace", "Emit the optimal trajectory and target as CSV on stdout");
    detail::add_common_flags(cmd_trace, flags);
    cmd_trace->add_option("--samples", flags.samples, "Number of trace rows");

    auto* cmd_verify =
        app.add_subcommand("verify", "Solve, then cross-check against the brute-force oracle");
    detail::add_common_flags(cmd_verify, flags);
    cmd_verify->add_option("--oracle-step", flags.oracle_step, "Oracle grid step");
    cmd_verify->add_flag("--debug-corrupt", flags.debug_corrupt, "Corrupt the schedule first")
        ->group("");  // hidden; exercises the mismatch exit path

    auto* cmd_svg = app.add_subcommand("svg", "Render the solved scenario as an SVG file");
    detail::add_common_flags(cmd_svg, flags);
    cmd_svg->add_option("output", flags.out_path, "Output SVG path")->required();
    cmd_svg->add_option("--markers", flags.markers, "Number of heading markers per path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        const Scenario scenario = detail::load_with_overrides(flags);

        if (cmd_residuals->parsed()) {
            if (!(flags.grid > 0.0)) {
                err << "error: --grid must be positive\n";
                return kExitInputError;
            }
            write_residuals_csv(out, scenario.target, 0.0, scenario.horizon, flags.grid);
            return kExitOk;
        }

        SolverResult result = solve(scenario.target, scenario.horizon, scenario.solver);

        if (cmd_solve->parsed()) {
            write_solve_report(out, scenario.target, result, scenario.horizon);
            return result.feasible() ? kExitOk : kExitInfeasible;
        }
        if (!result.feasible()) {
            err << "infeasible within horizon " << format_value(scenario.horizon) << "\n";
            return kExitInfeasible;
        }

        if (cmd_trace->parsed()) {
            write_trace_csv(out, scenario.target, result, flags.samples);
            return kExitOk;
        }
        if (cmd_verify->parsed()) {
            if (flags.debug_corrupt)
                result.schedule->tau2 += 0.1;
            OracleSettings oracle;
            oracle.tau_step = flags.oracle_step;
            oracle.t_step = flags.oracle_step;
            oracle.horizon = scenario.horizon;
            const VerificationReport report = verify_solution(scenario.target, result, oracle);
            out << "solver T* = " << format_value(*result.t_star) << "\n"
                << "closed-form endpoint error = " << format_value(report.closed_form_error)
                << (report.endpoint_ok ? " (ok)\n" : " (MISMATCH)\n")
                << "ode endpoint error = " << format_value(report.ode_error)
                << (report.ode_ok ? " (ok)\n" : " (MISMATCH)\n")
                << "oracle T = "
                << (report.oracle_time ? format_value(*report.oracle_time) : "none")
                << (report.oracle_agrees ? " (agrees)\n" : " (DISAGREES)\n")
                << "earlier oracle feasibility: "
                << (report.no_earlier_feasibility ? "none\n" : "FOUND\n")
                << "verdict: " << (report.passed() ? "PASS" : "FAIL") << "\n";
            return report.passed() ? kExitOk : kExitOracleMismatch;
        }
        if (cmd_svg->parsed()) {
            std::ofstream file(flags.out_path);
            if (!file) {
                err << "error: cannot write " << flags.out_path << "\n";
                return kExitInputError;
            }
            render_svg(file, scenario.target, result, flags.markers);
            if (!file.good()) {
                err << "error: write failed for " << flags.out_path << "\n";
                return kExitInputError;
            }
            return kExitOk;
        }
    } catch (const ScenarioError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace dubint
