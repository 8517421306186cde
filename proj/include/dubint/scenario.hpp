#pragma once

// Scenario files: JSON with a target.kind discriminator, optional horizon and
// solver overrides, plus CSV track ingestion for sampled targets. Angles are
// radians; lengths are in minimum-turn-radius units.

#include "dubint/geometry.hpp"
#include "dubint/solver.hpp"
#include "dubint/targets.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dubint {

class ScenarioError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Scenario {
    TargetTrajectory target;
    double horizon = kDefaultHorizon;
    SolverSettings solver;
    std::string description;
};

namespace detail {

inline std::size_t line_of_offset(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n')
            ++line;
    return line;
}

inline double require_number(const nlohmann::json& j, const char* key, const char* where) {
    if (!j.contains(key) || !j[key].is_number())
        throw ScenarioError(std::string(where) + ": missing numeric field '" + key + "'");
    return j[key].get<double>();
}

inline double number_or(const nlohmann::json& j, const char* key, double fallback) {
    if (!j.contains(key))
        return fallback;
    if (!j[key].is_number())
        throw ScenarioError(std::string("field '") + key + "' must be a number");
    return j[key].get<double>();
}

inline Configuration parse_configuration(const nlohmann::json& j, const char* where) {
    return {require_number(j, "x", where), require_number(j, "y", where),
            require_number(j, "phi", where)};
}

}  // namespace detail

/// Loads a CSV track with the exact header `t,x,y,phi` and strictly
/// increasing times; values are radians and turn-radius units.
[[nodiscard]] inline TargetTrajectory load_track_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ScenarioError("track file not readable: " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw ScenarioError("track file empty: " + path.string());
    // tolerate trailing whitespace/CR on the header only
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
        line.pop_back();
    if (line != "t,x,y,phi")
        throw ScenarioError(path.string() + ":1: track header must be exactly 't,x,y,phi'");

    std::vector<std::pair<double, Configuration>> samples;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r")
            continue;
        std::istringstream row(line);
        std::string cell;
        double vals[4];
        for (int i = 0; i < 4; ++i) {
            if (!std::getline(row, cell, ','))
                throw ScenarioError(path.string() + ":" + std::to_string(lineno) +
                                    ": expected 4 comma-separated values");
            try {
                vals[i] = std::stod(cell);
            } catch (const std::exception&) {
                throw ScenarioError(path.string() + ":" + std::to_string(lineno) +
                                    ": not a number: '" + cell + "'");
            }
        }
        if (!samples.empty() && !(samples.back().first < vals[0]))
            throw ScenarioError(path.string() + ":" + std::to_string(lineno) +
                                ": times must be strictly increasing");
        samples.emplace_back(vals[0], Configuration{vals[1], vals[2], vals[3]});
    }
    if (samples.size() < 2)
        throw ScenarioError(path.string() + ": track needs at least two samples");
    return sampled_target(std::move(samples));
}

namespace detail {

[[nodiscard]] inline WindField parse_wind(const nlohmann::json& spec) {
    if (!spec.contains("goal"))
        throw ScenarioError("wind target: missing 'goal'");
    const Configuration goal = parse_configuration(spec["goal"], "wind goal");
    if (!spec.contains("wind") || !spec["wind"].is_object())
        throw ScenarioError("wind target: missing 'wind' object");
    const auto& w = spec["wind"];
    const std::string kind = w.value("kind", "");
    if (kind == "constant") {
        const double wx = require_number(w, "wx", "constant wind");
        const double wy = require_number(w, "wy", "constant wind");
        return WindField{[wx, wy](double) { return std::array<double, 2>{wx, wy}; }, goal,
                         std::hypot(wx, wy)};
    }
    if (kind == "sinusoid") {
        // per-axis w_i(t) = offset_i + amp_i * sin(omega_i * t + phase_i)
        const auto axis = [&](const char* amp, const char* omega, const char* phase,
                              const char* offset) {
            return std::array<double, 4>{number_or(w, amp, 0.0), number_or(w, omega, 1.0),
                                         number_or(w, phase, 0.0), number_or(w, offset, 0.0)};
        };
        const auto ax = axis("wx_amp", "wx_omega", "wx_phase", "wx_offset");
        const auto ay = axis("wy_amp", "wy_omega", "wy_phase", "wy_offset");
        const double bound = std::hypot(std::abs(ax[0]) + std::abs(ax[3]),
                                        std::abs(ay[0]) + std::abs(ay[3]));
        return WindField{[ax, ay](double t) {
                             return std::array<double, 2>{
                                 ax[3] + ax[0] * std::sin(ax[1] * t + ax[2]),
                                 ay[3] + ay[0] * std::sin(ay[1] * t + ay[2])};
                         },
                         goal, bound};
    }
    throw ScenarioError("wind target: unknown wind kind '" + kind + "'");
}

}  // namespace detail

/// Builds the target trajectory from the scenario's `target` object.
/// Relative track paths resolve against base_dir.
[[nodiscard]] inline TargetTrajectory parse_target(const nlohmann::json& spec,
                                                   const std::filesystem::path& base_dir) {
    if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string())
        throw ScenarioError("target: missing string field 'kind'");
    const std::string kind = spec["kind"].get<std::string>();
    if (kind == "static")
        return static_target(detail::parse_configuration(spec, "static target"));
    if (kind == "rotating_point")
        return rotating_point(detail::require_number(spec, "x", "rotating_point"),
                              detail::require_number(spec, "y", "rotating_point"),
                              detail::require_number(spec, "alpha", "rotating_point"));
    if (kind == "linear")
        return linear_uniform(detail::parse_configuration(spec, "linear target"),
                              detail::require_number(spec, "vx", "linear target"),
                              detail::require_number(spec, "vy", "linear target"));
    if (kind == "circular")
        return circular_target(detail::require_number(spec, "cx", "circular target"),
                               detail::require_number(spec, "cy", "circular target"),
                               detail::require_number(spec, "r", "circular target"),
                               detail::require_number(spec, "omega", "circular target"),
                               detail::number_or(spec, "phase", 0.0),
                               detail::number_or(spec, "heading_offset", 0.0));
    if (kind == "wind")
        return wind_goal_target(detail::parse_wind(spec));
    if (kind == "track") {
        if (!spec.contains("path") || !spec["path"].is_string())
            throw ScenarioError("track target: missing string field 'path'");
        std::filesystem::path p = spec["path"].get<std::string>();
        if (p.is_relative())
            p = base_dir / p;
        return load_track_csv(p);
    }
    throw ScenarioError("target: unknown kind '" + kind + "'");
}

[[nodiscard]] inline Scenario parse_scenario(const std::string& text,
                                             const std::filesystem::path& base_dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioError("line " + std::to_string(detail::line_of_offset(text, e.byte)) +
                            ": " + e.what());
    }
    if (!j.is_object() || !j.contains("target"))
        throw ScenarioError("scenario: missing 'target' object");

    Scenario s{parse_target(j["target"], base_dir), kDefaultHorizon, SolverSettings{},
               j.value("description", "")};
    s.horizon = detail::number_or(j, "horizon", kDefaultHorizon);
    if (!(s.horizon > 0.0))
        throw ScenarioError("scenario: horizon must be positive");
    if (j.contains("solver")) {
        const auto& sv = j["solver"];
        if (!sv.is_object())
            throw ScenarioError("scenario: 'solver' must be an object");
        s.solver.scan_step = detail::number_or(sv, "scan_step", s.solver.scan_step);
        s.solver.root_tol = detail::number_or(sv, "root_tol", s.solver.root_tol);
        s.solver.value_tol = detail::number_or(sv, "value_tol", s.solver.value_tol);
        s.solver.jump_guard = detail::number_or(sv, "jump_guard", s.solver.jump_guard);
        s.solver.intercept_tol = detail::number_or(sv, "intercept_tol", s.solver.intercept_tol);
        s.solver.metric_trigger_slope =
            detail::number_or(sv, "metric_trigger_slope", s.solver.metric_trigger_slope);
    }
    return s;
}

[[nodiscard]] inline Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ScenarioError("scenario file not readable: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str(), path.parent_path());
    } catch (const ScenarioError& e) {
        throw ScenarioError(path.string() + ": " + e.what());
    }
}

}  // namespace dubint
