#pragma once

// Self-contained SVG rendering of a solved interception: solid car path,
// dashed target path, heading triangles (light for the target, filled for the
// car) and dotted unit-circle guides at the initial turn circles.

#include "dubint/geometry.hpp"
#include "dubint/motion.hpp"
#include "dubint/solver.hpp"
#include "dubint/targets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace dubint {

namespace detail {

struct SvgMapper {
    double min_x, min_y, max_x, max_y;

    void include(double x, double y) {
        min_x = std::min(min_x, x);
        min_y = std::min(min_y, y);
        max_x = std::max(max_x, x);
        max_y = std::max(max_y, y);
    }

    // model y grows upward, SVG y grows downward
    [[nodiscard]] double sx(double x) const { return x - min_x; }
    [[nodiscard]] double sy(double y) const { return max_y - y; }
};

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline void emit_polyline(std::ostream& out, const SvgMapper& m,
                          const std::vector<Configuration>& pts, const char* style) {
    out << "<path fill=\"none\" " << style << " d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
        out << (i == 0 ? "M" : " L") << svg_num(m.sx(pts[i].x)) << ' '
            << svg_num(m.sy(pts[i].y));
    out << "\"/>\n";
}

inline void emit_triangle(std::ostream& out, const SvgMapper& m, const Configuration& c,
                          bool filled) {
    constexpr double kSize = 0.22;
    const double ca = std::cos(c.phi);
    const double sa = std::sin(c.phi);
    const auto corner = [&](double fwd, double side) {
        const double x = c.x + fwd * ca - side * sa;
        const double y = c.y + fwd * sa + side * ca;
        return svg_num(m.sx(x)) + "," + svg_num(m.sy(y));
    };
    out << "<polygon points=\"" << corner(1.6 * kSize, 0.0) << ' ' << corner(-kSize, kSize)
        << ' ' << corner(-kSize, -kSize) << "\" "
        << (filled ? "fill=\"black\"" : "fill=\"white\" stroke=\"black\" stroke-width=\"0.03\"")
        << "/>\n";
}

}  // namespace detail

/// Renders the planar picture of a feasible result. marker_count triangles
/// are placed uniformly in time on each path, final markers included, so the
/// last pair coincides at the interception point.
inline void render_svg(std::ostream& out, const TargetTrajectory& target,
                       const SolverResult& result, std::size_t marker_count = 8) {
    if (!result.feasible() || !result.schedule)
        throw std::logic_error("render_svg: result must be feasible");
    const double t_end = *result.t_star;
    const auto path = sample_trajectory(*result.schedule, t_end, 256);

    std::vector<Configuration> car;
    car.reserve(path.size());
    for (const auto& s : path)
        car.push_back(s.config);
    std::vector<Configuration> tgt;
    tgt.reserve(256);
    for (std::size_t i = 0; i < 256; ++i)
        tgt.push_back(target(t_end * static_cast<double>(i) / 255.0));

    detail::SvgMapper m{car[0].x, car[0].y, car[0].x, car[0].y};
    for (const auto& c : car)
        m.include(c.x, c.y);
    for (const auto& c : tgt)
        m.include(c.x, c.y);
    m.include(-2.0, -1.0);  // initial turn circles
    m.include(2.0, 1.0);
    const double margin = 1.0;
    m.min_x -= margin;
    m.min_y -= margin;
    m.max_x += margin;
    m.max_y += margin;

    const double w = m.max_x - m.min_x;
    const double h = m.max_y - m.min_y;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" "
        << "viewBox=\"0 0 " << detail::svg_num(w) << ' ' << detail::svg_num(h) << "\">\n";

    // dotted unit circles around the initial left/right turn centers
    for (const double cx : {-1.0, 1.0})
        out << "<circle cx=\"" << detail::svg_num(m.sx(cx)) << "\" cy=\""
            << detail::svg_num(m.sy(0.0))
            << "\" r=\"1\" fill=\"none\" stroke=\"gray\" stroke-width=\"0.02\" "
            << "stroke-dasharray=\"0.05,0.1\"/>\n";

    detail::emit_polyline(out, m, car, "stroke=\"black\" stroke-width=\"0.05\"");
    detail::emit_polyline(out, m, tgt,
                          "stroke=\"black\" stroke-width=\"0.04\" stroke-dasharray=\"0.3,0.2\"");

    marker_count = std::max<std::size_t>(marker_count, 2);
    for (std::size_t i = 0; i < marker_count; ++i) {
        const double t = t_end * static_cast<double>(i) / static_cast<double>(marker_count - 1);
        detail::emit_triangle(out, m, target(t), /*filled=*/false);
        detail::emit_triangle(out, m, config_at(*result.schedule, t), /*filled=*/true);
    }
    out << "</svg>\n";
}

}  // namespace dubint
