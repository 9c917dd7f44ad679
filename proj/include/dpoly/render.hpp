#pragma once

// SVG figures: the polygon outline with one planar view of each curve,
// top-face segments solid and bottom-face segments dashed. Output is
// deterministic: fixed viewport, fixed palette, fixed number formatting,
// curves drawn in input order.

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpoly/geodesic.hpp"

namespace dpoly {

struct RenderOptions {
    bool junction_dots = false;
    int pixel_size = 640;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

inline const char* palette(size_t i) {
    static const char* colors[] = {"#c62828", "#1565c0", "#2e7d32",
                                   "#6a1b9a", "#ef6c00", "#00838f"};
    return colors[i % 6];
}

}  // namespace detail

inline std::string render_svg(const PolygonSpec& spec, const std::vector<ClosedGeodesic>& curves,
                              const RenderOptions& options = {}) {
    using detail::fmt;
    for (const ClosedGeodesic& g : curves)
        if (g.spec.n != spec.n || g.spec.circumradius != spec.circumradius)
            throw std::invalid_argument("render_svg: curves use mixed polygon specs");

    const double R = spec.circumradius;
    const double pad = 1.15 * R;
    const double stroke = 0.012 * R;
    const double dash = 0.05 * R;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(-pad) + " " + fmt(-pad) +
           " " + fmt(2 * pad) + " " + fmt(2 * pad) + "\" width=\"" +
           std::to_string(options.pixel_size) + "\" height=\"" +
           std::to_string(options.pixel_size) + "\">\n";

    // Polygon outline (y negated: SVG's y axis points down).
    svg += "  <polygon points=\"";
    for (int j = 0; j < spec.n; ++j) {
        if (j) svg += " ";
        svg += fmt(spec.vertices[j].x) + "," + fmt(-spec.vertices[j].y);
    }
    svg += "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" + fmt(stroke) + "\"/>\n";

    for (size_t i = 0; i < curves.size(); ++i) {
        const ClosedGeodesic& g = curves[i];
        const std::string color = detail::palette(i);
        for (const Segment& s : g.segments) {
            svg += "  <line x1=\"" + fmt(s.start.x) + "\" y1=\"" + fmt(-s.start.y) + "\" x2=\"" +
                   fmt(s.end.x) + "\" y2=\"" + fmt(-s.end.y) + "\" stroke=\"" + color +
                   "\" stroke-width=\"" + fmt(stroke) + "\"";
            if (s.face == Face::Bottom)
                svg += " stroke-dasharray=\"" + fmt(dash) + " " + fmt(dash) + "\"";
            svg += "/>\n";
        }
        if (options.junction_dots) {
            for (int j = 0; j < g.period(); ++j) {
                const Vec2& p = g.junction(j);
                svg += "  <circle cx=\"" + fmt(p.x) + "\" cy=\"" + fmt(-p.y) + "\" r=\"" +
                       fmt(2 * stroke) + "\" fill=\"#000000\"/>\n";
            }
        }
    }
    svg += "</svg>\n";
    return svg;
}

inline std::string render_svg(const std::vector<ClosedGeodesic>& curves,
                              const RenderOptions& options = {}) {
    if (curves.empty()) throw std::invalid_argument("render_svg needs a polygon to draw");
    return render_svg(curves.front().spec, curves, options);
}

}  // namespace dpoly
