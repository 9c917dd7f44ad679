#pragma once

// Intrinsic distance on the doubled polygon X_n.
//
// Two copies of the polygon ("top" and "bottom" faces) are glued along their
// boundary. Same-face distance is the Euclidean chord (the faces are convex).
// Opposite-face distance is the minimum over all boundary points z of
// |p - z| + |z - q|. Per edge that objective is convex in z, so the exact
// minimum is either the reflection point (unfold q across the edge line and
// intersect), or one of the edge endpoints. No iterative solver is needed.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "dpoly/geometry.hpp"

namespace dpoly {

enum class Face : std::uint8_t { Top = 0, Bottom = 1 };

inline Face opposite(Face f) { return f == Face::Top ? Face::Bottom : Face::Top; }
inline const char* face_name(Face f) { return f == Face::Top ? "top" : "bottom"; }

/// A point of X_n: face tag plus planar coordinates inside (or on) the
/// polygon. Boundary points are identified across faces, so their tag is
/// not significant.
struct SurfacePoint {
    Face face = Face::Top;
    Vec2 position;

    SurfacePoint() = default;
    SurfacePoint(Face f, Vec2 p) : face(f), position(p) {}
    SurfacePoint(Face f, double x, double y) : face(f), position{x, y} {}
};

/// The minimizing boundary point of an opposite-face connection.
struct CrossingWitness {
    int edge_index = -1;
    Vec2 crossing_point;
    double total_length = 0.0;
};

namespace detail {

inline void require_inside(const PolygonSpec& spec, const SurfacePoint& p) {
    if (!classify_point(spec, p.position).is_inside())
        throw std::invalid_argument("surface point lies outside the polygon");
}

// Strict weak order used to canonicalize argument order; this makes
// distance(p, q) and distance(q, p) bit-identical.
inline bool surface_point_less(const SurfacePoint& a, const SurfacePoint& b) {
    if (a.face != b.face) return static_cast<int>(a.face) < static_cast<int>(b.face);
    if (a.position.x != b.position.x) return a.position.x < b.position.x;
    return a.position.y < b.position.y;
}

// Best single crossing through edge j: length and crossing point.
inline CrossingWitness edge_crossing(const PolygonSpec& spec, const Vec2& p, const Vec2& q,
                                     int j) {
    CrossingWitness w;
    w.edge_index = j;

    const Vec2 refl = reflect_across_edge(spec, j, q);
    const Vec2 nrm = spec.edge_outward_normal(j);
    const double denom = nrm.dot(refl - p);
    if (denom > 0.0) {
        const double s = (spec.apothem - nrm.dot(p)) / denom;
        const Vec2 x = p + (refl - p) * s;
        const double u = spec.edge_offset(x, j);
        if (u >= 0.0 && u <= 1.0) {
            w.crossing_point = x;
            w.total_length = distance(p, x) + distance(x, q);
            return w;
        }
    }
    const Vec2 a = spec.edge_start(j);
    const Vec2 b = spec.edge_end(j);
    const double via_a = distance(p, a) + distance(a, q);
    const double via_b = distance(p, b) + distance(b, q);
    if (via_a <= via_b) {
        w.crossing_point = a;
        w.total_length = via_a;
    } else {
        w.crossing_point = b;
        w.total_length = via_b;
    }
    return w;
}

// Near-ties between edges are resolved toward the lower edge index, so that
// symmetric configurations report deterministically.
inline constexpr double kTieBreak = 1e-12;

inline CrossingWitness best_crossing(const PolygonSpec& spec, const Vec2& p, const Vec2& q) {
    CrossingWitness best;
    for (int j = 0; j < spec.n; ++j) {
        CrossingWitness w = edge_crossing(spec, p, q, j);
        if (best.edge_index < 0 ||
            w.total_length < best.total_length - kTieBreak * spec.circumradius)
            best = w;
    }
    return best;
}

}  // namespace detail

/// Intrinsic distance between two points of X_n.
inline double distance(const PolygonSpec& spec, const SurfacePoint& p, const SurfacePoint& q) {
    detail::require_inside(spec, p);
    detail::require_inside(spec, q);
    const bool swap = detail::surface_point_less(q, p);
    const SurfacePoint& a = swap ? q : p;
    const SurfacePoint& b = swap ? p : q;

    if (a.face == b.face) return distance(a.position, b.position);
    // A boundary point belongs to both faces; the chord applies.
    if (classify_point(spec, a.position).is_boundary() ||
        classify_point(spec, b.position).is_boundary())
        return distance(a.position, b.position);
    return detail::best_crossing(spec, a.position, b.position).total_length;
}

/// The minimizing crossing of an opposite-face pair (lowest edge index on
/// ties). Both points must be strictly interior.
inline CrossingWitness shortest_crossing(const PolygonSpec& spec, const SurfacePoint& p,
                                         const SurfacePoint& q) {
    detail::require_inside(spec, p);
    detail::require_inside(spec, q);
    if (p.face == q.face) throw std::invalid_argument("shortest_crossing needs opposite faces");
    if (classify_point(spec, p.position).is_boundary() ||
        classify_point(spec, q.position).is_boundary())
        throw std::invalid_argument("shortest_crossing needs strictly interior points");
    const bool swap = detail::surface_point_less(q, p);
    return swap ? detail::best_crossing(spec, q.position, p.position)
                : detail::best_crossing(spec, p.position, q.position);
}

/// Discretized reference for `distance`: minimize |p-z| + |z-q| over a
/// uniform grid of boundary points (vertices included). Converges at rate
/// O(side/samples); kept simple on purpose so it can serve as an oracle.
inline double distance_bruteforce(const PolygonSpec& spec, const SurfacePoint& p,
                                  const SurfacePoint& q, int samples_per_edge) {
    if (samples_per_edge < 2) throw std::invalid_argument("need at least 2 samples per edge");
    detail::require_inside(spec, p);
    detail::require_inside(spec, q);

    if (p.face == q.face || classify_point(spec, p.position).is_boundary() ||
        classify_point(spec, q.position).is_boundary())
        return distance(p.position, q.position);

    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < spec.n; ++j) {
        const Vec2 a = spec.edge_start(j);
        const Vec2 step = (spec.edge_end(j) - a) * (1.0 / (samples_per_edge - 1));
        for (int k = 0; k < samples_per_edge; ++k) {
            const Vec2 z = a + step * k;
            best = std::min(best, distance(p.position, z) + distance(z, q.position));
        }
    }
    return best;
}

}  // namespace dpoly
