#pragma once

// Planar primitives for a regular n-gon: construction, point classification,
// edge reflections, and the dihedral symmetry action. Everything downstream
// (metric, tracer, search) is built on these.
//
// Conventions, fixed once:
//   - vertex j sits at circumradius * (cos(2*pi*j/n), sin(2*pi*j/n)),
//   - edge j runs from vertex j to vertex j+1 (mod n), counterclockwise,
//   - the interior is to the left of each edge direction,
//   - lengths are dimensionless at the chosen circumradius (default 1).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpoly {

inline constexpr double kPi = std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double xx, double yy) : x(xx), y(yy) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }

    constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
    constexpr double cross(const Vec2& r) const { return x * r.y - y * r.x; }
    // sqrt form: coordinates here are O(circumradius), so overflow-safe and
    // much faster than hypot.
    double norm() const { return std::sqrt(x * x + y * y); }

    Vec2 normalized() const {
        const double n = norm();
        if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
        return {x / n, y / n};
    }

    /// Counterclockwise rotation by a quarter turn.
    constexpr Vec2 perp() const { return {-y, x}; }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Direction with unit norm (enforced to 1e-12 on construction).
struct UnitDirection {
    double dx = 1.0;
    double dy = 0.0;

    UnitDirection() = default;
    UnitDirection(double x, double y) : dx(x), dy(y) {
        const double n2 = dx * dx + dy * dy;
        if (std::abs(n2 - 1.0) > 1e-12) {
            const double n = std::sqrt(n2);
            if (n == 0.0) throw std::invalid_argument("zero direction");
            dx /= n;
            dy /= n;
        }
    }
    explicit UnitDirection(const Vec2& v) : UnitDirection(v.x, v.y) {}

    Vec2 vec() const { return {dx, dy}; }
    static UnitDirection from_angle(double a) { return {std::cos(a), std::sin(a)}; }
};

/// Immutable description of the regular n-gon used as each face of the
/// doubled polygon.
struct PolygonSpec {
    int n = 0;
    double circumradius = 0.0;
    std::vector<Vec2> vertices;
    double side_length = 0.0;
    double apothem = 0.0;

    const Vec2& vertex(int j) const { return vertices[mod_index(j)]; }

    /// Edge j runs from vertex j to vertex j+1.
    Vec2 edge_start(int j) const { return vertex(j); }
    Vec2 edge_end(int j) const { return vertex(j + 1); }

    Vec2 edge_midpoint(int j) const {
        const double a = kPi * (2 * mod_index(j) + 1) / n;
        return {apothem * std::cos(a), apothem * std::sin(a)};
    }

    /// Unit vector along edge j (counterclockwise boundary orientation).
    Vec2 edge_direction(int j) const { return (edge_end(j) - edge_start(j)) * (1.0 / side_length); }

    /// Unit outward normal of edge j; the edge line is { p : n.p = apothem }.
    Vec2 edge_outward_normal(int j) const {
        const double a = kPi * (2 * mod_index(j) + 1) / n;
        return {std::cos(a), std::sin(a)};
    }

    Vec2 edge_inward_normal(int j) const { return -edge_outward_normal(j); }

    /// Signed distance to the line of edge j; positive outside.
    double signed_edge_distance(const Vec2& p, int j) const {
        return edge_outward_normal(j).dot(p) - apothem;
    }

    /// Point on edge j at normalized offset u in [0,1].
    Vec2 edge_point(int j, double u) const {
        return edge_start(j) + (edge_end(j) - edge_start(j)) * u;
    }

    /// Normalized offset of p along edge j (projection onto the edge line).
    double edge_offset(const Vec2& p, int j) const {
        return (p - edge_start(j)).dot(edge_direction(j)) / side_length;
    }

    int mod_index(int j) const {
        int r = j % n;
        return r < 0 ? r + n : r;
    }

    /// Default absolute classification tolerance, scaled to the polygon.
    double default_tolerance() const { return 1e-9 * circumradius; }
};

inline PolygonSpec build_polygon(int n, double circumradius = 1.0) {
    if (n < 3) throw std::invalid_argument("polygon needs n >= 3, got n = " + std::to_string(n));
    if (!(circumradius > 0.0)) throw std::invalid_argument("circumradius must be positive");
    PolygonSpec spec;
    spec.n = n;
    spec.circumradius = circumradius;
    spec.vertices.reserve(n);
    for (int j = 0; j < n; ++j) {
        const double a = 2.0 * kPi * j / n;
        spec.vertices.push_back({circumradius * std::cos(a), circumradius * std::sin(a)});
    }
    spec.side_length = 2.0 * circumradius * std::sin(kPi / n);
    spec.apothem = circumradius * std::cos(kPi / n);
    return spec;
}

/// Classification of a planar point against the polygon boundary.
/// Vertex proximity wins over edge membership so that trajectories grazing a
/// cone point are always detectable.
struct BoundaryLocation {
    enum class Kind { Interior, OnEdge, AtVertex, Outside };
    Kind kind = Kind::Outside;
    int index = -1;     // edge index for OnEdge, vertex index for AtVertex
    double offset = 0;  // normalized edge offset, strictly in (0,1), for OnEdge

    bool is_boundary() const { return kind == Kind::OnEdge || kind == Kind::AtVertex; }
    bool is_inside() const { return kind != Kind::Outside; }
};

inline BoundaryLocation classify_point(const PolygonSpec& spec, const Vec2& p, double tol) {
    if (tol < 0.0) throw std::invalid_argument("classification tolerance must be >= 0");
    BoundaryLocation loc;

    double best_vertex = tol;
    for (int j = 0; j < spec.n; ++j) {
        const double d = distance(p, spec.vertices[j]);
        if (d <= best_vertex) {
            best_vertex = d;
            loc.kind = BoundaryLocation::Kind::AtVertex;
            loc.index = j;
        }
    }
    if (loc.kind == BoundaryLocation::Kind::AtVertex) return loc;

    bool interior = true;
    double best_edge = tol;
    int best_edge_index = -1;
    for (int j = 0; j < spec.n; ++j) {
        const double s = spec.signed_edge_distance(p, j);
        if (s >= -tol) interior = false;
        if (std::abs(s) <= best_edge) {
            const double u = spec.edge_offset(p, j);
            if (u > 0.0 && u < 1.0) {
                best_edge = std::abs(s);
                best_edge_index = j;
            }
        }
    }
    if (interior) {
        loc.kind = BoundaryLocation::Kind::Interior;
        return loc;
    }
    if (best_edge_index >= 0) {
        double outside = -1.0;
        for (int j = 0; j < spec.n; ++j) {
            if (j == best_edge_index) continue;
            outside = std::max(outside, spec.signed_edge_distance(p, j));
        }
        if (outside <= tol) {
            loc.kind = BoundaryLocation::Kind::OnEdge;
            loc.index = best_edge_index;
            loc.offset = spec.edge_offset(p, best_edge_index);
            return loc;
        }
    }
    loc.kind = BoundaryLocation::Kind::Outside;
    return loc;
}

inline BoundaryLocation classify_point(const PolygonSpec& spec, const Vec2& p) {
    return classify_point(spec, p, spec.default_tolerance());
}

/// Mirror image of p across the infinite line through edge `edge_index`.
inline Vec2 reflect_across_edge(const PolygonSpec& spec, int edge_index, const Vec2& p) {
    if (edge_index < 0 || edge_index >= spec.n)
        throw std::invalid_argument("edge index out of range");
    const Vec2 nrm = spec.edge_outward_normal(edge_index);
    const double s = spec.signed_edge_distance(p, edge_index);
    return p - nrm * (2.0 * s);
}

/// Reflect a direction across the line of edge `edge_index` (billiard law).
inline Vec2 reflect_direction(const PolygonSpec& spec, int edge_index, const Vec2& d) {
    const Vec2 nrm = spec.edge_outward_normal(edge_index);
    return d - nrm * (2.0 * d.dot(nrm));
}

/// The 2n elements of the dihedral group fixing the polygon, applied to p.
/// Duplicate images are merged within `dedup_tol`.
inline std::vector<Vec2> symmetry_orbit(const PolygonSpec& spec, const Vec2& p,
                                        double dedup_tol = 1e-9) {
    std::vector<Vec2> orbit;
    orbit.reserve(2 * spec.n);
    auto push_unique = [&](const Vec2& q) {
        for (const Vec2& o : orbit)
            if (distance(o, q) <= dedup_tol) return;
        orbit.push_back(q);
    };
    for (int k = 0; k < spec.n; ++k) {
        const double a = 2.0 * kPi * k / spec.n;
        const double c = std::cos(a), s = std::sin(a);
        // rotation by 2*pi*k/n
        push_unique({c * p.x - s * p.y, s * p.x + c * p.y});
        // rotation composed with the mirror across the x-axis
        push_unique({c * p.x + s * p.y, s * p.x - c * p.y});
    }
    return orbit;
}

/// Apply one dihedral element: rotation index k (0..n-1), optionally mirrored
/// across the x-axis first. Used by the search module for orbit enumeration.
inline Vec2 apply_dihedral(const PolygonSpec& spec, const Vec2& p, int k, bool mirrored) {
    const double a = 2.0 * kPi * spec.mod_index(k) / spec.n;
    const double c = std::cos(a), s = std::sin(a);
    const Vec2 q = mirrored ? Vec2{p.x, -p.y} : p;
    return {c * q.x - s * q.y, s * q.x + c * q.y};
}

}  // namespace dpoly
