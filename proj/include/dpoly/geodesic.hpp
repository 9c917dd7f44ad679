#pragma once

// Billiard tracer on X_n and exact constructors for the classical closed
// geodesic families.
//
// A geodesic on the doubled polygon is a straight segment on each face; it
// crosses an edge with equal incidence and reflection angles and never passes
// through a vertex (the vertices are cone points with angle < 2*pi). In
// planar coordinates this is exactly a polygon billiard whose face tag flips
// at every bounce, which is how the tracer works.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dpoly/geometry.hpp"
#include "dpoly/metric.hpp"

namespace dpoly {

struct Segment {
    Face face = Face::Top;
    Vec2 start;
    Vec2 end;
    double length = 0.0;

    Segment() = default;
    Segment(Face f, Vec2 s, Vec2 e) : face(f), start(s), end(e), length(distance(s, e)) {}
    Vec2 direction() const { return (end - start) * (1.0 / length); }
};

struct GeodesicPath {
    PolygonSpec spec;
    std::vector<Segment> segments;
    bool closed = false;
    double total_length = 0.0;
};

struct TraceOptions {
    int max_segments = 1000;
    double vertex_tol = 0.0;     // 0 = 1e-9 * circumradius
    double close_pos_tol = 0.0;  // 0 = 1e-9 * circumradius
    double close_dir_tol = 1e-9; // radians
};

struct TraceOutcome {
    enum class Kind { Closed, VertexHit, Truncated };
    Kind kind = Kind::Truncated;
    GeodesicPath path;      // full for Truncated, the loop for Closed,
                            // segments up to the hit for VertexHit
    Vec2 vertex_position;   // VertexHit only
    int vertex_segment = -1;
};

/// A smoothly closed geodesic with arc-length parameterization, t = 0 at the
/// first junction. The period is the number of straight segments; it is
/// always even because faces alternate.
struct ClosedGeodesic {
    PolygonSpec spec;
    std::vector<Segment> segments;
    std::vector<int> junction_edges;  // edge containing segments[j].start
    std::vector<double> cumulative;   // cumulative[j] = arc length at junction j
    double length = 0.0;

    int period() const { return static_cast<int>(segments.size()); }
    const Vec2& junction(int j) const { return segments[mod(j)].start; }
    int junction_edge(int j) const { return junction_edges[mod(j)]; }
    double junction_parameter(int j) const { return cumulative[mod(j)]; }

    int mod(int j) const {
        const int m = period();
        int r = j % m;
        return r < 0 ? r + m : r;
    }
};

namespace detail {

struct BounceData {
    Vec2 point;
    int edge = -1;
    Vec2 out_dir;  // direction after reflection
};

// First boundary hit of the ray p + s*d, s > 0. Edges approached from
// outside (n.d <= 0) can not be exits, which also excludes the edge the ray
// starts on when it points inward.
inline std::pair<double, int> first_exit(const PolygonSpec& spec, const Vec2& p, const Vec2& d) {
    double best_s = std::numeric_limits<double>::infinity();
    int best_edge = -1;
    for (int j = 0; j < spec.n; ++j) {
        const Vec2 nrm = spec.edge_outward_normal(j);
        const double nd = nrm.dot(d);
        if (nd <= 0.0) continue;
        const double s = (spec.apothem - nrm.dot(p)) / nd;
        if (s < best_s) {
            best_s = s;
            best_edge = j;
        }
    }
    return {best_s, best_edge};
}

inline int nearest_vertex_within(const PolygonSpec& spec, const Vec2& p, double tol) {
    for (int j = 0; j < spec.n; ++j)
        if (distance(p, spec.vertices[j]) <= tol) return j;
    return -1;
}

}  // namespace detail

/// Trace the billiard flow from `start` in direction `dir`. The trace stops
/// at a smooth closure (same point, same direction, same face), at a vertex
/// hit (not a geodesic), or after max_segments.
inline TraceOutcome trace(const PolygonSpec& spec, const SurfacePoint& start,
                          const UnitDirection& dir, const TraceOptions& opts = {}) {
    const double vtol = opts.vertex_tol > 0 ? opts.vertex_tol : spec.default_tolerance();
    const double ptol = opts.close_pos_tol > 0 ? opts.close_pos_tol : spec.default_tolerance();
    if (opts.max_segments < 1) throw std::invalid_argument("max_segments must be >= 1");

    const BoundaryLocation loc = classify_point(spec, start.position);
    if (!loc.is_inside()) throw std::invalid_argument("trace start lies outside the polygon");
    if (loc.kind == BoundaryLocation::Kind::AtVertex)
        throw std::invalid_argument("trace cannot start at a vertex");

    Vec2 d = dir.vec();
    if (loc.kind == BoundaryLocation::Kind::OnEdge) {
        const double inward = spec.edge_inward_normal(loc.index).dot(d);
        if (std::abs(inward) <= 1e-12)
            throw std::invalid_argument("direction parallel to the starting edge");
        if (inward < 0.0) throw std::invalid_argument("direction points out of the polygon");
    }
    const bool boundary_start = loc.kind == BoundaryLocation::Kind::OnEdge;

    TraceOutcome out;
    out.path.spec = spec;
    const Vec2 start_pos = start.position;
    const Vec2 start_dir = d;
    const Face start_face = start.face;

    Vec2 p = start_pos;
    Face face = start_face;
    for (int seg = 0; seg < opts.max_segments; ++seg) {
        auto [s, edge] = detail::first_exit(spec, p, d);
        if (edge < 0) throw std::runtime_error("ray failed to exit the polygon");
        const Vec2 hit = p + d * s;

        if (!boundary_start && face == start_face) {
            // Interior starts may close mid-segment; if so the partial
            // segment p->start merges with the first segment (collinear).
            const Vec2 w = start_pos - p;
            const double along = w.dot(d);
            if (seg > 0 && along >= -ptol && along <= s + ptol &&
                std::abs(w.cross(d)) <= ptol && distance(d, start_dir) <= opts.close_dir_tol) {
                std::vector<Segment>& segs = out.path.segments;
                Segment merged(face, p, segs.front().end);
                segs.erase(segs.begin());
                segs.push_back(merged);
                out.kind = TraceOutcome::Kind::Closed;
                out.path.closed = true;
                out.path.total_length = 0.0;
                for (const Segment& sg : segs) out.path.total_length += sg.length;
                return out;
            }
        }

        const int v = detail::nearest_vertex_within(spec, hit, vtol);
        if (v >= 0) {
            out.kind = TraceOutcome::Kind::VertexHit;
            out.vertex_position = hit;
            out.vertex_segment = seg;
            return out;
        }

        out.path.segments.emplace_back(face, p, hit);
        out.path.total_length += out.path.segments.back().length;
        d = reflect_direction(spec, edge, d);
        face = opposite(face);
        p = hit;

        if (boundary_start && distance(hit, start_pos) <= ptol &&
            distance(d, start_dir) <= opts.close_dir_tol && face == start_face) {
            out.kind = TraceOutcome::Kind::Closed;
            out.path.closed = true;
            return out;
        }
    }
    out.kind = TraceOutcome::Kind::Truncated;
    return out;
}

/// Convenience: boundary shooting data -> (point, inward direction).
/// theta in (0, pi) is measured from the edge direction toward the interior.
inline std::pair<SurfacePoint, UnitDirection> launch_from_edge(const PolygonSpec& spec, int edge,
                                                               double u, double theta,
                                                               Face face = Face::Top) {
    if (edge < 0 || edge >= spec.n) throw std::invalid_argument("edge index out of range");
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("edge offset must be in (0,1)");
    if (!(theta > 0.0 && theta < kPi))
        throw std::invalid_argument("launch angle must be in (0, pi)");
    const Vec2 e = spec.edge_direction(edge);
    const Vec2 nin = spec.edge_inward_normal(edge);
    const Vec2 d = e * std::cos(theta) + nin * std::sin(theta);
    return {SurfacePoint(face, spec.edge_point(edge, u)), UnitDirection(d)};
}

namespace detail {

inline ClosedGeodesic assemble_closed(const PolygonSpec& spec, std::vector<Segment> segments) {
    ClosedGeodesic g;
    g.spec = spec;
    g.segments = std::move(segments);
    g.junction_edges.reserve(g.segments.size());
    g.cumulative.reserve(g.segments.size());
    double acc = 0.0;
    for (const Segment& s : g.segments) {
        const BoundaryLocation loc = classify_point(spec, s.start);
        if (loc.kind != BoundaryLocation::Kind::OnEdge)
            throw std::invalid_argument("closed geodesic junction is not an interior edge point");
        g.junction_edges.push_back(loc.index);
        g.cumulative.push_back(acc);
        acc += s.length;
    }
    g.length = acc;
    return g;
}

}  // namespace detail

/// Build a ClosedGeodesic from a smoothly closed traced path.
inline ClosedGeodesic close_path(const GeodesicPath& path) {
    if (!path.closed || path.segments.empty())
        throw std::invalid_argument("path is not a closed geodesic");
    if (path.segments.size() % 2 != 0)
        throw std::invalid_argument("closed geodesic must have even period");
    return detail::assemble_closed(path.spec, path.segments);
}

/// The over-under curve through the midpoints of every `step`-th edge,
/// alternating faces each segment. With c = n / gcd(n, step) distinct
/// midpoints, the curve closes smoothly after c segments when c is even and
/// needs 2c when c is odd.
inline ClosedGeodesic over_under(const PolygonSpec& spec, int step = 1) {
    if (step < 1 || 2 * step > spec.n)
        throw std::invalid_argument("over-under step must satisfy 1 <= step <= n/2");
    const int c = spec.n / std::gcd(spec.n, step);
    const int period = (c % 2 == 0) ? c : 2 * c;

    std::vector<Segment> segments;
    segments.reserve(period);
    for (int t = 0; t < period; ++t) {
        const Vec2 a = spec.edge_midpoint((t * step) % spec.n);
        const Vec2 b = spec.edge_midpoint(((t + 1) * step) % spec.n);
        segments.emplace_back(t % 2 == 0 ? Face::Top : Face::Bottom, a, b);
    }
    return detail::assemble_closed(spec, std::move(segments));
}

/// The half-geodesics of X_n: for n even, the n/2 curves through the center
/// hitting opposite parallel edges perpendicularly (period 2, length
/// 4*apothem). For n odd there are none and the list is empty.
inline std::vector<ClosedGeodesic> half_geodesics(const PolygonSpec& spec) {
    std::vector<ClosedGeodesic> curves;
    if (spec.n % 2 != 0) return curves;
    curves.reserve(spec.n / 2);
    for (int j = 0; j < spec.n / 2; ++j) {
        const Vec2 a = spec.edge_midpoint(j);
        const Vec2 b = spec.edge_midpoint(j + spec.n / 2);  // antipodal midpoint
        std::vector<Segment> segments;
        segments.emplace_back(Face::Top, a, b);
        segments.emplace_back(Face::Bottom, b, a);
        curves.push_back(detail::assemble_closed(spec, std::move(segments)));
    }
    return curves;
}

namespace detail {

// Perpendicular-foot offsets of the period-4 triangle curve launched from
// edge 0 at offset u: the feet on edges 1 and 2 are affine in u. Evaluated
// numerically rather than hard-coded.
inline double period4_foot_offset(const PolygonSpec& spec, int foot_edge, double u) {
    const Vec2 s = spec.edge_point(0, u);
    return spec.edge_offset(s - spec.edge_outward_normal(foot_edge) *
                                    spec.signed_edge_distance(s, foot_edge),
                            foot_edge);
}

}  // namespace detail

/// Admissible launch offsets for period4_triangle: both perpendicular feet
/// and the pivot itself must stay clear of the vertices by the vertex
/// tolerance. Returns {lo, hi}.
inline std::pair<double, double> period4_admissible_interval(const PolygonSpec& spec,
                                                             double vertex_tol = 0.0) {
    if (spec.n != 3) throw std::invalid_argument("period-4 family exists on the triangle only");
    const double vtol = vertex_tol > 0 ? vertex_tol : spec.default_tolerance();
    const double margin = vtol / spec.side_length;  // offset units

    double lo = margin, hi = 1.0 - margin;
    for (int foot_edge : {1, 2}) {
        // foot(u) = a + b*u exactly; recover the coefficients from two probes
        const double f0 = detail::period4_foot_offset(spec, foot_edge, 0.0);
        const double f1 = detail::period4_foot_offset(spec, foot_edge, 1.0);
        const double b = f1 - f0;
        if (std::abs(b) < 1e-15) continue;
        double ulo = (margin - f0) / b;
        double uhi = (1.0 - margin - f0) / b;
        if (ulo > uhi) std::swap(ulo, uhi);
        lo = std::max(lo, ulo);
        hi = std::min(hi, uhi);
    }
    return {lo, hi};
}

/// The period-4 closed geodesics on the doubled triangle: leave edge 0 at
/// offset u with angle pi/6, hit one adjacent edge perpendicularly, bounce
/// back through the start point, hit the other adjacent edge perpendicularly,
/// and close. The two far junctions are the orthogonal projections of the
/// pivot onto the adjacent edge lines; total length is constant across the
/// family.
inline ClosedGeodesic period4_triangle(const PolygonSpec& spec, double u) {
    if (spec.n != 3) throw std::invalid_argument("period-4 family exists on the triangle only");
    const auto [lo, hi] = period4_admissible_interval(spec);
    if (!(u >= lo && u <= hi))
        throw std::domain_error("launch offset outside the admissible interval");

    const Vec2 s = spec.edge_point(0, u);
    const Vec2 foot1 = s - spec.edge_outward_normal(1) * spec.signed_edge_distance(s, 1);
    const Vec2 foot2 = s - spec.edge_outward_normal(2) * spec.signed_edge_distance(s, 2);

    std::vector<Segment> segments;
    segments.emplace_back(Face::Top, s, foot1);
    segments.emplace_back(Face::Bottom, foot1, s);
    segments.emplace_back(Face::Top, s, foot2);
    segments.emplace_back(Face::Bottom, foot2, s);
    return detail::assemble_closed(spec, std::move(segments));
}

/// |incidence angle - reflection angle| at junction j, both measured between
/// the segment line and the edge line.
inline double billiard_angle_defect(const ClosedGeodesic& g, int j) {
    const Vec2 e = g.spec.edge_direction(g.junction_edge(j));
    const Vec2 din = g.segments[g.mod(j - 1)].direction();
    const Vec2 dout = g.segments[g.mod(j)].direction();
    const double ain = std::acos(std::clamp(std::abs(din.dot(e)), 0.0, 1.0));
    const double aout = std::acos(std::clamp(std::abs(dout.dot(e)), 0.0, 1.0));
    return std::abs(ain - aout);
}

/// Structural checks on a closed geodesic: junction continuity, alternating
/// faces, the billiard law at every junction, and vertex-free segment
/// interiors. Throws on the first violation.
inline void validate(const ClosedGeodesic& g, double angle_tol = 1e-9) {
    const double ptol = g.spec.default_tolerance();
    const int m = g.period();
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("period must be even and >= 2");
    for (int j = 0; j < m; ++j) {
        const Segment& cur = g.segments[j];
        const Segment& next = g.segments[g.mod(j + 1)];
        if (distance(cur.end, next.start) > ptol)
            throw std::invalid_argument("segments do not share their junction point");
        if (next.face == cur.face)
            throw std::invalid_argument("consecutive segments must lie on opposite faces");
        if (billiard_angle_defect(g, j) > angle_tol)
            throw std::invalid_argument("billiard law violated at a junction");
        for (const Vec2& v : g.spec.vertices) {
            const Vec2 w = v - cur.start;
            const double along = w.dot(cur.direction());
            if (along > ptol && along < cur.length - ptol &&
                std::abs(w.cross(cur.direction())) <= ptol)
                throw std::invalid_argument("segment interior passes through a vertex");
        }
    }
}

/// Constant-speed point at arc length t (wrapped mod L), t = 0 at the first
/// junction.
inline SurfacePoint evaluate(const ClosedGeodesic& g, double t) {
    double s = std::fmod(t, g.length);
    if (s < 0.0) s += g.length;
    auto it = std::upper_bound(g.cumulative.begin(), g.cumulative.end(), s);
    const int j = static_cast<int>(it - g.cumulative.begin()) - 1;
    const Segment& seg = g.segments[j];
    const double local = s - g.cumulative[j];
    return {seg.face, seg.start + seg.direction() * local};
}

/// Retrace a closed geodesic from its own starting data and check that the
/// tracer reproduces every junction and closes smoothly. Returns the traced
/// curve; throws if the round trip fails.
inline ClosedGeodesic retrace(const ClosedGeodesic& g, double tol = 0.0) {
    const double ptol = tol > 0 ? tol : g.spec.default_tolerance();
    TraceOptions opts;
    opts.max_segments = g.period();
    opts.close_pos_tol = ptol;
    const TraceOutcome out = trace(g.spec, SurfacePoint(g.segments[0].face, g.junction(0)),
                                   UnitDirection(g.segments[0].direction()), opts);
    if (out.kind != TraceOutcome::Kind::Closed)
        throw std::runtime_error("retrace did not close smoothly");
    if (static_cast<int>(out.path.segments.size()) != g.period())
        throw std::runtime_error("retrace closed with a different period");
    for (int j = 0; j < g.period(); ++j)
        if (distance(out.path.segments[j].start, g.junction(j)) > ptol)
            throw std::runtime_error("retrace junction mismatch");
    return close_path(out.path);
}

}  // namespace dpoly
