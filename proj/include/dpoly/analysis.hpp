#pragma once

// Verification of the 1/k minimization property of a closed geodesic.
//
// A closed geodesic of length L is a 1/k-geodesic when it is a shortest path
// between every pair of its points at arc distance L/k. The verifier samples
// g(t) = d(gamma(t), gamma(t + L/k)) - L/k over a uniform grid, inserts every
// parameter where either endpoint crosses a junction (those are the only
// kinks of g), and polishes local minima with golden-section refinement.
// Since the curve itself connects each pair with an arc of length L/k, g <= 0
// up to noise everywhere; passing means the minimum is 0 up to tolerance and
// failing means some pair admits a strictly shorter connection.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dpoly/geodesic.hpp"
#include "dpoly/metric.hpp"

namespace dpoly {

struct ShortcutWitness {
    double t = 0.0;           // parameter of the beaten pair
    double geodesic_arc = 0;  // L/k
    double shortcut_length = 0;
    bool crossing_valid = false;  // false: the pair is same-face, shortcut is the chord
    CrossingWitness crossing;
};

struct VerificationReport {
    int k = 0;
    bool pass = false;
    double min_gap = 0.0;  // min over t of d(gamma(t), gamma(t+L/k)) - L/k
    ShortcutWitness witness;
    int grid = 0;
    double tolerance = 0.0;
    bool borderline = false;  // min_gap within half a tolerance of the pass/fail line
};

struct MinindReport {
    bool found = false;
    int k_star = 0;  // minimizing index when found
    int k_max = 0;
    int period = 0;
    std::vector<std::pair<int, double>> gaps;  // (k, min_gap) for k = 2..last checked
};

namespace detail {

inline double pair_gap(const ClosedGeodesic& g, double t, double arc) {
    return distance(g.spec, evaluate(g, t), evaluate(g, t + arc)) - arc;
}

// Golden-section minimization of f over [a, b]; f need not be smooth at the
// bracket ends but should be unimodal inside. Width-limited.
template <typename F>
inline std::pair<double, double> golden_min(F&& f, double a, double b, double width) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > width) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

}  // namespace detail

/// Check whether gamma minimizes on all subintervals of length L/k.
/// grid = 0 and tol = 0 select the defaults (64 * period * k points,
/// 1e-7 * L).
inline VerificationReport check_one_over_k(const ClosedGeodesic& g, int k, int grid = 0,
                                           double tol = 0.0) {
    if (k < 2) throw std::invalid_argument("1/k check needs k >= 2");
    const int m = g.period();
    if (grid == 0) grid = 64 * m * k;
    if (grid < 8 * m * k) throw std::invalid_argument("verification grid too coarse");
    const double L = g.length;
    if (tol == 0.0) tol = 1e-7 * L;
    const double arc = L / k;

    // Uniform grid plus every parameter where an endpoint sits at a junction.
    std::vector<double> params;
    params.reserve(grid + 2 * m + 2);
    for (int i = 0; i < grid; ++i) params.push_back(L * i / grid);
    for (int j = 0; j < m; ++j) {
        params.push_back(g.cumulative[j]);
        double s = std::fmod(g.cumulative[j] - arc, L);
        if (s < 0) s += L;
        params.push_back(s);
    }
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end(),
                             [&](double a, double b) { return std::abs(a - b) < 1e-15 * L; }),
                 params.end());

    const int np = static_cast<int>(params.size());
    std::vector<double> gap(np);
    for (int i = 0; i < np; ++i) gap[i] = detail::pair_gap(g, params[i], arc);

    auto f = [&](double t) { return detail::pair_gap(g, t, arc); };

    double best_gap = std::numeric_limits<double>::infinity();
    double best_t = 0.0;
    int best_i = 0;
    for (int i = 0; i < np; ++i)
        if (gap[i] < best_gap) {
            best_gap = gap[i];
            best_t = params[i];
            best_i = i;
        }

    // Refine the deepest strict local minima (g is smooth between the
    // inserted junction parameters, so brackets around grid minima contain
    // the true dips). Flat plateaus need no refinement and are skipped by
    // the strictness test.
    std::vector<int> candidates;
    for (int i = 0; i < np; ++i) {
        const double prev = gap[(i + np - 1) % np];
        const double next = gap[(i + 1) % np];
        if ((gap[i] < prev && gap[i] <= next) || i == best_i) candidates.push_back(i);
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](int a, int b) { return gap[a] < gap[b]; });
    if (candidates.size() > 64) candidates.resize(64);

    for (int i : candidates) {
        double a = params[(i + np - 1) % np];
        double b = params[(i + 1) % np];
        if (i == 0) a -= L;  // wrap the cyclic bracket
        if (i == np - 1) b += L;
        auto [t_ref, g_ref] = detail::golden_min(f, a, b, 1e-10 * L);
        if (g_ref < best_gap) {
            best_gap = g_ref;
            best_t = t_ref;
        }
    }

    VerificationReport report;
    report.k = k;
    report.grid = grid;
    report.tolerance = tol;
    report.min_gap = best_gap;
    report.pass = best_gap >= -tol;
    report.borderline = best_gap >= -1.5 * tol && best_gap <= -0.5 * tol;

    ShortcutWitness w;
    w.t = std::fmod(best_t, L);
    if (w.t < 0) w.t += L;
    w.geodesic_arc = arc;
    w.shortcut_length = best_gap + arc;
    const SurfacePoint q1 = evaluate(g, best_t);
    const SurfacePoint q2 = evaluate(g, best_t + arc);
    if (q1.face != q2.face && !classify_point(g.spec, q1.position).is_boundary() &&
        !classify_point(g.spec, q2.position).is_boundary()) {
        w.crossing = shortest_crossing(g.spec, q1, q2);
        w.crossing_valid = true;
    }
    report.witness = w;
    return report;
}

/// Smallest k <= k_max for which gamma is a 1/k-geodesic, with the per-k gap
/// table. k_max = 0 selects the default 4 * period.
inline MinindReport minimizing_index(const ClosedGeodesic& g, int k_max = 0, int grid = 0,
                                     double tol = 0.0) {
    if (k_max == 0) k_max = 4 * g.period();
    if (k_max < 2) throw std::invalid_argument("k_max must be >= 2");
    MinindReport report;
    report.k_max = k_max;
    report.period = g.period();
    for (int k = 2; k <= k_max; ++k) {
        const VerificationReport r = check_one_over_k(g, k, grid, tol);
        report.gaps.emplace_back(k, r.min_gap);
        if (r.pass) {
            report.found = true;
            report.k_star = k;
            break;
        }
    }
    return report;
}

/// The two-triangle configuration behind the adjacent-edge shortcut bound for
/// over-under curves. The arc (t, t + L/period) contains one junction p_i;
/// the competing path crosses the adjacent edge on the side of the longer
/// sub-arc, so the endpoint over there is reflected across that edge and the
/// chord between p_i and its far junction is cut by the straight connection
/// (for the shorter sub-arc the same picture applies mirrored; picking the
/// longer side keeps the cut point c inside the chord).
///
/// The law of sines gives P_i = P_next and
/// (Q1 + R2) / (2 P_i) = cos(angle_c) <= 1, hence the competing path through
/// the adjacent edge has length 2 P_i >= Q1 + R2 = L/period. Equality is
/// approached only as t tends to a junction.
struct AdjacentShortcut {
    double t = 0.0;
    SurfacePoint q1, q2;     // the arc endpoints gamma(t), gamma(t + L/period)
    Vec2 p_prev, p_i, p_next;
    bool mirrored = false;   // true: q1's side hosts the crossing (longer sub-arc)
    int far_edge = -1;
    Vec2 r2;  // the reflected endpoint
    Vec2 c;   // cut point on the chord from p_i to the far junction
    double Q1 = 0;      // |c - p_i|
    double R2 = 0;      // |c - far junction|
    double P_i = 0;     // |kept endpoint - c|
    double P_next = 0;  // |r2 - c|
    double C = 0;       // |kept endpoint - p_i| (= |r2 - far junction|)
    double angle_c = 0;
    double shortcut_length = 0;  // straight length of the competing path
    double arc_length = 0;       // L/period
};

inline AdjacentShortcut adjacent_shortcut(const ClosedGeodesic& g, double t) {
    const int m = g.period();
    const double L = g.length;
    const double arc = L / m;
    for (int j = 1; j < m; ++j)
        if (std::abs(g.segments[j].length - g.segments[0].length) > 1e-9 * L)
            throw std::invalid_argument("adjacent shortcut requires equal-segment curves");

    double t0 = std::fmod(t, L);
    if (t0 < 0) t0 += L;
    const double local = std::fmod(t0, arc);
    if (local < 1e-12 * L || arc - local < 1e-12 * L)
        throw std::domain_error("parameter sits at a junction (degenerate triangles)");
    const int ji = static_cast<int>(t0 / arc) + 1;  // junction inside (t0, t0 + arc)

    AdjacentShortcut sc;
    sc.t = t0;
    sc.arc_length = arc;
    sc.q1 = evaluate(g, t0);
    sc.q2 = evaluate(g, t0 + arc);
    sc.p_prev = g.junction(ji - 1);
    sc.p_i = g.junction(ji);
    sc.p_next = g.junction(ji + 1);

    const double to_junction = ji * arc - t0;  // |q1 - p_i| along the curve
    sc.mirrored = to_junction > arc - to_junction;
    const Vec2 kept = sc.mirrored ? sc.q2.position : sc.q1.position;
    const Vec2 moved = sc.mirrored ? sc.q1.position : sc.q2.position;
    const Vec2 far_junction = sc.mirrored ? sc.p_prev : sc.p_next;
    sc.far_edge = g.junction_edge(sc.mirrored ? ji - 1 : ji + 1);
    sc.r2 = reflect_across_edge(g.spec, sc.far_edge, moved);

    // Cut the chord p_i -> far junction with the straight connection.
    const Vec2 d1 = sc.r2 - kept;
    const Vec2 d2 = far_junction - sc.p_i;
    const double det = d1.cross(d2);
    if (std::abs(det) < 1e-15) throw std::domain_error("degenerate shortcut configuration");
    const double s = (sc.p_i - kept).cross(d2) / det;
    sc.c = kept + d1 * s;
    const double along = (sc.c - sc.p_i).dot(d2) / d2.dot(d2);
    if (along < -1e-9 || along > 1 + 1e-9)
        throw std::runtime_error("shortcut cut point left the chord");

    sc.Q1 = distance(sc.c, sc.p_i);
    sc.R2 = distance(sc.c, far_junction);
    sc.P_i = distance(kept, sc.c);
    sc.P_next = distance(sc.r2, sc.c);
    sc.C = distance(kept, sc.p_i);
    const Vec2 to_kept = (kept - sc.c) * (1.0 / sc.P_i);
    const Vec2 to_pi = (sc.p_i - sc.c) * (1.0 / sc.Q1);
    sc.angle_c = std::acos(std::clamp(to_kept.dot(to_pi), -1.0, 1.0));
    sc.shortcut_length = distance(kept, sc.r2);
    return sc;
}

/// The equal-path identity of the midpoint period-4 curve on the doubled
/// triangle. Q is where the bisector from the vertex between the pivot edge
/// and the foot edge meets the first segment; R is the perpendicular foot of
/// Q on the pivot edge. Both |QR| and the remaining piece |Q -> foot| equal
/// L/12, which caps the curve's minimizing interval at L/6.
struct MidpointEqualPaths {
    double q_to_foot_of_pivot = 0;  // |QR|
    double q_to_junction = 0;       // |Q - foot junction|
    double length_twelfth = 0;      // L/12
    Vec2 q, r;
};

inline MidpointEqualPaths midpoint_equal_paths(const ClosedGeodesic& g) {
    if (g.spec.n != 3 || g.period() != 4)
        throw std::invalid_argument("equal-path identity needs a period-4 triangle curve");
    const double ptol = g.spec.default_tolerance();

    // The pivot is the junction visited twice (indices j and j+2).
    int pivot = -1;
    for (int j = 0; j < 4; ++j)
        if (distance(g.junction(j), g.junction(j + 2)) <= ptol) {
            pivot = j;
            break;
        }
    if (pivot < 0) throw std::invalid_argument("curve has no twice-visited pivot junction");

    const Vec2 s = g.junction(pivot);
    const int pivot_edge = g.junction_edge(pivot);
    if (distance(s, g.spec.edge_midpoint(pivot_edge)) > 1e-6 * g.spec.circumradius)
        throw std::invalid_argument("identity holds for the midpoint member of the family");

    const Vec2 foot = g.junction(pivot + 1);
    const int foot_edge = g.junction_edge(pivot + 1);

    // Vertex shared by the pivot edge and the foot edge; its bisector passes
    // through the center.
    int shared = -1;
    for (int cand : {pivot_edge, (pivot_edge + 1) % 3}) {
        if (cand == foot_edge || cand == (foot_edge + 1) % 3) shared = cand;
    }
    if (shared < 0) throw std::invalid_argument("pivot and foot edges are not adjacent");
    const Vec2 v = g.spec.vertex(shared);

    // Q = (segment s->foot) meet (line v->center).
    const Vec2 d1 = foot - s;
    const Vec2 d2 = -v;  // toward the center
    const double det = d1.cross(d2);
    if (std::abs(det) < 1e-15) throw std::invalid_argument("degenerate bisector configuration");
    const double tq = (v - s).cross(d2) / det;

    MidpointEqualPaths out;
    out.q = s + d1 * tq;
    out.r = out.q - g.spec.edge_outward_normal(pivot_edge) *
                        g.spec.signed_edge_distance(out.q, pivot_edge);
    out.q_to_foot_of_pivot = distance(out.q, out.r);
    out.q_to_junction = distance(out.q, foot);
    out.length_twelfth = g.length / 12.0;
    return out;
}

}  // namespace dpoly
