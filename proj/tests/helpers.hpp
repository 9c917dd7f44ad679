#pragma once

// Shared test utilities: deterministic random sampling inside the polygon
// and an independent crossing-length oracle (golden-section minimization
// along each edge) used to cross-check the closed-form metric.

#include <random>

#include "dpoly/geodesic.hpp"
#include "dpoly/metric.hpp"

namespace dpoly::testing {

inline Vec2 random_interior_point(const PolygonSpec& spec, std::mt19937& rng,
                                  double margin = 1e-6) {
    std::uniform_real_distribution<double> coord(-spec.circumradius, spec.circumradius);
    for (;;) {
        const Vec2 p{coord(rng), coord(rng)};
        bool inside = true;
        for (int j = 0; j < spec.n; ++j)
            if (spec.signed_edge_distance(p, j) > -margin * spec.circumradius) inside = false;
        if (inside) return p;
    }
}

inline SurfacePoint random_surface_point(const PolygonSpec& spec, std::mt19937& rng) {
    std::bernoulli_distribution face(0.5);
    return {face(rng) ? Face::Top : Face::Bottom, random_interior_point(spec, rng)};
}

// Independent oracle for the opposite-face distance: per edge, minimize
// |p-z| + |z-q| over the edge by golden-section search (the objective is
// convex along the edge), and take the best edge. Shares no code with the
// reflection formula in the library.
inline double crossing_length_oracle(const PolygonSpec& spec, const Vec2& p, const Vec2& q) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < spec.n; ++j) {
        auto f = [&](double t) {
            const Vec2 z = spec.edge_point(j, t);
            return distance(p, z) + distance(z, q);
        };
        double a = 0.0, b = 1.0;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = f(c), fd = f(d);
        while (b - a > 1e-13) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = f(d);
            }
        }
        best = std::min({best, f(a), f(b), f(0.0), f(1.0)});
    }
    return best;
}

inline double oracle_distance(const PolygonSpec& spec, const SurfacePoint& p,
                              const SurfacePoint& q) {
    const bool pb = classify_point(spec, p.position).is_boundary();
    const bool qb = classify_point(spec, q.position).is_boundary();
    if (p.face == q.face || pb || qb) return distance(p.position, q.position);
    return crossing_length_oracle(spec, p.position, q.position);
}

// Distance between parameters on a closed curve of length L (cyclic).
inline double arc_distance(double t, double s, double L) {
    double d = std::abs(t - s);
    d = std::fmod(d, L);
    return std::min(d, L - d);
}

}  // namespace dpoly::testing
