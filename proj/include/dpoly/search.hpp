#pragma once

// Enumeration of closed geodesics of a given even period by a shooting
// method.
//
// Candidate geodesics are parameterized by boundary data on edge 0: launch
// offset u in (0,1) and launch angle theta in (0,pi). Tracing m segments
// yields a closure residual (offset mismatch, angle mismatch); closed
// geodesics are its zeros. A coarse grid over (u, theta) provides seeds,
// a damped quasi-Newton iteration polishes them, and results are
// deduplicated by the full symmetry group of the surface (dihedral action,
// face swap, cyclic shift, reversal).
//
// Zeros with a rank-deficient Jacobian belong to one-parameter families
// (parallel beams); those are re-solved with the launch offset frozen at the
// nearest grid node, so a family appears as samples at grid resolution.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpoly/analysis.hpp"
#include "dpoly/geodesic.hpp"

namespace dpoly {

struct ShootingState {
    int start_edge = 0;  // fixed to 0; other edges are symmetry images
    double u = 0.5;
    double theta = kPi / 2;
    int period = 2;
};

struct ClosureResidual {
    double du = 0.0;      // offset mismatch in side-length units, perimeter-wrapped
    double dtheta = 0.0;  // angle mismatch in radians
    bool parity_ok = false;
    bool vertex_hit = false;
};

inline constexpr double kMinLaunchAngle = 1e-6;

/// Trace `state.period` segments from the boundary data and compare the
/// final boundary data with the initial one. The residual vanishes exactly
/// on closed geodesics through edge 0.
inline ClosureResidual closure_residual(const PolygonSpec& spec, const ShootingState& state) {
    if (state.start_edge != 0) throw std::invalid_argument("shooting starts on edge 0");
    if (state.period < 1) throw std::invalid_argument("period must be >= 1");
    if (!(state.u > 0.0 && state.u < 1.0))
        throw std::invalid_argument("launch offset must be in (0,1)");
    if (!(state.theta >= kMinLaunchAngle && state.theta <= kPi - kMinLaunchAngle))
        throw std::invalid_argument("launch angle too close to the edge direction");

    const double vtol = spec.default_tolerance();
    ClosureResidual res;
    res.parity_ok = state.period % 2 == 0;

    Vec2 p = spec.edge_point(0, state.u);
    Vec2 d = spec.edge_direction(0) * std::cos(state.theta) +
             spec.edge_inward_normal(0) * std::sin(state.theta);
    int edge = -1;
    for (int seg = 0; seg < state.period; ++seg) {
        auto [s, hit_edge] = detail::first_exit(spec, p, d);
        if (hit_edge < 0) {
            res.vertex_hit = true;  // numerically stuck; treat as excluded
            return res;
        }
        p = p + d * s;
        if (detail::nearest_vertex_within(spec, p, vtol) >= 0) {
            res.vertex_hit = true;
            return res;
        }
        d = reflect_direction(spec, hit_edge, d);
        edge = hit_edge;
    }

    const double u_final = spec.edge_offset(p, edge);
    double ds = (edge + u_final) - state.u;  // perimeter coordinate, side units
    ds = std::remainder(ds, static_cast<double>(spec.n));
    res.du = ds;

    const double theta_final =
        std::atan2(d.dot(spec.edge_inward_normal(edge)), d.dot(spec.edge_direction(edge)));
    res.dtheta = theta_final - state.theta;
    return res;
}

/// One closed geodesic found by the search (a symmetry-class representative).
struct CatalogCurve {
    ShootingState state;
    ClosedGeodesic curve;
    int num_copies = 1;  // distinct isometric copies of the point set on X_n
    std::optional<MinindReport> minind;
};

/// Either an isolated closed geodesic or a one-parameter family sampled at
/// grid resolution.
struct CatalogClass {
    bool is_family = false;
    std::vector<CatalogCurve> members;  // one member when isolated
};

struct GeodesicCatalog {
    PolygonSpec spec;
    int period = 0;
    int grid_u = 0;
    int grid_theta = 0;
    std::vector<CatalogClass> classes;
    long excluded_cells = 0;  // grid nodes whose trace hit a vertex
    int raw_zero_count = 0;   // polished zeros before deduplication

    int total_members() const {
        int c = 0;
        for (const auto& cl : classes) c += static_cast<int>(cl.members.size());
        return c;
    }
};

struct SearchOptions {
    bool compute_minind = true;
    int k_max = 0;          // 0 = 4 * period (per-curve default)
    int verify_grid = 0;    // 0 = verifier default
    double polish_tol = 1e-10;
};

namespace detail {

struct ResidualFn {
    const PolygonSpec& spec;
    int period;

    std::optional<std::pair<double, double>> operator()(double u, double theta) const {
        if (!(u > 0.0 && u < 1.0)) return std::nullopt;
        if (!(theta >= kMinLaunchAngle && theta <= kPi - kMinLaunchAngle)) return std::nullopt;
        ShootingState s{0, u, theta, period};
        const ClosureResidual r = closure_residual(spec, s);
        if (r.vertex_hit) return std::nullopt;
        return std::make_pair(r.du, r.dtheta);
    }
};

inline double res_norm(const std::pair<double, double>& r) {
    return std::max(std::abs(r.first), std::abs(r.second));
}

struct Jacobian2 {
    double a = 0, b = 0;  // d(du)/du, d(du)/dtheta
    double c = 0, d = 0;  // d(dtheta)/du, d(dtheta)/dtheta
};

inline std::optional<Jacobian2> fd_jacobian(const ResidualFn& f, double u, double theta,
                                            const std::pair<double, double>& r0,
                                            double h = 1e-7) {
    const auto ru = f(u + h, theta);
    const auto rt = f(u, theta + h);
    if (!ru || !rt) return std::nullopt;
    Jacobian2 J;
    J.a = (ru->first - r0.first) / h;
    J.b = (rt->first - r0.first) / h;
    J.c = (ru->second - r0.second) / h;
    J.d = (rt->second - r0.second) / h;
    return J;
}

// Smallest/largest singular values of a 2x2 matrix.
inline std::pair<double, double> singular_values(const Jacobian2& J) {
    const double g11 = J.a * J.a + J.c * J.c;
    const double g22 = J.b * J.b + J.d * J.d;
    const double g12 = J.a * J.b + J.c * J.d;
    const double tr = g11 + g22;
    const double disc = std::sqrt(std::max(0.0, (g11 - g22) * (g11 - g22) + 4 * g12 * g12));
    const double lo = std::max(0.0, (tr - disc) / 2);
    const double hi = (tr + disc) / 2;
    return {std::sqrt(lo), std::sqrt(hi)};
}

// Null direction (unit) of a near-singular 2x2 matrix.
inline std::pair<double, double> null_direction(const Jacobian2& J) {
    // Row with the larger norm defines the constraint; null dir is its perp.
    const double r1 = std::hypot(J.a, J.b);
    const double r2 = std::hypot(J.c, J.d);
    double nx, ny;
    if (r1 >= r2) {
        nx = -J.b;
        ny = J.a;
    } else {
        nx = -J.d;
        ny = J.c;
    }
    const double n = std::hypot(nx, ny);
    if (n == 0.0) return {1.0, 0.0};
    return {nx / n, ny / n};
}

struct PolishedZero {
    double u = 0;
    double theta = 0;
    bool family = false;
    double null_u = 0, null_theta = 0;
};

// Damped Gauss-Newton (Levenberg style) on the 2-D residual.
inline std::optional<PolishedZero> polish(const ResidualFn& f, double u, double theta,
                                          double tol) {
    auto r = f(u, theta);
    if (!r) return std::nullopt;
    double lambda = 1e-10;
    for (int it = 0; it < 80 && res_norm(*r) >= tol; ++it) {
        const auto J = fd_jacobian(f, u, theta, *r);
        if (!J) return std::nullopt;
        bool stepped = false;
        for (int attempt = 0; attempt < 12; ++attempt) {
            // Solve (J^T J + lambda I) delta = -J^T r.
            const double g11 = J->a * J->a + J->c * J->c + lambda;
            const double g22 = J->b * J->b + J->d * J->d + lambda;
            const double g12 = J->a * J->b + J->c * J->d;
            const double b1 = -(J->a * r->first + J->c * r->second);
            const double b2 = -(J->b * r->first + J->d * r->second);
            const double det = g11 * g22 - g12 * g12;
            if (det <= 0) {
                lambda = std::max(lambda * 10, 1e-12);
                continue;
            }
            const double du_step = (b1 * g22 - b2 * g12) / det;
            const double dth_step = (b2 * g11 - b1 * g12) / det;
            const double nu = u + du_step;
            const double nth = theta + dth_step;
            const auto rn = f(nu, nth);
            if (rn && res_norm(*rn) < res_norm(*r)) {
                u = nu;
                theta = nth;
                r = rn;
                lambda = std::max(lambda / 3, 1e-12);
                stepped = true;
                break;
            }
            lambda *= 10;
            if (lambda > 1e8) break;
        }
        if (!stepped) break;
    }
    if (res_norm(*r) >= tol) return std::nullopt;

    PolishedZero z;
    z.u = u;
    z.theta = theta;
    const auto J = fd_jacobian(f, u, theta, *r);
    if (J) {
        const auto [smin, smax] = singular_values(*J);
        if (smin <= 1e-4 * std::max(1.0, smax)) {
            z.family = true;
            auto [nu_dir, nth_dir] = null_direction(*J);
            z.null_u = nu_dir;
            z.null_theta = nth_dir;
        }
    }
    return z;
}

// 1-D re-solve along theta at frozen u (or along u at frozen theta), used to
// pin family samples to grid coordinates.
inline std::optional<PolishedZero> solve_frozen(const ResidualFn& f, double frozen, double x0,
                                                bool theta_free, double tol) {
    auto eval = [&](double x) { return theta_free ? f(frozen, x) : f(x, frozen); };
    auto r = eval(x0);
    if (!r) return std::nullopt;
    double x = x0;
    // Aim two orders below the acceptance tolerance; Newton gets there in a
    // couple of extra steps and the tighter solve keeps samples reproducible
    // across grid resolutions.
    for (int it = 0; it < 60 && res_norm(*r) >= tol * 0.01; ++it) {
        const double h = 1e-8;
        const auto rh = eval(x + h);
        if (!rh) return std::nullopt;
        const double d1 = (rh->first - r->first) / h;
        const double d2 = (rh->second - r->second) / h;
        // Newton on the residual component with the stronger slope.
        double step;
        if (std::abs(d1) >= std::abs(d2)) {
            if (d1 == 0.0) return std::nullopt;
            step = -r->first / d1;
        } else {
            if (d2 == 0.0) return std::nullopt;
            step = -r->second / d2;
        }
        x += std::clamp(step, -0.1, 0.1);
        const auto rn = eval(x);
        if (!rn) return std::nullopt;
        r = rn;
    }
    if (res_norm(*r) >= tol) return std::nullopt;
    PolishedZero z;
    z.u = theta_free ? frozen : x;
    z.theta = theta_free ? x : frozen;
    z.family = true;
    z.null_u = theta_free ? 1.0 : 0.0;
    z.null_theta = theta_free ? 0.0 : 1.0;
    return z;
}

// Point-set string of the curve image under one isometry (dihedral element,
// optional face swap). Coordinates quantized at 1e-7 * circumradius; segment
// endpoints and the segment list are sorted, which absorbs cyclic shift and
// reversal.
inline std::string set_form(const ClosedGeodesic& g, int k, bool mirrored, bool swapped) {
    const double q = 1e-7 * g.spec.circumradius;
    std::vector<std::array<long long, 5>> items;
    items.reserve(g.segments.size());
    for (const Segment& s : g.segments) {
        const Vec2 a = apply_dihedral(g.spec, s.start, k, mirrored);
        const Vec2 b = apply_dihedral(g.spec, s.end, k, mirrored);
        const Face f = swapped ? opposite(s.face) : s.face;
        std::array<long long, 2> pa{std::llround(a.x / q), std::llround(a.y / q)};
        std::array<long long, 2> pb{std::llround(b.x / q), std::llround(b.y / q)};
        if (pb < pa) std::swap(pa, pb);
        items.push_back({static_cast<long long>(f), pa[0], pa[1], pb[0], pb[1]});
    }
    std::sort(items.begin(), items.end());
    std::ostringstream os;
    for (const auto& it : items)
        os << it[0] << ',' << it[1] << ',' << it[2] << ',' << it[3] << ',' << it[4] << ';';
    return os.str();
}

// Canonical string of a curve as a point set of X_n, minimized over the full
// isometry group.
inline std::string canonical_set_form(const ClosedGeodesic& g) {
    std::string best;
    for (int k = 0; k < g.spec.n; ++k)
        for (int mir = 0; mir < 2; ++mir)
            for (int sw = 0; sw < 2; ++sw) {
                std::string s = set_form(g, k, mir != 0, sw != 0);
                if (best.empty() || s < best) best = std::move(s);
            }
    return best;
}

// Number of distinct point sets in the isometry orbit of the curve.
inline int orbit_copy_count(const ClosedGeodesic& g) {
    std::set<std::string> images;
    for (int k = 0; k < g.spec.n; ++k)
        for (int mir = 0; mir < 2; ++mir)
            for (int sw = 0; sw < 2; ++sw) images.insert(set_form(g, k, mir != 0, sw != 0));
    return static_cast<int>(images.size());
}

// Build the period-m closed geodesic for a polished zero; nullopt when the
// trace fails to close smoothly at exactly m segments (e.g. a shorter
// primitive period).
inline std::optional<ClosedGeodesic> build_curve(const PolygonSpec& spec, double u, double theta,
                                                 int m) {
    const auto [start, dir] = launch_from_edge(spec, 0, u, theta);
    TraceOptions opts;
    opts.max_segments = m;
    const TraceOutcome out = trace(spec, start, dir, opts);
    if (out.kind != TraceOutcome::Kind::Closed) return std::nullopt;
    if (static_cast<int>(out.path.segments.size()) != m) return std::nullopt;
    return close_path(out.path);
}

// Image of a curve under one isometry of the surface, optionally traversed
// in the reversed orientation.
inline ClosedGeodesic transform_curve(const ClosedGeodesic& g, int k, bool mirrored, bool swapped,
                                      bool reversed) {
    const int m = g.period();
    std::vector<Segment> segments;
    segments.reserve(m);
    for (int i = 0; i < m; ++i) {
        const Segment& s = reversed ? g.segments[g.mod(-i)] : g.segments[i];
        const Vec2 a = apply_dihedral(g.spec, reversed ? s.end : s.start, k, mirrored);
        const Vec2 b = apply_dihedral(g.spec, reversed ? s.start : s.end, k, mirrored);
        segments.emplace_back(swapped ? opposite(s.face) : s.face, a, b);
    }
    return assemble_closed(g.spec, std::move(segments));
}

// Same curve re-anchored so that segment `anchor` comes first.
inline ClosedGeodesic rotate_curve(const ClosedGeodesic& g, int anchor) {
    const int m = g.period();
    std::vector<Segment> segments;
    segments.reserve(m);
    for (int i = 0; i < m; ++i) segments.push_back(g.segments[g.mod(anchor + i)]);
    return assemble_closed(g.spec, std::move(segments));
}

// The representative shooting data of a curve: among every parameterization
// that launches from edge 0 into the top face (all isometry images, both
// orientations, any starting junction), the one with the smallest launch
// angle, then the smallest offset. This pins symmetric copies of one family
// to a common parameterization.
inline std::pair<ShootingState, ClosedGeodesic> canonical_launch(const ClosedGeodesic& g) {
    const PolygonSpec& spec = g.spec;
    const int m = g.period();
    bool have = false;
    double best_theta = 0, best_u = 0;
    ClosedGeodesic best_curve;
    for (int k = 0; k < spec.n; ++k)
        for (int mir = 0; mir < 2; ++mir)
            for (int sw = 0; sw < 2; ++sw)
                for (int rev = 0; rev < 2; ++rev) {
                    const ClosedGeodesic image =
                        transform_curve(g, k, mir != 0, sw != 0, rev != 0);
                    for (int j = 0; j < m; ++j) {
                        if (image.junction_edge(j) != 0) continue;
                        if (image.segments[j].face != Face::Top) continue;
                        const double u = spec.edge_offset(image.junction(j), 0);
                        const Vec2 d = image.segments[j].direction();
                        const double theta = std::atan2(d.dot(spec.edge_inward_normal(0)),
                                                        d.dot(spec.edge_direction(0)));
                        if (!(theta > 0 && theta < kPi)) continue;
                        if (!have || theta < best_theta - 1e-12 ||
                            (theta < best_theta + 1e-12 && u < best_u)) {
                            have = true;
                            best_theta = theta;
                            best_u = u;
                            best_curve = rotate_curve(image, j);
                        }
                    }
                }
    if (!have) throw std::runtime_error("curve has no launch representation on edge 0");
    ShootingState state{0, best_u, best_theta, m};
    return {state, std::move(best_curve)};
}

}  // namespace detail

/// Scan an (nu x ntheta) grid over launch data for period-m closed geodesics,
/// polish every seed, deduplicate by symmetry, and sample families at grid
/// resolution. m must be even (faces must alternate back to the start).
inline GeodesicCatalog find_closed_geodesics(const PolygonSpec& spec, int m, int nu = 256,
                                             int ntheta = 256,
                                             const SearchOptions& options = {}) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("period must be even and >= 2");
    if (nu < 16 || ntheta < 16) throw std::invalid_argument("seed grid too coarse (< 16 x 16)");

    GeodesicCatalog catalog;
    catalog.spec = spec;
    catalog.period = m;
    catalog.grid_u = nu;
    catalog.grid_theta = ntheta;

    const detail::ResidualFn fn{spec, m};

    // Residuals at the interior grid nodes u = i/nu, theta = j*pi/ntheta.
    const double NaN = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> rdu(static_cast<size_t>(nu + 1) * (ntheta + 1), NaN);
    std::vector<double> rdt(static_cast<size_t>(nu + 1) * (ntheta + 1), NaN);
    auto idx = [&](int i, int j) { return static_cast<size_t>(i) * (ntheta + 1) + j; };
    for (int i = 1; i < nu; ++i)
        for (int j = 1; j < ntheta; ++j) {
            const auto r = fn(static_cast<double>(i) / nu, kPi * j / ntheta);
            if (r) {
                rdu[idx(i, j)] = r->first;
                rdt[idx(i, j)] = r->second;
            } else {
                ++catalog.excluded_cells;
            }
        }

    // Seed cells: both residual components straddle zero over the four
    // corners (an identically vanishing component counts as straddling).
    std::vector<std::pair<double, double>> seeds;
    const double z = 1e-13;
    for (int i = 1; i + 1 < nu; ++i)
        for (int j = 1; j + 1 < ntheta; ++j) {
            const size_t c[4] = {idx(i, j), idx(i + 1, j), idx(i, j + 1), idx(i + 1, j + 1)};
            bool valid = true;
            double ulo = 1e300, uhi = -1e300, tlo = 1e300, thi = -1e300;
            for (size_t cc : c) {
                if (std::isnan(rdu[cc])) {
                    valid = false;
                    break;
                }
                ulo = std::min(ulo, rdu[cc]);
                uhi = std::max(uhi, rdu[cc]);
                tlo = std::min(tlo, rdt[cc]);
                thi = std::max(thi, rdt[cc]);
            }
            if (!valid) continue;
            if (ulo <= z && uhi >= -z && tlo <= z && thi >= -z)
                seeds.emplace_back((i + 0.5) / nu, kPi * (j + 0.5) / ntheta);
        }

    // Polish seeds. Family members (rank-deficient Jacobian) are re-solved
    // with the family-direction coordinate frozen at both neighboring grid
    // values, so families come out sampled at grid resolution without
    // coverage gaps.
    std::vector<detail::PolishedZero> zeros;
    for (const auto& [su, stheta] : seeds) {
        auto zp = detail::polish(fn, su, stheta, options.polish_tol);
        if (!zp) continue;
        if (zp->family) {
            bool snapped_any = false;
            if (std::abs(zp->null_u) >= std::abs(zp->null_theta)) {
                for (double ug : {std::floor(zp->u * nu) / nu, std::ceil(zp->u * nu) / nu}) {
                    ug = std::clamp(ug, 1.0 / nu, (nu - 1.0) / nu);
                    if (auto s = detail::solve_frozen(fn, ug, zp->theta, /*theta_free=*/true,
                                                      options.polish_tol)) {
                        zeros.push_back(*s);
                        snapped_any = true;
                    }
                }
            } else {
                for (double tg : {std::floor(zp->theta * ntheta / kPi) * kPi / ntheta,
                                  std::ceil(zp->theta * ntheta / kPi) * kPi / ntheta}) {
                    tg = std::clamp(tg, kPi / ntheta, kPi * (ntheta - 1) / ntheta);
                    if (auto s = detail::solve_frozen(fn, tg, zp->u, /*theta_free=*/false,
                                                      options.polish_tol)) {
                        zeros.push_back(*s);
                        snapped_any = true;
                    }
                }
            }
            if (snapped_any) continue;
        }
        zeros.push_back(*zp);
    }
    catalog.raw_zero_count = static_cast<int>(zeros.size());

    // Deduplicate zeros in shooting coordinates (many seeds converge to the
    // same point).
    auto dedup_zeros = [](std::vector<detail::PolishedZero> zs) {
        std::sort(zs.begin(), zs.end(), [](const auto& a, const auto& b) {
            if (a.u != b.u) return a.u < b.u;
            return a.theta < b.theta;
        });
        std::vector<detail::PolishedZero> out;
        for (const auto& zp : zs) {
            bool dup = false;
            for (const auto& uz : out)
                if (std::abs(uz.u - zp.u) < 1e-6 && std::abs(uz.theta - zp.theta) < 1e-6) {
                    dup = true;
                    break;
                }
            if (!dup) out.push_back(zp);
        }
        return out;
    };

    // Continuation sweep: walk every family from its seeds node by node, so
    // a connected family is sampled at every reachable grid value even where
    // individual cells failed to seed.
    {
        const std::vector<detail::PolishedZero> bases = dedup_zeros(zeros);
        auto bucket = [](double th) { return std::llround(th * 1e4); };
        std::set<std::pair<long long, int>> visited;
        for (const auto& z : bases) {
            if (!z.family) continue;
            if (std::abs(z.null_u) >= std::abs(z.null_theta)) {
                const int i0 = static_cast<int>(std::lround(z.u * nu));
                for (int dir : {1, -1}) {
                    double th = z.theta;
                    for (int i = i0 + dir; i >= 1 && i <= nu - 1; i += dir) {
                        if (visited.count({bucket(th), i})) break;
                        const auto s = detail::solve_frozen(fn, static_cast<double>(i) / nu, th,
                                                            /*theta_free=*/true,
                                                            options.polish_tol);
                        if (!s) break;
                        visited.insert({bucket(s->theta), i});
                        zeros.push_back(*s);
                        th = s->theta;
                    }
                }
            } else {
                const int j0 = static_cast<int>(std::lround(z.theta * ntheta / kPi));
                for (int dir : {1, -1}) {
                    double uu = z.u;
                    for (int j = j0 + dir; j >= 1 && j <= ntheta - 1; j += dir) {
                        if (visited.count({bucket(uu), -j})) break;
                        const auto s = detail::solve_frozen(fn, kPi * j / ntheta, uu,
                                                            /*theta_free=*/false,
                                                            options.polish_tol);
                        if (!s) break;
                        visited.insert({bucket(s->u), -j});
                        zeros.push_back(*s);
                        uu = s->u;
                    }
                }
            }
        }
    }
    const std::vector<detail::PolishedZero> unique_zeros = dedup_zeros(std::move(zeros));

    struct Entry {
        bool family = false;
        ShootingState state;
        ClosedGeodesic curve;
    };
    std::map<std::string, Entry> by_canon;
    for (const auto& zp : unique_zeros) {
        auto curve = detail::build_curve(spec, zp.u, zp.theta, m);
        if (!curve) continue;
        std::string canon = detail::canonical_set_form(*curve);
        if (by_canon.find(canon) != by_canon.end()) continue;
        auto [state, canonical] = detail::canonical_launch(*curve);
        by_canon.emplace(std::move(canon), Entry{zp.family, state, std::move(canonical)});
    }

    // Group family members into classes by launch angle; isolated zeros form
    // singleton classes.
    std::vector<Entry> family_entries, isolated_entries;
    for (auto& [canon, e] : by_canon)
        (e.family ? family_entries : isolated_entries).push_back(std::move(e));
    auto by_theta_u = [](const Entry& a, const Entry& b) {
        if (a.state.theta != b.state.theta) return a.state.theta < b.state.theta;
        return a.state.u < b.state.u;
    };
    std::sort(family_entries.begin(), family_entries.end(), by_theta_u);
    std::sort(isolated_entries.begin(), isolated_entries.end(), by_theta_u);

    auto make_curve = [&](Entry& e) {
        CatalogCurve cc;
        cc.state = e.state;
        cc.num_copies = detail::orbit_copy_count(e.curve);
        cc.curve = std::move(e.curve);
        if (options.compute_minind)
            cc.minind = minimizing_index(cc.curve, options.k_max, options.verify_grid);
        return cc;
    };

    for (size_t i = 0; i < family_entries.size();) {
        CatalogClass cls;
        cls.is_family = true;
        const double theta0 = family_entries[i].state.theta;
        size_t j = i;
        while (j < family_entries.size() &&
               std::abs(family_entries[j].state.theta - theta0) < 1e-4)
            ++j;
        for (size_t k = i; k < j; ++k) cls.members.push_back(make_curve(family_entries[k]));
        std::sort(cls.members.begin(), cls.members.end(),
                  [](const CatalogCurve& a, const CatalogCurve& b) { return a.state.u < b.state.u; });
        cls.members.erase(std::unique(cls.members.begin(), cls.members.end(),
                                      [](const CatalogCurve& a, const CatalogCurve& b) {
                                          return std::abs(a.state.u - b.state.u) < 1e-8;
                                      }),
                          cls.members.end());
        catalog.classes.push_back(std::move(cls));
        i = j;
    }
    for (auto& e : isolated_entries) {
        CatalogClass cls;
        cls.is_family = false;
        cls.members.push_back(make_curve(e));
        catalog.classes.push_back(std::move(cls));
    }
    return catalog;
}

struct EvidenceRow {
    int period = 0;
    int num_classes = 0;
    int num_members = 0;     // symmetry-class representatives (family samples counted)
    int num_curves = 0;      // distinct isometric copies of isolated/sampled curves
    int min_index = 0;       // 0 = no curve with an index <= k_max at this period
    int lower_bound = 0;     // every curve at this period has index >= this (0 = no curves)
    bool any_without_index = false;
};

/// Aggregated minimizing-index evidence over all even periods up to
/// period_max. The bound it reports is grid-limited numerical evidence, not
/// a proof: the search can only see curves its seed grid resolves.
struct EvidenceTable {
    int n = 0;
    int period_max = 0;
    int k_max = 0;
    std::vector<EvidenceRow> rows;
    int table_minimum = 0;  // smallest observed minimizing index, 0 when none
    int lower_bound = 0;    // every found curve has index >= this, 0 when no curves found
    std::string statement;
};

inline EvidenceTable minind_evidence(const PolygonSpec& spec, int period_max, int k_max = 0,
                                     int nu = 256, int ntheta = 256) {
    if (period_max < 2) throw std::invalid_argument("period_max must be >= 2");
    EvidenceTable table;
    table.n = spec.n;
    table.period_max = period_max;
    table.k_max = k_max > 0 ? k_max : 2 * period_max + 2;

    for (int m = 2; m <= period_max; m += 2) {
        SearchOptions opts;
        opts.compute_minind = true;
        opts.k_max = table.k_max;
        const GeodesicCatalog catalog = find_closed_geodesics(spec, m, nu, ntheta, opts);
        EvidenceRow row;
        row.period = m;
        row.num_classes = static_cast<int>(catalog.classes.size());
        for (const auto& cls : catalog.classes)
            for (const auto& member : cls.members) {
                ++row.num_members;
                row.num_curves += member.num_copies;
                // A curve with no index <= k_max still certifies a bound: it
                // failed every k up to k_max.
                const int bound = (member.minind && member.minind->found)
                                      ? member.minind->k_star
                                      : table.k_max + 1;
                if (row.lower_bound == 0 || bound < row.lower_bound) row.lower_bound = bound;
                if (member.minind && member.minind->found) {
                    if (row.min_index == 0 || member.minind->k_star < row.min_index)
                        row.min_index = member.minind->k_star;
                } else {
                    row.any_without_index = true;
                }
            }
        table.rows.push_back(row);
    }

    int total_members = 0;
    bool any_without = false;
    for (const EvidenceRow& row : table.rows) {
        total_members += row.num_members;
        any_without = any_without || row.any_without_index;
        if (row.min_index > 0 && (table.table_minimum == 0 || row.min_index < table.table_minimum))
            table.table_minimum = row.min_index;
        if (row.lower_bound > 0 &&
            (table.lower_bound == 0 || row.lower_bound < table.lower_bound))
            table.lower_bound = row.lower_bound;
    }

    std::ostringstream os;
    if (total_members > 0) {
        os << "Every closed geodesic found with period <= " << period_max
           << " has minimizing index >= " << table.lower_bound
           << " (grid-limited evidence from a " << nu << "x" << ntheta
           << " shooting grid, not a proof";
        if (any_without)
            os << "; curves without a reported index failed every k <= " << table.k_max;
        os << ").";
    } else {
        os << "No closed geodesic with period <= " << period_max << " was found on the " << nu
           << "x" << ntheta << " shooting grid (grid-limited evidence, not a proof).";
    }
    table.statement = os.str();
    return table;
}

}  // namespace dpoly
