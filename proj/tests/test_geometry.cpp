#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dpoly/geometry.hpp"
#include "helpers.hpp"

using namespace dpoly;
using Catch::Approx;

TEST_CASE("build_polygon produces the standard regular n-gons") {
    const PolygonSpec sq = build_polygon(4, 1.0);
    CHECK(sq.vertices[0].x == Approx(1.0).margin(1e-15));
    CHECK(sq.vertices[0].y == Approx(0.0).margin(1e-15));
    CHECK(sq.vertices[1].x == Approx(0.0).margin(1e-15));
    CHECK(sq.vertices[1].y == Approx(1.0).margin(1e-15));
    CHECK(sq.vertices[2].x == Approx(-1.0).margin(1e-15));
    CHECK(sq.vertices[3].y == Approx(-1.0).margin(1e-15));
    CHECK(sq.side_length == Approx(std::sqrt(2.0)));
    CHECK(sq.apothem == Approx(std::sqrt(2.0) / 2));

    const PolygonSpec tri = build_polygon(3, 1.0);
    CHECK(tri.apothem == Approx(0.5));
    CHECK(tri.side_length == Approx(std::sqrt(3.0)));

    const PolygonSpec hex = build_polygon(6, 2.0);
    CHECK(hex.side_length == Approx(2.0));
    CHECK(hex.apothem == Approx(std::sqrt(3.0)));
}

TEST_CASE("build_polygon rejects bad input") {
    CHECK_THROWS_AS(build_polygon(2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_polygon(4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_polygon(4, -1.0), std::invalid_argument);
}

TEST_CASE("vertices lie on the circumcircle") {
    for (int n = 3; n <= 8; ++n) {
        const PolygonSpec spec = build_polygon(n, 1.0);
        for (const Vec2& v : spec.vertices) CHECK(v.norm() == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("classify_point distinguishes interior, edge, vertex, outside") {
    const PolygonSpec sq = build_polygon(4, 1.0);

    CHECK(classify_point(sq, {0, 0}).kind == BoundaryLocation::Kind::Interior);

    const BoundaryLocation mid = classify_point(sq, {0.5, 0.5});
    CHECK(mid.kind == BoundaryLocation::Kind::OnEdge);
    CHECK(mid.index == 0);
    CHECK(mid.offset == Approx(0.5).margin(1e-12));

    const BoundaryLocation vtx = classify_point(sq, {0, 1});
    CHECK(vtx.kind == BoundaryLocation::Kind::AtVertex);
    CHECK(vtx.index == 1);

    CHECK(classify_point(sq, {2, 2}).kind == BoundaryLocation::Kind::Outside);
    CHECK(classify_point(sq, {0.51, 0.51}).kind == BoundaryLocation::Kind::Outside);
}

TEST_CASE("classify_point puts every edge midpoint on its own edge") {
    for (int n = 3; n <= 8; ++n) {
        const PolygonSpec spec = build_polygon(n, 1.0);
        for (int j = 0; j < n; ++j) {
            const BoundaryLocation loc = classify_point(spec, spec.edge_midpoint(j));
            REQUIRE(loc.kind == BoundaryLocation::Kind::OnEdge);
            CHECK(loc.index == j);
            CHECK(loc.offset == Approx(0.5).margin(1e-12));
        }
    }
}

TEST_CASE("vertex proximity wins over edge membership") {
    const PolygonSpec sq = build_polygon(4, 1.0);
    // A point on the edge line within vertex tolerance of the corner.
    const Vec2 near_vertex{1e-10, 1.0 - 1e-10};
    CHECK(classify_point(sq, near_vertex).kind == BoundaryLocation::Kind::AtVertex);
}

TEST_CASE("reflect_across_edge matches known mirrors") {
    const PolygonSpec sq = build_polygon(4, 1.0);
    const Vec2 r = reflect_across_edge(sq, 0, {0, 0});
    CHECK(r.x == Approx(1.0).margin(1e-15));
    CHECK(r.y == Approx(1.0).margin(1e-15));

    const Vec2 fixed = reflect_across_edge(sq, 0, {0.5, 0.5});
    CHECK(fixed.x == Approx(0.5).margin(1e-15));
    CHECK(fixed.y == Approx(0.5).margin(1e-15));

    const PolygonSpec tri = build_polygon(3, 1.0);
    const Vec2 t = reflect_across_edge(tri, 1, {0.25, 0.0});  // edge 1 is the line x = -1/2
    CHECK(t.x == Approx(-1.25).margin(1e-12));
    CHECK(t.y == Approx(0.0).margin(1e-12));

    CHECK_THROWS_AS(reflect_across_edge(sq, 4, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(reflect_across_edge(sq, -1, {0, 0}), std::invalid_argument);
}

TEST_CASE("reflecting twice is the identity") {
    std::mt19937 rng(12345);
    for (int n = 3; n <= 8; ++n) {
        const PolygonSpec spec = build_polygon(n, 1.0);
        for (int trial = 0; trial < 200; ++trial) {
            const Vec2 p = testing::random_interior_point(spec, rng);
            for (int j = 0; j < n; ++j) {
                const Vec2 rr = reflect_across_edge(spec, j, reflect_across_edge(spec, j, p));
                CHECK(distance(rr, p) <= 1e-12);
            }
        }
    }
}

TEST_CASE("symmetry_orbit of special points") {
    const PolygonSpec sq = build_polygon(4, 1.0);
    CHECK(symmetry_orbit(sq, {0, 0}).size() == 1);

    const auto mids = symmetry_orbit(sq, {0.5, 0.5});
    CHECK(mids.size() == 4);
    for (const Vec2& m : mids) {
        const BoundaryLocation loc = classify_point(sq, m);
        CHECK(loc.kind == BoundaryLocation::Kind::OnEdge);
        CHECK(loc.offset == Approx(0.5).margin(1e-9));
    }

    const PolygonSpec tri = build_polygon(3, 1.0);
    const auto tri_mids = symmetry_orbit(tri, {0.25, std::sqrt(3.0) / 4});
    CHECK(tri_mids.size() == 3);
}

TEST_CASE("symmetry orbit size divides 2n") {
    std::mt19937 rng(999);
    for (int n = 3; n <= 8; ++n) {
        const PolygonSpec spec = build_polygon(n, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            const auto orbit = symmetry_orbit(spec, testing::random_interior_point(spec, rng));
            CHECK(2 * n % orbit.size() == 0);
        }
    }
}
