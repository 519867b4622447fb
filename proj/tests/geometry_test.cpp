#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "cdcpath/geometry.hpp"
#include "test_support.hpp"

using namespace cdcpath;
namespace ts = cdcpath::testsup;

namespace {

int sign_i128(__int128 v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

int orient_oracle(long long ax, long long ay, long long bx, long long by, long long cx,
                  long long cy) {
    const __int128 det = static_cast<__int128>(bx - ax) * (cy - ay) -
                         static_cast<__int128>(by - ay) * (cx - ax);
    return sign_i128(det);
}

int incircle_oracle(long long ax, long long ay, long long bx, long long by, long long cx,
                    long long cy, long long dx, long long dy) {
    const __int128 adx = ax - dx, ady = ay - dy;
    const __int128 bdx = bx - dx, bdy = by - dy;
    const __int128 cdx = cx - dx, cdy = cy - dy;
    const __int128 alift = adx * adx + ady * ady;
    const __int128 blift = bdx * bdx + bdy * bdy;
    const __int128 clift = cdx * cdx + cdy * cdy;
    const __int128 det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                         clift * (adx * bdy - bdx * ady);
    return sign_i128(det);
}

Environment empty_square() {
    Environment env;
    env.bounds = Box{{0.0, 0.0}, {1.0, 1.0}};
    return env;
}

Polygon poly(std::initializer_list<Point2> pts) {
    Polygon p;
    p.vertices.assign(pts.begin(), pts.end());
    return p;
}

Environment annulus_env() {
    Environment env = empty_square();
    env.obstacles.push_back(
        poly({{0.4, 0.4}, {0.6, 0.4}, {0.6, 0.6}, {0.4, 0.6}}));
    return env;
}

// Thirteen vertices, fifteen free faces: box plus a quad and a pentagon.
Environment two_obstacle_env() {
    Environment env = empty_square();
    env.obstacles.push_back(
        poly({{0.15, 0.45}, {0.35, 0.4}, {0.4, 0.6}, {0.2, 0.65}}));
    env.obstacles.push_back(
        poly({{0.55, 0.25}, {0.75, 0.2}, {0.85, 0.35}, {0.7, 0.5}, {0.55, 0.45}}));
    return env;
}

}  // namespace

TEST_CASE("orientation predicate matches an integer oracle") {
    std::mt19937 rng(20240811u);
    std::uniform_int_distribution<long long> coord(-30, 30);
    for (int it = 0; it < 5000; ++it) {
        const long long ax = coord(rng), ay = coord(rng), bx = coord(rng), by = coord(rng),
                        cx = coord(rng), cy = coord(rng);
        const int expected = orient_oracle(ax, ay, bx, by, cx, cy);
        const Point2 a(static_cast<double>(ax), static_cast<double>(ay));
        const Point2 b(static_cast<double>(bx), static_cast<double>(by));
        const Point2 c(static_cast<double>(cx), static_cast<double>(cy));
        CAPTURE(ax);
        CAPTURE(ay);
        CAPTURE(bx);
        CAPTURE(by);
        CAPTURE(cx);
        CAPTURE(cy);
        REQUIRE(orient(a, b, c) == expected);
    }
}

TEST_CASE("orientation predicate resolves one-ulp perturbations") {
    const Point2 a(0.0, 0.0);
    const Point2 b(1.0, 1.0);
    CHECK(orient(a, b, Point2(2.0, 2.0)) == 0);
    const double ulp = std::ldexp(1.0, -51);  // spacing of doubles at 2.0
    CHECK(orient(a, b, Point2(2.0, 2.0 + ulp)) == 1);
    CHECK(orient(a, b, Point2(2.0, 2.0 - ulp / 2.0)) == -1);
    CHECK(orient(Point2(0.5, 0.5), Point2(12.0, 12.0), Point2(24.0, 24.0)) == 0);
}

TEST_CASE("incircle predicate matches an integer oracle") {
    std::mt19937 rng(20240812u);
    std::uniform_int_distribution<long long> coord(-20, 20);
    for (int it = 0; it < 5000; ++it) {
        long long c[8];
        for (auto& v : c) v = coord(rng);
        const int expected = incircle_oracle(c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7]);
        const int got = in_circle(Point2(c[0], c[1]), Point2(c[2], c[3]), Point2(c[4], c[5]),
                                  Point2(c[6], c[7]));
        CAPTURE(c[0]);
        CAPTURE(c[1]);
        CAPTURE(c[2]);
        CAPTURE(c[3]);
        CAPTURE(c[4]);
        CAPTURE(c[5]);
        CAPTURE(c[6]);
        CAPTURE(c[7]);
        REQUIRE(got == expected);
    }
}

TEST_CASE("incircle predicate resolves near-cocircular points") {
    const Point2 a(1.0, 0.0), b(0.0, 1.0), c(-1.0, 0.0);
    REQUIRE(orient(a, b, c) == 1);
    CHECK(in_circle(a, b, c, Point2(0.0, -1.0)) == 0);
    CHECK(in_circle(a, b, c, Point2(0.0, -1.0 + std::ldexp(1.0, -53))) == 1);
    CHECK(in_circle(a, b, c, Point2(0.0, -1.0 - std::ldexp(1.0, -52))) == -1);
    CHECK(in_circle(a, b, c, Point2(0.25, 0.25)) == 1);
    CHECK(in_circle(a, b, c, Point2(5.0, 5.0)) == -1);
}

TEST_CASE("segment and polygon point tests") {
    const Point2 a(0.0, 0.0), b(4.0, 2.0);
    CHECK(on_segment(a, b, Point2(2.0, 1.0)));
    CHECK(on_segment(a, b, a));
    CHECK(!on_segment(a, b, Point2(2.0, 1.0 + 1e-12)));
    CHECK(!on_segment(a, b, Point2(6.0, 3.0)));

    CHECK(segments_properly_cross(Point2(0, 0), Point2(2, 2), Point2(0, 2), Point2(2, 0)));
    CHECK(!segments_properly_cross(Point2(0, 0), Point2(2, 2), Point2(2, 2), Point2(3, 0)));
    CHECK(!segments_properly_cross(Point2(0, 0), Point2(2, 2), Point2(1, 1), Point2(3, 0)));

    const Polygon sq = poly({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    CHECK(point_in_polygon(sq, Point2(1, 1)) == 1);
    CHECK(point_in_polygon(sq, Point2(2, 1)) == 0);
    CHECK(point_in_polygon(sq, Point2(0, 0)) == 0);
    CHECK(point_in_polygon(sq, Point2(3, 1)) == -1);
    CHECK(point_in_polygon(sq, Point2(-1, 0)) == -1);

    // L-shape: the notch is outside.
    const Polygon ell = poly({{0, 0}, {3, 0}, {3, 1}, {1, 1}, {1, 3}, {0, 3}});
    CHECK(point_in_polygon(ell, Point2(0.5, 2.5)) == 1);
    CHECK(point_in_polygon(ell, Point2(2.0, 0.5)) == 1);
    CHECK(point_in_polygon(ell, Point2(2.0, 2.0)) == -1);
    CHECK(point_in_polygon(ell, Point2(1.0, 2.0)) == 0);

    CHECK(point_in_triangle(Point2(0, 0), Point2(2, 0), Point2(0, 2), Point2(0.5, 0.5)) == 1);
    CHECK(point_in_triangle(Point2(0, 0), Point2(2, 0), Point2(0, 2), Point2(1, 1)) == 0);
    CHECK(point_in_triangle(Point2(0, 0), Point2(2, 0), Point2(0, 2), Point2(2, 2)) == -1);
}

TEST_CASE("empty square splits into two free triangles") {
    const Triangulation tr = constrained_delaunay(empty_square());
    CHECK(tr.vertices.size() == 4);
    CHECK(tr.triangles.size() == 2);
    CHECK(tr.free_triangles.size() == 2);
    CHECK(tr.constrained_edges.size() == 4);
    CHECK(ts::total_area(tr) == doctest::Approx(1.0).epsilon(1e-12));
    for (int t = 0; t < 2; ++t) CHECK(ts::tri_area(tr, t) > 0.0);
}

TEST_CASE("square obstacle yields the annulus triangulation") {
    const Triangulation tr = constrained_delaunay(annulus_env());
    CHECK(tr.vertices.size() == 8);
    CHECK(ts::hull_vertex_count(tr) == 4);
    CHECK(static_cast<int>(tr.triangles.size()) == ts::euler_triangle_count(8, 4));
    CHECK(tr.free_triangles.size() == 8);
    CHECK(ts::free_area(tr) == doctest::Approx(0.96).epsilon(1e-12));
    CHECK(ts::total_area(tr) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ts::locally_delaunay(tr));

    // The obstacle boundary is constrained.
    const std::set<std::pair<int, int>> cons(tr.constrained_edges.begin(),
                                             tr.constrained_edges.end());
    auto vertex_index = [&](double x, double y) {
        for (int i = 0; i < static_cast<int>(tr.vertices.size()); ++i)
            if (tr.vertices[i].x() == x && tr.vertices[i].y() == y) return i;
        return -1;
    };
    const std::array<int, 4> ring{vertex_index(0.4, 0.4), vertex_index(0.6, 0.4),
                                  vertex_index(0.6, 0.6), vertex_index(0.4, 0.6)};
    for (int i = 0; i < 4; ++i) {
        REQUIRE(ring[i] >= 0);
        const int a = ring[i];
        const int b = ring[(i + 1) % 4];
        CHECK(cons.count({std::min(a, b), std::max(a, b)}) == 1);
    }
}

TEST_CASE("boundary-touching obstacle subdivides the hull") {
    Environment env = empty_square();
    env.obstacles.push_back(poly({{0.4, 0.0}, {0.6, 0.0}, {0.6, 0.2}, {0.4, 0.2}}));
    const Triangulation tr = constrained_delaunay(env);
    CHECK(tr.vertices.size() == 8);
    CHECK(ts::hull_vertex_count(tr) == 6);
    CHECK(static_cast<int>(tr.triangles.size()) == ts::euler_triangle_count(8, 6));
    CHECK(tr.free_triangles.size() == 6);
    CHECK(ts::free_area(tr) == doctest::Approx(0.96).epsilon(1e-12));
    CHECK(ts::locally_delaunay(tr));
}

TEST_CASE("two interior obstacles give fifteen free faces") {
    const Triangulation tr = constrained_delaunay(two_obstacle_env());
    CHECK(tr.vertices.size() == 13);
    CHECK(ts::hull_vertex_count(tr) == 4);
    CHECK(static_cast<int>(tr.triangles.size()) == ts::euler_triangle_count(13, 4));
    CHECK(tr.free_triangles.size() == 15);
    CHECK(ts::total_area(tr) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ts::locally_delaunay(tr));
}

TEST_CASE("triangular obstacle is accepted") {
    Environment env = empty_square();
    env.obstacles.push_back(poly({{0.3, 0.3}, {0.7, 0.3}, {0.5, 0.6}}));
    const Triangulation tr = constrained_delaunay(env);
    CHECK(tr.vertices.size() == 7);
    CHECK(static_cast<int>(tr.triangles.size()) == ts::euler_triangle_count(7, 4));
    CHECK(static_cast<int>(tr.free_triangles.size()) == ts::euler_triangle_count(7, 4) - 1);
    CHECK(ts::locally_delaunay(tr));
}

TEST_CASE("constraints split at collinear through-vertices") {
    Environment env = empty_square();
    env.obstacles.push_back(poly({{0.1, 0.1}, {0.9, 0.1}, {0.5, 0.3}}));
    env.obstacles.push_back(poly({{0.4, 0.02}, {0.6, 0.02}, {0.6, 0.1}, {0.4, 0.1}}));
    const Triangulation tr = constrained_delaunay(env);
    CHECK(tr.vertices.size() == 11);
    CHECK(ts::hull_vertex_count(tr) == 4);
    CHECK(static_cast<int>(tr.triangles.size()) == ts::euler_triangle_count(11, 4));
    CHECK(tr.free_triangles.size() == 11);
    const double blocked = 0.08 + 0.2 * 0.08;
    CHECK(ts::free_area(tr) == doctest::Approx(1.0 - blocked).epsilon(1e-12));
    CHECK(ts::locally_delaunay(tr));
}

TEST_CASE("triangulation is deterministic and orientation-insensitive") {
    const Triangulation t1 = constrained_delaunay(two_obstacle_env());
    const Triangulation t2 = constrained_delaunay(two_obstacle_env());
    CHECK(t1.triangles == t2.triangles);
    CHECK(t1.constrained_edges == t2.constrained_edges);
    CHECK(t1.free_triangles == t2.free_triangles);

    Environment flipped = two_obstacle_env();
    for (Polygon& obs : flipped.obstacles)
        std::reverse(obs.vertices.begin(), obs.vertices.end());
    const Triangulation t3 = constrained_delaunay(flipped);
    CHECK(t1.triangles == t3.triangles);
    CHECK(t1.free_triangles == t3.free_triangles);
}

TEST_CASE("degenerate environments are rejected") {
    Environment env = empty_square();
    env.obstacles.push_back(poly({{0.4, 0.4}, {1.4, 0.4}, {0.6, 0.6}}));
    CHECK_THROWS_AS(constrained_delaunay(env), DegenerateInput);

    env = empty_square();
    env.obstacles.push_back(poly({{0.2, 0.2}, {0.6, 0.2}, {0.6, 0.6}, {0.2, 0.6}}));
    env.obstacles.push_back(poly({{0.4, 0.4}, {0.8, 0.4}, {0.8, 0.8}, {0.4, 0.8}}));
    CHECK_THROWS_AS(constrained_delaunay(env), DegenerateInput);

    env = empty_square();
    env.obstacles.push_back(poly({{0.2, 0.2}, {0.5, 0.2}}));
    CHECK_THROWS_AS(constrained_delaunay(env), DegenerateInput);

    env = empty_square();
    env.obstacles.push_back(poly({{0.2, 0.2}, {0.5, 0.2}, {0.8, 0.2}}));
    CHECK_THROWS_AS(constrained_delaunay(env), DegenerateInput);

    // Bow-tie self-intersection.
    env = empty_square();
    env.obstacles.push_back(poly({{0.2, 0.2}, {0.6, 0.6}, {0.6, 0.2}, {0.2, 0.6}}));
    CHECK_THROWS_AS(constrained_delaunay(env), DegenerateInput);

    // Shared vertex between obstacles collapses to a duplicate point.
    env = empty_square();
    env.obstacles.push_back(poly({{0.2, 0.2}, {0.4, 0.2}, {0.4, 0.4}, {0.2, 0.4}}));
    env.obstacles.push_back(poly({{0.4, 0.4}, {0.6, 0.4}, {0.6, 0.6}, {0.4, 0.6}}));
    CHECK_THROWS_AS(constrained_delaunay(env), DegenerateInput);

    Environment bad_bounds;
    bad_bounds.bounds = Box{{1.0, 0.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(constrained_delaunay(bad_bounds), DegenerateInput);
}

TEST_CASE("plain point-set triangulation") {
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> coord(0.05, 0.95);
    std::vector<Point2> pts;
    for (int i = 0; i < 30; ++i) pts.emplace_back(coord(rng), coord(rng));

    const Box box{{0.0, 0.0}, {1.0, 1.0}};
    const Triangulation tr = triangulate_points(pts, box);
    CHECK(tr.vertices.size() == 34);
    CHECK(ts::hull_vertex_count(tr) == 4);
    CHECK(static_cast<int>(tr.triangles.size()) == ts::euler_triangle_count(34, 4));
    CHECK(tr.free_triangles.size() == tr.triangles.size());
    CHECK(ts::total_area(tr) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ts::locally_delaunay(tr));

    const Triangulation again = triangulate_points(pts, box);
    CHECK(tr.triangles == again.triangles);

    CHECK_THROWS_AS(triangulate_points({Point2(0.5, 0.5), Point2(0.5, 0.5)}, box),
                    DegenerateInput);
    CHECK_THROWS_AS(triangulate_points({Point2(1.5, 0.5)}, box), DegenerateInput);
}
