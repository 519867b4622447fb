#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cdcpath/common.hpp"

namespace cdcpath {

using Point2 = Eigen::Vector2d;

struct Box {
    Point2 lo{0.0, 0.0};
    Point2 hi{1.0, 1.0};

    bool contains(const Point2& p) const {
        return lo.x() <= p.x() && p.x() <= hi.x() && lo.y() <= p.y() && p.y() <= hi.y();
    }
    // Corners in counterclockwise order starting at lo.
    Point2 corner(int i) const;
    double area() const { return (hi.x() - lo.x()) * (hi.y() - lo.y()); }
};

struct Polygon {
    std::vector<Point2> vertices;

    double signed_area() const;
    // Copy with counterclockwise vertex order.
    Polygon ccw() const;
};

// Exact sign of the orientation determinant: +1 if a->b->c turns left.
int orient(const Point2& a, const Point2& b, const Point2& c);

// +1 iff d lies strictly inside the circumcircle of the ccw triangle (a, b, c).
int in_circle(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

// p on the closed segment [a, b].
bool on_segment(const Point2& a, const Point2& b, const Point2& p);

// Open segments (a, b) and (c, d) intersect in a single interior point.
bool segments_properly_cross(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

// +1 strictly inside the ccw triangle, 0 on its boundary, -1 outside.
int point_in_triangle(const Point2& a, const Point2& b, const Point2& c, const Point2& p);

// +1 strictly inside, 0 on the boundary, -1 outside. Polygon may be non-convex.
int point_in_polygon(const Polygon& poly, const Point2& p);

struct Environment {
    Box bounds;
    std::vector<Polygon> obstacles;
    std::optional<std::uint64_t> seed;

    // Throws DegenerateInput on malformed bounds, degenerate polygons,
    // vertices outside the bounds, or obstacles that cross one another.
    void validate() const;
};

struct Triangulation {
    std::vector<Point2> vertices;                        // lexicographic order
    std::vector<std::array<int, 3>> triangles;           // ccw, smallest vertex first
    std::vector<std::pair<int, int>> constrained_edges;  // normalized (lo, hi), sorted
    std::vector<int> free_triangles;                     // ascending indices into triangles

    bool is_free(int tri) const;
};

// Constrained Delaunay triangulation of the environment: vertices are the box
// corners plus all obstacle vertices (no Steiner points), obstacle and hull
// edges are constrained, and every other edge satisfies the empty-circumcircle
// rule. Deterministic for a given environment.
Triangulation constrained_delaunay(const Environment& env);

// Plain Delaunay triangulation of a point set inside a bounding box; the box
// corners join the vertex set and every triangle is free.
Triangulation triangulate_points(const std::vector<Point2>& points, const Box& bounds);

}  // namespace cdcpath
