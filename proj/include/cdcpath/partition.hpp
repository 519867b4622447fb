#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cdcpath/geometry.hpp"

namespace cdcpath {

// normal . x <= offset with a unit outward normal.
struct Halfspace {
    Point2 normal;
    double offset;
};

// Convex decomposition of the free space. Faces hold ccw vertex ids into
// `points`; `blocked` keeps the obstacle triangles so merge checks need no
// environment.
struct Partition {
    std::vector<Point2> points;
    std::vector<std::vector<int>> faces;
    std::vector<std::array<int, 3>> blocked;
};

Partition partition_from(const Triangulation& tr);

std::vector<Halfspace> face_halfspaces(const Partition& p, int face);
int total_halfspaces(const Partition& p);

// Every face must be a strictly convex ccw polygon whose closure contains no
// ground point besides its own vertices. Throws InternalVertexViolation (or
// DegenerateInput for malformed faces).
void check_internal_vertices(const Partition& p);

enum class MergeReject {
    NotAdjacent,      // faces do not share exactly one edge
    InternalVertex,   // a ground point would end up inside or on the union
    ObstacleOverlap,  // the union would cover blocked space
    FaceOverlap,      // the union is not area-preserving (swallows neighbours)
    NotIbRepresentable,
};

struct MergeOutcome {
    std::optional<Partition> merged;
    std::optional<MergeReject> reject;
    bool ok() const { return merged.has_value(); }
};

// Try to replace faces i and j by their convex union. Checks run in the order
// adjacency, vertex extremality, internal vertices, obstacle overlap, area
// conservation, representability; the first failure is reported.
MergeOutcome merge_faces(const Partition& p, int i, int j);

// Greedy fixpoint: sweep adjacent pairs in index order, restart after every
// successful merge.
Partition merge_all_faces(const Partition& p);

}  // namespace cdcpath
