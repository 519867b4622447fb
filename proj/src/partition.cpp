#include "cdcpath/partition.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cdcpath/cdc.hpp"

namespace cdcpath {

namespace {

bool lex_less_pt(const Point2& a, const Point2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

double polygon_area(const std::vector<Point2>& pts) {
    double twice = 0.0;
    const int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i) {
        const Point2& p = pts[i];
        const Point2& q = pts[(i + 1) % n];
        twice += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * twice;
}

std::vector<Point2> gather(const Partition& p, const std::vector<int>& ids) {
    std::vector<Point2> pts;
    pts.reserve(ids.size());
    for (int id : ids) pts.push_back(p.points[id]);
    return pts;
}

// +1 strictly inside the ccw convex polygon, 0 on its boundary, -1 outside.
int point_in_convex(const std::vector<Point2>& hull, const Point2& q) {
    bool boundary = false;
    const int n = static_cast<int>(hull.size());
    for (int i = 0; i < n; ++i) {
        const int o = orient(hull[i], hull[(i + 1) % n], q);
        if (o < 0) return -1;
        if (o == 0) boundary = true;
    }
    return boundary ? 0 : 1;
}

// Strict convex hull (no collinear vertices), ccw, as point ids.
std::vector<int> convex_hull_ids(const Partition& p, std::vector<int> ids) {
    std::sort(ids.begin(), ids.end(),
              [&](int a, int b) { return lex_less_pt(p.points[a], p.points[b]); });
    const int n = static_cast<int>(ids.size());
    if (n < 3) return ids;
    std::vector<int> h(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 &&
               orient(p.points[h[k - 2]], p.points[h[k - 1]], p.points[ids[i]]) <= 0)
            --k;
        h[k++] = ids[i];
    }
    const int lower = k + 1;
    for (int i = n - 2; i >= 0; --i) {  // upper chain
        while (k >= lower &&
               orient(p.points[h[k - 2]], p.points[h[k - 1]], p.points[ids[i]]) <= 0)
            --k;
        h[k++] = ids[i];
    }
    h.resize(k - 1);  // drop the closing copy of the start point
    return h;
}

void rotate_min_first(std::vector<int>& cycle) {
    const auto it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), it, cycle.end());
}

bool is_edge_of(const std::vector<int>& face, int a, int b) {
    const int n = static_cast<int>(face.size());
    for (int k = 0; k < n; ++k) {
        const int u = face[k];
        const int v = face[(k + 1) % n];
        if ((u == a && v == b) || (u == b && v == a)) return true;
    }
    return false;
}

}  // namespace

Partition partition_from(const Triangulation& tr) {
    Partition p;
    p.points = tr.vertices;
    for (int t = 0; t < static_cast<int>(tr.triangles.size()); ++t) {
        const auto& v = tr.triangles[t];
        if (tr.is_free(t))
            p.faces.push_back({v[0], v[1], v[2]});
        else
            p.blocked.push_back(v);
    }
    return p;
}

std::vector<Halfspace> face_halfspaces(const Partition& p, int face) {
    const auto& ids = p.faces.at(face);
    std::vector<Halfspace> rows;
    const int n = static_cast<int>(ids.size());
    rows.reserve(n);
    for (int k = 0; k < n; ++k) {
        const Point2& a = p.points[ids[k]];
        const Point2& b = p.points[ids[(k + 1) % n]];
        const Point2 d = b - a;
        const double len = d.norm();
        if (len == 0.0) throw DegenerateInput("zero-length face edge");
        const Point2 normal(d.y() / len, -d.x() / len);
        rows.push_back({normal, normal.dot(a)});
    }
    return rows;
}

int total_halfspaces(const Partition& p) {
    int total = 0;
    for (const auto& face : p.faces) total += static_cast<int>(face.size());
    return total;
}

void check_internal_vertices(const Partition& p) {
    for (std::size_t f = 0; f < p.faces.size(); ++f) {
        const auto& ids = p.faces[f];
        const int n = static_cast<int>(ids.size());
        if (n < 3) throw DegenerateInput("face with fewer than 3 vertices");
        for (int k = 0; k < n; ++k)
            if (orient(p.points[ids[k]], p.points[ids[(k + 1) % n]],
                       p.points[ids[(k + 2) % n]]) <= 0)
                throw DegenerateInput("face is not strictly convex and ccw");
        const std::vector<Point2> hull = gather(p, ids);
        const std::set<int> members(ids.begin(), ids.end());
        for (int g = 0; g < static_cast<int>(p.points.size()); ++g) {
            if (members.count(g)) continue;
            if (point_in_convex(hull, p.points[g]) >= 0) {
                std::ostringstream msg;
                msg << "ground point " << g + 1 << " lies on face " << f + 1
                    << " without being one of its vertices";
                throw InternalVertexViolation(msg.str());
            }
        }
    }
}

MergeOutcome merge_faces(const Partition& p, int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= static_cast<int>(p.faces.size()) ||
        j >= static_cast<int>(p.faces.size()))
        throw Error("merge_faces: bad face index");
    MergeOutcome out;
    auto reject = [&](MergeReject r) {
        out.reject = r;
        return out;
    };

    std::vector<int> si = p.faces[i];
    std::vector<int> sj = p.faces[j];
    std::sort(si.begin(), si.end());
    std::sort(sj.begin(), sj.end());
    const std::vector<int> shared = set_intersection(si, sj);
    if (shared.size() != 2 || !is_edge_of(p.faces[i], shared[0], shared[1]) ||
        !is_edge_of(p.faces[j], shared[0], shared[1]))
        return reject(MergeReject::NotAdjacent);

    const std::vector<int> uni = set_union(si, sj);
    std::vector<int> hull = convex_hull_ids(p, uni);
    if (hull.size() != uni.size()) return reject(MergeReject::InternalVertex);

    const std::vector<Point2> hull_pts = gather(p, hull);
    const std::set<int> members(uni.begin(), uni.end());
    for (int g = 0; g < static_cast<int>(p.points.size()); ++g) {
        if (members.count(g)) continue;
        if (point_in_convex(hull_pts, p.points[g]) >= 0)
            return reject(MergeReject::InternalVertex);
    }

    for (const auto& bt : p.blocked) {
        const Point2& a = p.points[bt[0]];
        const Point2& b = p.points[bt[1]];
        const Point2& c = p.points[bt[2]];
        bool overlap = point_in_convex(hull_pts, (a + b + c) / 3.0) > 0;
        for (int v : bt)
            overlap = overlap || point_in_convex(hull_pts, p.points[v]) > 0;
        for (const Point2& h : hull_pts) overlap = overlap || point_in_triangle(a, b, c, h) > 0;
        const Point2 tri[3] = {a, b, c};
        const int m = static_cast<int>(hull_pts.size());
        for (int e = 0; e < m && !overlap; ++e)
            for (int te = 0; te < 3; ++te)
                overlap = overlap ||
                          segments_properly_cross(hull_pts[e], hull_pts[(e + 1) % m], tri[te],
                                                  tri[(te + 1) % 3]);
        if (overlap) return reject(MergeReject::ObstacleOverlap);
    }

    const double area_sum =
        polygon_area(gather(p, p.faces[i])) + polygon_area(gather(p, p.faces[j]));
    if (std::abs(polygon_area(hull_pts) - area_sum) > 1e-9)
        return reject(MergeReject::FaceOverlap);

    Partition cand = p;
    rotate_min_first(hull);
    cand.faces[std::min(i, j)] = hull;
    cand.faces.erase(cand.faces.begin() + std::max(i, j));
    if (!is_pairwise_ib_representable(cdc_from_partition(cand)))
        return reject(MergeReject::NotIbRepresentable);

    out.merged = std::move(cand);
    return out;
}

Partition merge_all_faces(const Partition& p) {
    Partition cur = p;
    bool progress = true;
    while (progress) {
        progress = false;
        const int m = static_cast<int>(cur.faces.size());
        for (int i = 0; i < m && !progress; ++i)
            for (int j = i + 1; j < m && !progress; ++j) {
                MergeOutcome out = merge_faces(cur, i, j);
                if (out.ok()) {
                    cur = std::move(*out.merged);
                    progress = true;
                }
            }
    }
    return cur;
}

}  // namespace cdcpath
