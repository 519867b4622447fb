#include "cdcpath/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "predicates.hpp"

namespace cdcpath {

namespace {

bool lex_less(const Point2& a, const Point2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

bool same_point(const Point2& a, const Point2& b) {
    return a.x() == b.x() && a.y() == b.y();
}

}  // namespace

Point2 Box::corner(int i) const {
    switch (((i % 4) + 4) % 4) {
        case 0: return lo;
        case 1: return {hi.x(), lo.y()};
        case 2: return hi;
        default: return {lo.x(), hi.y()};
    }
}

double Polygon::signed_area() const {
    double twice = 0.0;
    const int n = static_cast<int>(vertices.size());
    for (int i = 0; i < n; ++i) {
        const Point2& p = vertices[i];
        const Point2& q = vertices[(i + 1) % n];
        twice += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * twice;
}

Polygon Polygon::ccw() const {
    if (signed_area() >= 0.0) return *this;
    Polygon out;
    out.vertices.assign(vertices.rbegin(), vertices.rend());
    return out;
}

int orient(const Point2& a, const Point2& b, const Point2& c) {
    return detail::orient2d_sign(a.x(), a.y(), b.x(), b.y(), c.x(), c.y());
}

int in_circle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    return detail::incircle_sign(a.x(), a.y(), b.x(), b.y(), c.x(), c.y(), d.x(), d.y());
}

bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
    if (orient(a, b, p) != 0) return false;
    return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
           std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

bool segments_properly_cross(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const int o1 = orient(a, b, c);
    const int o2 = orient(a, b, d);
    const int o3 = orient(c, d, a);
    const int o4 = orient(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

int point_in_triangle(const Point2& a, const Point2& b, const Point2& c, const Point2& p) {
    const int s0 = orient(a, b, p);
    const int s1 = orient(b, c, p);
    const int s2 = orient(c, a, p);
    if (s0 < 0 || s1 < 0 || s2 < 0) return -1;
    return (s0 > 0 && s1 > 0 && s2 > 0) ? 1 : 0;
}

int point_in_polygon(const Polygon& poly, const Point2& p) {
    const auto& v = poly.vertices;
    const int n = static_cast<int>(v.size());
    for (int i = 0; i < n; ++i) {
        if (on_segment(v[i], v[(i + 1) % n], p)) return 0;
    }
    bool inside = false;
    for (int i = 0; i < n; ++i) {
        const Point2& s = v[i];
        const Point2& t = v[(i + 1) % n];
        if ((s.y() > p.y()) == (t.y() > p.y())) continue;
        const int o = orient(s, t, p);
        if (t.y() > s.y() ? o > 0 : o < 0) inside = !inside;
    }
    return inside ? 1 : -1;
}

void Environment::validate() const {
    if (!(bounds.lo.x() < bounds.hi.x()) || !(bounds.lo.y() < bounds.hi.y()))
        throw DegenerateInput("bounds must have positive extent");
    for (const Polygon& obs : obstacles) {
        const auto& v = obs.vertices;
        if (v.size() < 3) throw DegenerateInput("obstacle needs at least 3 vertices");
        if (obs.signed_area() == 0.0) throw DegenerateInput("obstacle has zero area");
        for (const Point2& p : v)
            if (!bounds.contains(p)) throw DegenerateInput("obstacle vertex outside bounds");
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j)
                if (same_point(v[i], v[j])) throw DegenerateInput("repeated obstacle vertex");
    }

    struct Edge {
        Point2 a, b;
    };
    std::vector<Edge> edges;
    for (const Polygon& obs : obstacles) {
        const auto& v = obs.vertices;
        for (std::size_t i = 0; i < v.size(); ++i)
            edges.push_back({v[i], v[(i + 1) % v.size()]});
    }
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j)
            if (segments_properly_cross(edges[i].a, edges[i].b, edges[j].a, edges[j].b))
                throw DegenerateInput("obstacle edges cross");
    for (std::size_t i = 0; i < obstacles.size(); ++i)
        for (std::size_t j = 0; j < obstacles.size(); ++j) {
            if (i == j) continue;
            for (const Point2& p : obstacles[j].vertices)
                if (point_in_polygon(obstacles[i], p) > 0)
                    throw DegenerateInput("obstacles overlap");
        }
}

bool Triangulation::is_free(int tri) const {
    return std::binary_search(free_triangles.begin(), free_triangles.end(), tri);
}

namespace {

struct Tri {
    std::array<int, 3> v{-1, -1, -1};
    std::array<int, 3> nbr{-1, -1, -1};  // nbr[i] lies across the edge opposite v[i]
};

struct Mesh {
    std::vector<Point2> pts;
    std::vector<Tri> tris;
    std::set<std::pair<int, int>> constrained;

    static std::pair<int, int> key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

    bool is_constrained(int a, int b) const { return constrained.count(key(a, b)) != 0; }

    int orient_idx(int a, int b, int c) const { return orient(pts[a], pts[b], pts[c]); }

    // Index i in `other` with tris[other].nbr[i] == t; v[i] is the apex across
    // the shared edge.
    int apex_index(int other, int t) const {
        for (int i = 0; i < 3; ++i)
            if (tris[other].nbr[i] == t) return i;
        throw Error("mesh adjacency corrupted");
    }

    void relink(int t, int old_nbr, int new_nbr) {
        if (t < 0) return;
        for (int i = 0; i < 3; ++i)
            if (tris[t].nbr[i] == old_nbr) {
                tris[t].nbr[i] = new_nbr;
                return;
            }
        throw Error("mesh adjacency corrupted");
    }

    struct Location {
        int tri = -1;
        int edge = -1;  // -1 when strictly interior
    };

    Location locate(const Point2& p) const {
        for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
            const auto& v = tris[t].v;
            const int s0 = orient(pts[v[1]], pts[v[2]], p);
            if (s0 < 0) continue;
            const int s1 = orient(pts[v[2]], pts[v[0]], p);
            if (s1 < 0) continue;
            const int s2 = orient(pts[v[0]], pts[v[1]], p);
            if (s2 < 0) continue;
            if ((s0 == 0) + (s1 == 0) + (s2 == 0) >= 2)
                throw DegenerateInput("duplicate vertex");
            Location loc;
            loc.tri = t;
            if (s0 == 0)
                loc.edge = 0;
            else if (s1 == 0)
                loc.edge = 1;
            else if (s2 == 0)
                loc.edge = 2;
            return loc;
        }
        throw Error("point lies outside the triangulated domain");
    }

    std::optional<std::pair<int, int>> find_edge(int a, int b) const {
        for (int t = 0; t < static_cast<int>(tris.size()); ++t)
            for (int i = 0; i < 3; ++i) {
                const int u = tris[t].v[(i + 1) % 3];
                const int w = tris[t].v[(i + 2) % 3];
                if ((u == a && w == b) || (u == b && w == a)) return std::make_pair(t, i);
            }
        return std::nullopt;
    }

    void split_interior(int t, int p, std::vector<std::pair<int, int>>& suspects) {
        const auto [a, b, c] = tris[t].v;
        const auto [n0, n1, n2] = tris[t].nbr;
        const int t1 = t;
        const int t2 = static_cast<int>(tris.size());
        const int t3 = t2 + 1;
        tris[t1] = Tri{{a, b, p}, {t2, t3, n2}};
        tris.push_back(Tri{{b, c, p}, {t3, t1, n0}});
        tris.push_back(Tri{{c, a, p}, {t1, t2, n1}});
        relink(n0, t, t2);
        relink(n1, t, t3);
        suspects.push_back({t1, 2});
        suspects.push_back({t2, 2});
        suspects.push_back({t3, 2});
    }

    // p lies on edge i of t which has a live neighbor: split both triangles.
    void split_interior_edge(int t, int i, int p, std::vector<std::pair<int, int>>& suspects) {
        const int n = tris[t].nbr[i];
        const int j = apex_index(n, t);
        const int at = tris[t].v[i];
        const int u = tris[t].v[(i + 1) % 3];
        const int w = tris[t].v[(i + 2) % 3];
        const int an = tris[n].v[j];
        const int nw = tris[t].nbr[(i + 2) % 3];  // across (at, u)
        const int nu = tris[t].nbr[(i + 1) % 3];  // across (w, at)
        const int mw = tris[n].nbr[(j + 2) % 3];  // across (an, w)
        const int mu = tris[n].nbr[(j + 1) % 3];  // across (u, an)
        const bool was = is_constrained(u, w);
        const int t1 = t;
        const int t3 = n;
        const int t2 = static_cast<int>(tris.size());
        const int t4 = t2 + 1;
        tris[t1] = Tri{{at, u, p}, {t4, t2, nw}};
        tris[t3] = Tri{{an, w, p}, {t2, t4, mw}};
        tris.push_back(Tri{{at, p, w}, {t3, nu, t1}});
        tris.push_back(Tri{{an, p, u}, {t1, mu, t3}});
        relink(nu, t, t2);
        relink(mu, n, t4);
        if (was) {
            constrained.erase(key(u, w));
            constrained.insert(key(u, p));
            constrained.insert(key(p, w));
        }
        suspects.push_back({t1, 2});
        suspects.push_back({t2, 1});
        suspects.push_back({t3, 2});
        suspects.push_back({t4, 1});
    }

    // p lies on hull edge i of t.
    void split_boundary_edge(int t, int i, int p, std::vector<std::pair<int, int>>& suspects) {
        const int at = tris[t].v[i];
        const int u = tris[t].v[(i + 1) % 3];
        const int w = tris[t].v[(i + 2) % 3];
        const int nw = tris[t].nbr[(i + 2) % 3];
        const int nu = tris[t].nbr[(i + 1) % 3];
        const bool was = is_constrained(u, w);
        const int t1 = t;
        const int t2 = static_cast<int>(tris.size());
        tris[t1] = Tri{{at, u, p}, {-1, t2, nw}};
        tris.push_back(Tri{{at, p, w}, {-1, nu, t1}});
        relink(nu, t, t2);
        if (was) {
            constrained.erase(key(u, w));
            constrained.insert(key(u, p));
            constrained.insert(key(p, w));
        }
        suspects.push_back({t1, 2});
        suspects.push_back({t2, 1});
    }

    // Replace diagonal (u, w) of the quad around edge i of t with (p, d).
    // Afterwards t == (p, u, d) and n == (p, d, w).
    void flip(int t, int i) {
        const int n = tris[t].nbr[i];
        const int j = apex_index(n, t);
        const int p = tris[t].v[i];
        const int u = tris[t].v[(i + 1) % 3];
        const int w = tris[t].v[(i + 2) % 3];
        const int d = tris[n].v[j];
        const int au = tris[t].nbr[(i + 2) % 3];  // across (p, u)
        const int aw = tris[t].nbr[(i + 1) % 3];  // across (w, p)
        const int bu = tris[n].nbr[(j + 1) % 3];  // across (u, d)
        const int bw = tris[n].nbr[(j + 2) % 3];  // across (d, w)
        tris[t] = Tri{{p, u, d}, {bu, n, au}};
        tris[n] = Tri{{p, d, w}, {bw, aw, t}};
        relink(bu, n, t);
        relink(aw, t, n);
    }

    void legalize(std::vector<std::pair<int, int>>& stack) {
        int guard = 0;
        while (!stack.empty()) {
            if (++guard > 200000) throw Error("legalization failed to terminate");
            const auto [t, i] = stack.back();
            stack.pop_back();
            const int n = tris[t].nbr[i];
            if (n < 0) continue;
            const int u = tris[t].v[(i + 1) % 3];
            const int w = tris[t].v[(i + 2) % 3];
            if (is_constrained(u, w)) continue;
            const int d = tris[n].v[apex_index(n, t)];
            const auto& v = tris[t].v;
            if (in_circle(pts[v[0]], pts[v[1]], pts[v[2]], pts[d]) <= 0) continue;
            flip(t, i);
            stack.push_back({t, 0});
            stack.push_back({n, 0});
        }
    }

    void insert_point(int pi) {
        const Location loc = locate(pts[pi]);
        std::vector<std::pair<int, int>> suspects;
        if (loc.edge < 0) {
            split_interior(loc.tri, pi, suspects);
        } else if (tris[loc.tri].nbr[loc.edge] < 0) {
            split_boundary_edge(loc.tri, loc.edge, pi, suspects);
        } else {
            split_interior_edge(loc.tri, loc.edge, pi, suspects);
        }
        legalize(suspects);
    }

    // Mesh vertices strictly inside segment (a, b), ordered from a to b.
    std::vector<int> vertices_on_segment(int a, int b) const {
        std::vector<int> on;
        for (int v = 0; v < static_cast<int>(pts.size()); ++v) {
            if (v == a || v == b) continue;
            if (on_segment(pts[a], pts[b], pts[v])) on.push_back(v);
        }
        const Point2 dir = pts[b] - pts[a];
        const bool by_x = std::abs(dir.x()) >= std::abs(dir.y());
        std::sort(on.begin(), on.end(), [&](int x, int y) {
            const double cx = by_x ? pts[x].x() : pts[x].y();
            const double cy = by_x ? pts[y].x() : pts[y].y();
            return (by_x ? dir.x() : dir.y()) > 0 ? cx < cy : cx > cy;
        });
        return on;
    }

    // Edges whose interiors the open segment (a, b) crosses, in walk order.
    std::deque<std::pair<int, int>> crossing_edges(int a, int b) const {
        int start = -1, right = -1, left = -1;
        for (int t = 0; t < static_cast<int>(tris.size()) && start < 0; ++t) {
            for (int i = 0; i < 3; ++i) {
                if (tris[t].v[i] != a) continue;
                const int cu = tris[t].v[(i + 1) % 3];
                const int cw = tris[t].v[(i + 2) % 3];
                if (orient_idx(a, cu, b) > 0 && orient_idx(a, cw, b) < 0) {
                    start = t;
                    right = cu;
                    left = cw;
                }
                break;
            }
        }
        if (start < 0) throw Error("no triangle leads toward the constrained segment");

        std::deque<std::pair<int, int>> run;
        auto note = [&](int u, int w) {
            if (is_constrained(u, w)) throw DegenerateInput("constrained segments cross");
            run.push_back(key(u, w));
        };
        note(right, left);
        int cur = start;
        int guard = 0;
        while (true) {
            if (++guard > static_cast<int>(tris.size()) + 16)
                throw Error("constraint walk failed to reach its endpoint");
            int ei = -1;
            for (int i = 0; i < 3; ++i) {
                const int p1 = tris[cur].v[(i + 1) % 3];
                const int p2 = tris[cur].v[(i + 2) % 3];
                if ((p1 == right && p2 == left) || (p1 == left && p2 == right)) {
                    ei = i;
                    break;
                }
            }
            if (ei < 0) throw Error("constraint walk lost the crossing edge");
            const int nxt = tris[cur].nbr[ei];
            if (nxt < 0) throw Error("constraint walk left the domain");
            const int x = tris[nxt].v[apex_index(nxt, cur)];
            if (x == b) break;
            const int s = orient_idx(a, b, x);
            if (s == 0) throw Error("vertex lies on a constrained segment");
            if (s > 0)
                left = x;
            else
                right = x;
            note(right, left);
            cur = nxt;
        }
        return run;
    }

    // Sloan-style recovery: flip crossing edges until (a, b) is present.
    void recover_segment(int a, int b) {
        if (find_edge(a, b)) {
            constrained.insert(key(a, b));
            return;
        }
        std::deque<std::pair<int, int>> q = crossing_edges(a, b);
        int guard = 0;
        const int limit = 1000 + 100 * static_cast<int>(tris.size());
        while (!q.empty()) {
            if (++guard > limit) throw Error("constraint recovery failed to converge");
            const auto [u, w] = q.front();
            q.pop_front();
            const auto loc = find_edge(u, w);
            if (!loc) continue;  // removed by an earlier flip
            const auto [t, i] = *loc;
            const int n = tris[t].nbr[i];
            if (n < 0) throw Error("constraint recovery reached the hull");
            const int p = tris[t].v[i];
            const int uu = tris[t].v[(i + 1) % 3];
            const int ww = tris[t].v[(i + 2) % 3];
            const int d = tris[n].v[apex_index(n, t)];
            if (orient_idx(p, uu, d) <= 0 || orient_idx(p, d, ww) <= 0) {
                q.push_back({u, w});  // quad not convex yet
                continue;
            }
            flip(t, i);
            if (p != a && p != b && d != a && d != b &&
                segments_properly_cross(pts[a], pts[b], pts[p], pts[d]))
                q.push_back(key(p, d));
        }
        if (!find_edge(a, b)) throw Error("constraint recovery failed");
        constrained.insert(key(a, b));
    }

    void mark_hull_constrained() {
        for (const Tri& t : tris)
            for (int i = 0; i < 3; ++i)
                if (t.nbr[i] < 0) constrained.insert(key(t.v[(i + 1) % 3], t.v[(i + 2) % 3]));
    }

    // Lawson sweep to the constrained Delaunay fixpoint.
    void restore_delaunay() {
        int rounds = 0;
        bool changed = true;
        while (changed) {
            if (++rounds > 1000) throw Error("triangulation failed to converge");
            changed = false;
            for (int t = 0; t < static_cast<int>(tris.size()); ++t)
                for (int i = 0; i < 3; ++i) {
                    const int n = tris[t].nbr[i];
                    if (n < t) continue;  // each interior edge once
                    const int u = tris[t].v[(i + 1) % 3];
                    const int w = tris[t].v[(i + 2) % 3];
                    if (is_constrained(u, w)) continue;
                    const int p = tris[t].v[i];
                    const int d = tris[n].v[apex_index(n, t)];
                    const auto& v = tris[t].v;
                    if (in_circle(pts[v[0]], pts[v[1]], pts[v[2]], pts[d]) <= 0) continue;
                    if (orient_idx(p, u, d) <= 0 || orient_idx(p, d, w) <= 0) continue;
                    flip(t, i);
                    changed = true;
                }
        }
    }
};

Mesh build_mesh(const std::vector<Point2>& input, const Box& bounds) {
    std::vector<Point2> pts;
    pts.reserve(input.size() + 4);
    for (int i = 0; i < 4; ++i) pts.push_back(bounds.corner(i));
    pts.insert(pts.end(), input.begin(), input.end());
    std::sort(pts.begin(), pts.end(), lex_less);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (std::max(std::abs(pts[i].x() - pts[j].x()), std::abs(pts[i].y() - pts[j].y())) <=
                1e-12)
                throw DegenerateInput("duplicate vertices");

    Mesh mesh;
    mesh.pts = pts;
    auto index_of = [&](const Point2& p) {
        const auto it = std::lower_bound(pts.begin(), pts.end(), p, lex_less);
        if (it == pts.end() || !same_point(*it, p)) throw Error("vertex lookup failed");
        return static_cast<int>(it - pts.begin());
    };

    std::array<int, 4> corner{};
    for (int i = 0; i < 4; ++i) corner[i] = index_of(bounds.corner(i));
    mesh.tris.push_back(Tri{{corner[0], corner[1], corner[2]}, {-1, 1, -1}});
    mesh.tris.push_back(Tri{{corner[0], corner[2], corner[3]}, {-1, -1, 0}});

    std::vector<char> seeded(pts.size(), 0);
    for (int i = 0; i < 4; ++i) seeded[corner[i]] = 1;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i)
        if (!seeded[i]) mesh.insert_point(i);
    return mesh;
}

Triangulation finalize(const Mesh& mesh, const std::vector<Polygon>& obstacles) {
    struct Face {
        std::array<int, 3> v;
        bool free;
    };
    std::vector<Face> faces;
    for (const Tri& t : mesh.tris) {
        std::array<int, 3> v = t.v;
        const int k = static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
        const std::array<int, 3> rotated{v[k], v[(k + 1) % 3], v[(k + 2) % 3]};
        const Point2 centroid =
            (mesh.pts[v[0]] + mesh.pts[v[1]] + mesh.pts[v[2]]) / 3.0;
        bool free = true;
        for (const Polygon& obs : obstacles)
            if (point_in_polygon(obs, centroid) >= 0) {
                free = false;
                break;
            }
        faces.push_back({rotated, free});
    }
    std::sort(faces.begin(), faces.end(),
              [](const Face& a, const Face& b) { return a.v < b.v; });

    Triangulation out;
    out.vertices = mesh.pts;
    for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
        out.triangles.push_back(faces[i].v);
        if (faces[i].free) out.free_triangles.push_back(i);
    }
    out.constrained_edges.assign(mesh.constrained.begin(), mesh.constrained.end());
    return out;
}

}  // namespace

Triangulation constrained_delaunay(const Environment& env) {
    env.validate();

    std::vector<Polygon> obstacles;
    obstacles.reserve(env.obstacles.size());
    for (const Polygon& obs : env.obstacles) obstacles.push_back(obs.ccw());

    std::vector<Point2> input;
    for (const Polygon& obs : obstacles)
        input.insert(input.end(), obs.vertices.begin(), obs.vertices.end());

    Mesh mesh = build_mesh(input, env.bounds);
    auto index_of = [&](const Point2& p) {
        const auto it = std::lower_bound(mesh.pts.begin(), mesh.pts.end(), p, lex_less);
        if (it == mesh.pts.end() || !same_point(*it, p)) throw Error("vertex lookup failed");
        return static_cast<int>(it - mesh.pts.begin());
    };

    for (const Polygon& obs : obstacles) {
        const auto& v = obs.vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const int a = index_of(v[i]);
            const int b = index_of(v[(i + 1) % v.size()]);
            int prev = a;
            for (int mid : mesh.vertices_on_segment(a, b)) {
                mesh.recover_segment(prev, mid);
                prev = mid;
            }
            mesh.recover_segment(prev, b);
        }
    }
    mesh.mark_hull_constrained();
    mesh.restore_delaunay();
    return finalize(mesh, obstacles);
}

Triangulation triangulate_points(const std::vector<Point2>& points, const Box& bounds) {
    if (!(bounds.lo.x() < bounds.hi.x()) || !(bounds.lo.y() < bounds.hi.y()))
        throw DegenerateInput("bounds must have positive extent");
    for (const Point2& p : points)
        if (!bounds.contains(p)) throw DegenerateInput("point outside bounds");

    Mesh mesh = build_mesh(points, bounds);
    mesh.mark_hull_constrained();
    mesh.restore_delaunay();
    return finalize(mesh, {});
}

}  // namespace cdcpath
