#include "cdcpath/svg.hpp"

#include <cstdio>

namespace cdcpath {

namespace {

constexpr double kCanvas = 640.0;
constexpr double kMargin = 20.0;

class Canvas {
 public:
    explicit Canvas(const Box& box) : box_(box) {
        const double wx = box.hi.x() - box.lo.x();
        const double wy = box.hi.y() - box.lo.y();
        scale_ = (kCanvas - 2.0 * kMargin) / (wx > wy ? wx : wy);
        body_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
                 "height=\"640\" viewBox=\"0 0 640 640\">\n";
        body_ += "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
    }

    double sx(double x) const { return kMargin + (x - box_.lo.x()) * scale_; }
    double sy(double y) const { return kCanvas - kMargin - (y - box_.lo.y()) * scale_; }

    std::string pt(const Point2& p) const {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f", sx(p.x()), sy(p.y()));
        return buf;
    }

    void polygon(const std::vector<Point2>& pts, const std::string& fill,
                 const std::string& stroke, double width) {
        body_ += "<polygon points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) body_ += ' ';
            body_ += pt(pts[i]);
        }
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "\" fill=\"%s\" stroke=\"%s\" stroke-width=\"%.2f\"/>\n",
                      fill.c_str(), stroke.c_str(), width);
        body_ += buf;
    }

    void line(const Point2& a, const Point2& b, const std::string& stroke, double width) {
        char buf[192];
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                      "stroke=\"%s\" stroke-width=\"%.2f\"/>\n",
                      sx(a.x()), sy(a.y()), sx(b.x()), sy(b.y()), stroke.c_str(), width);
        body_ += buf;
    }

    void circle(const Point2& c, double r, const std::string& fill) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"%s\"/>\n",
                      sx(c.x()), sy(c.y()), r, fill.c_str());
        body_ += buf;
    }

    void text(const Point2& at, const std::string& label, const std::string& fill) {
        char buf[224];
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" fill=\"%s\" "
                      "text-anchor=\"middle\">%s</text>\n",
                      sx(at.x()), sy(at.y()), fill.c_str(), label.c_str());
        body_ += buf;
    }

    std::string finish() { return body_ + "</svg>\n"; }

 private:
    Box box_;
    double scale_;
    std::string body_;
};

std::vector<Point2> face_points(const Partition& p, int face) {
    std::vector<Point2> pts;
    for (int v : p.faces[face]) pts.push_back(p.points[v]);
    return pts;
}

Point2 face_centroid(const Partition& p, int face) {
    Point2 c(0.0, 0.0);
    for (int v : p.faces[face]) c += p.points[v];
    return c / static_cast<double>(p.faces[face].size());
}

void draw_faces(Canvas& canvas, const Partition& p, bool with_labels) {
    for (std::size_t f = 0; f < p.faces.size(); ++f)
        canvas.polygon(face_points(p, static_cast<int>(f)), "#e8eef7", "#9aa7b5", 1.0);
    if (with_labels)
        for (std::size_t f = 0; f < p.faces.size(); ++f)
            canvas.text(face_centroid(p, static_cast<int>(f)), std::to_string(f),
                        "#33506e");
}

void draw_obstacles(Canvas& canvas, const Environment& env) {
    for (const Polygon& poly : env.obstacles)
        canvas.polygon(poly.vertices, "#3b3b3b", "#000000", 2.0);
}

void draw_frame(Canvas& canvas, const Environment& env) {
    const Box& b = env.bounds;
    canvas.polygon({b.lo, {b.hi.x(), b.lo.y()}, b.hi, {b.lo.x(), b.hi.y()}}, "none",
                   "#000000", 2.0);
}

}  // namespace

std::string svg_partition(const Environment& env, const Partition& p) {
    Canvas canvas(env.bounds);
    draw_faces(canvas, p, true);
    draw_obstacles(canvas, env);
    draw_frame(canvas, env);
    return canvas.finish();
}

std::string svg_conflict(const Environment& env, const Partition& p,
                         const ConflictGraph& g) {
    Canvas canvas(env.bounds);
    draw_faces(canvas, p, false);
    draw_obstacles(canvas, env);
    for (const auto& [u, v] : g.edges) canvas.line(p.points[u], p.points[v], "#c0392b", 1.5);
    for (const Point2& v : p.points) canvas.circle(v, 4.0, "#2c3e50");
    draw_frame(canvas, env);
    return canvas.finish();
}

std::string svg_separator(const Environment& env, const Partition& p,
                          const FiniteElementGraph& g, const SeparatorResult& sep) {
    Canvas canvas(env.bounds);
    draw_faces(canvas, p, false);
    draw_obstacles(canvas, env);
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adjacency[u])
            if (u < v) canvas.line(p.points[u], p.points[v], "#b8c4d0", 1.0);
    for (int v : sep.a) canvas.circle(p.points[v], 5.0, "red");
    for (int v : sep.b) canvas.circle(p.points[v], 5.0, "blue");
    for (int v : sep.c) canvas.circle(p.points[v], 5.0, "green");
    draw_frame(canvas, env);
    return canvas.finish();
}

std::string svg_solution(const Environment& env, const std::vector<Point2>& steps,
                         const Point2& start, const Point2& goal) {
    Canvas canvas(env.bounds);
    draw_obstacles(canvas, env);
    for (std::size_t s = 0; s + 1 < steps.size(); ++s)
        canvas.line(steps[s], steps[s + 1], "#7f8c8d", 1.5);
    for (std::size_t s = 0; s < steps.size(); ++s)
        canvas.circle(steps[s], 5.0, s % 2 == 0 ? "#8e44ad" : "#e67e22");
    canvas.circle(start, 7.0, "#27ae60");
    canvas.text({start.x(), start.y() - 0.03}, "start", "#27ae60");
    canvas.circle(goal, 7.0, "#c0392b");
    canvas.text({goal.x(), goal.y() + 0.04}, "goal", "#c0392b");
    draw_frame(canvas, env);
    return canvas.finish();
}

}  // namespace cdcpath
