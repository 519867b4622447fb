#include "cdcpath/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cdcpath/common.hpp"

namespace cdcpath {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << content;
}

namespace {

json point_json(const Point2& p) { return json::array({p.x(), p.y()}); }

Point2 point_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw Error("expected [x, y] pair");
    return Point2(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

std::string env_to_json(const Environment& env) {
    json j;
    j["bounds"] = json::array({point_json(env.bounds.lo), point_json(env.bounds.hi)});
    json obstacles = json::array();
    for (const Polygon& poly : env.obstacles) {
        json ring = json::array();
        for (const Point2& v : poly.vertices) ring.push_back(point_json(v));
        obstacles.push_back(std::move(ring));
    }
    j["obstacles"] = std::move(obstacles);
    if (env.seed) j["seed"] = *env.seed;
    return j.dump(2) + "\n";
}

Environment env_from_json(const std::string& text) {
    const json j = json::parse(text);
    Environment env;
    if (!j.contains("bounds") || !j.contains("obstacles"))
        throw Error("environment JSON needs \"bounds\" and \"obstacles\"");
    env.bounds.lo = point_from(j["bounds"].at(0));
    env.bounds.hi = point_from(j["bounds"].at(1));
    for (const json& ring : j["obstacles"]) {
        Polygon poly;
        for (const json& v : ring) poly.vertices.push_back(point_from(v));
        env.obstacles.push_back(std::move(poly));
    }
    if (j.contains("seed") && !j["seed"].is_null())
        env.seed = j["seed"].get<std::uint64_t>();
    env.validate();
    return env;
}

Environment load_env(const std::string& path) {
    return env_from_json(read_text_file(path));
}

std::string partition_to_json(const Partition& p) {
    json j;
    json vertices = json::array();
    for (const Point2& v : p.points) vertices.push_back(point_json(v));
    j["vertices"] = std::move(vertices);
    json faces = json::array();
    for (const auto& f : p.faces) faces.push_back(f);
    j["faces"] = std::move(faces);
    return j.dump(2) + "\n";
}

std::string conflict_edges_text(const ConflictGraph& g) {
    std::string out;
    for (const auto& [u, v] : g.edges)
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

std::string cover_table_text(const BicliqueCover& cover) {
    std::string out = "Level | A | B\n";
    for (int j = 0; j < cover.depth(); ++j)
        out += std::to_string(j + 1) + " | " + format_index_set(cover.levels[j].a) +
               " | " + format_index_set(cover.levels[j].b) + "\n";
    return out;
}

std::string cover_to_json(const BicliqueCover& cover) {
    json levels = json::array();
    for (const Biclique& level : cover.levels)
        levels.push_back(json{{"a", level.a}, {"b", level.b}});
    return json{{"levels", std::move(levels)}}.dump(2) + "\n";
}

std::string summary_to_json(const ModelSummary& s) {
    return json{{"binaries", s.binaries},
                {"continuous", s.continuous},
                {"inequalities", s.inequalities},
                {"equalities", s.equalities}}
               .dump(2) +
           "\n";
}

std::string bnb_result_to_json(const BnbResult& r) {
    json j;
    switch (r.status) {
        case MilpStatus::Optimal: j["status"] = "optimal"; break;
        case MilpStatus::Infeasible: j["status"] = "infeasible"; break;
        case MilpStatus::TimeLimit: j["status"] = "time-limit"; break;
    }
    j["has_incumbent"] = r.has_incumbent;
    if (r.has_incumbent) {
        j["objective"] = r.objective;
        j["x"] = r.x;
    }
    j["bound"] = r.bound;
    j["gap"] = std::isfinite(r.gap) ? json(r.gap) : json(nullptr);
    j["nodes"] = r.nodes;
    j["seconds"] = r.seconds;
    return j.dump(2) + "\n";
}

}  // namespace cdcpath
