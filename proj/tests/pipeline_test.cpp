#include <cstdio>
#include <string>
#include <vector>

#include <doctest.h>

#include "cdcpath/biclique.hpp"
#include "cdcpath/common.hpp"
#include "cdcpath/cdc.hpp"
#include "cdcpath/geometry.hpp"
#include "cdcpath/io.hpp"
#include "cdcpath/partition.hpp"
#include "cdcpath/pipeline.hpp"
#include "cdcpath/svg.hpp"

using namespace cdcpath;

namespace {

Environment empty_square() {
    Environment env;
    env.bounds = Box{{0.0, 0.0}, {1.0, 1.0}};
    return env;
}

// Footstep parameters loose enough that every scenario solves in a handful
// of nodes: one heading (pinned by its assignment equality), no trim reward
// (the columns stay out of the basis), and a wide reach.
FootstepParams easy_steps(int n, double radius = 0.5) {
    FootstepParams fp;
    fp.steps = n;
    fp.step_radius = radius;
    fp.lateral_offset = 0.0;
    fp.headings = {0.0};
    fp.trim_reward = 0.0;
    return fp;
}

PipelineParams easy_params(Method m, int steps, bool merge = false) {
    PipelineParams params;
    params.method = m;
    params.footsteps = easy_steps(steps);
    params.time_limit = 120.0;
    params.merge_faces = merge;
    return params;
}

int count_occurrences(const std::string& text, const std::string& needle) {
    int n = 0;
    for (size_t at = text.find(needle); at != std::string::npos;
         at = text.find(needle, at + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("generated scenarios are valid, sized as documented, and deterministic") {
    int small_hulls = 0;
    int total = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        for (int count = 1; count <= 3; ++count) {
            const Environment env = gen_env(seed, count);
            CHECK(env.seed == seed);
            REQUIRE(static_cast<int>(env.obstacles.size()) == count);
            CHECK_NOTHROW(env.validate());
            for (const Polygon& poly : env.obstacles) {
                CHECK(poly.vertices.size() >= 4);
                ++total;
                small_hulls += poly.vertices.size() <= 6 ? 1 : 0;
            }
            CHECK(env_to_json(gen_env(seed, count)) == env_to_json(env));
        }
    }
    // The generator draws 4-8 corner hulls; most collapse to 4-6 corners.
    CHECK(small_hulls * 2 > total);
}

TEST_CASE("environments round-trip through JSON and files") {
    const Environment env = gen_env(5, 3);
    const std::string text = env_to_json(env);
    const Environment back = env_from_json(text);
    CHECK(env_to_json(back) == text);
    CHECK(back.seed == env.seed);
    REQUIRE(back.obstacles.size() == env.obstacles.size());

    const std::string path = "pipeline_test_env.json";
    write_text_file(path, text);
    const Environment loaded = load_env(path);
    CHECK(env_to_json(loaded) == text);
    std::remove(path.c_str());

    CHECK_THROWS_AS(env_from_json("{\"obstacles\": []}"), Error);
    CHECK_THROWS_AS(load_env("/nonexistent/env.json"), Error);
}

TEST_CASE("stage artifacts serialize in the documented shapes") {
    const Environment env = gen_env(7, 2);
    const Partition p = partition_from(constrained_delaunay(env));
    const CdcInstance inst = cdc_from_partition(p);
    const ConflictGraph conflict = conflict_graph(inst);

    const std::string pj = partition_to_json(p);
    CHECK(pj.find("\"vertices\"") != std::string::npos);
    CHECK(pj.find("\"faces\"") != std::string::npos);

    const std::string edges = conflict_edges_text(conflict);
    CHECK(count_occurrences(edges, "\n") == static_cast<int>(conflict.edges.size()));

    const BicliqueCover cover =
        merge_cover(biclique_cover(finite_element_graph(inst)), conflict);
    const std::string table = cover_table_text(cover);
    CHECK(table.substr(0, 14) == "Level | A | B\n");
    CHECK(count_occurrences(table, "\n") == cover.depth() + 1);
    CHECK(table.find("{") != std::string::npos);

    const std::string cj = cover_to_json(cover);
    CHECK(count_occurrences(cj, "\"a\"") == cover.depth());
}

TEST_CASE("the empty square solves at the root once faces are merged") {
    PipelineArtifacts art;
    const BenchRecord rec =
        run_pipeline(empty_square(), easy_params(Method::Ib, 4, true), &art);

    CHECK(art.cover.depth() == 0);
    CHECK(rec.status == "optimal");
    CHECK(art.result.nodes == 1);
    CHECK(rec.free_faces == 1);
    CHECK(rec.binaries == 0);
    CHECK(rec.method == "ib");
}

TEST_CASE("the three methods agree on easy one-obstacle scenarios") {
    const Environment env = gen_env(4, 1);
    double objective[3] = {0, 0, 0};
    const Method methods[3] = {Method::Ib, Method::IbOrig, Method::BigM};
    for (int i = 0; i < 3; ++i) {
        PipelineArtifacts art;
        const BenchRecord rec = run_pipeline(env, easy_params(methods[i], 5), &art);
        REQUIRE(rec.status == "optimal");
        objective[i] = art.result.objective;
        CHECK(rec.cover_merged <= rec.cover_original);
    }
    CHECK(objective[0] == doctest::Approx(objective[1]).epsilon(1e-6));
    CHECK(objective[0] == doctest::Approx(objective[2]).epsilon(1e-6));
}

TEST_CASE("merging shortens three-obstacle covers") {
    const Environment env = gen_env(1, 3);
    const Partition p = partition_from(constrained_delaunay(env));
    const CdcInstance inst = cdc_from_partition(p);
    const ConflictGraph conflict = conflict_graph(inst);
    const BicliqueCover original = biclique_cover(finite_element_graph(inst));
    const BicliqueCover merged = merge_cover(original, conflict);
    CHECK(merged.depth() < original.depth());
    CHECK(validate_cover(merged, conflict) == std::nullopt);
}

TEST_CASE("bench aggregates records deterministically") {
    const PipelineParams base = easy_params(Method::Ib, 4);
    const std::vector<std::uint64_t> seeds = {1, 2};
    const std::vector<int> counts = {1};
    const std::vector<Method> methods = {Method::Ib, Method::BigM};

    const BenchOutput out = bench(seeds, counts, methods, base);
    REQUIRE(out.records.size() == 4);
    CHECK(out.records[0].scenario == 1);
    CHECK(out.records[0].method == "ib");
    CHECK(out.records[1].method == "bigm");
    CHECK(out.records[2].scenario == 2);
    CHECK(out.csv == bench_csv(out.records));

    const BenchOutput again = bench(seeds, counts, methods, base);
    CHECK(again.csv == out.csv);

    CHECK(out.csv.substr(0, out.csv.find('\n')) ==
          "scenario,obstacles,method,status,binaries,continuous,inequalities,"
          "cover_original,cover_merged,vertices,free_faces,halfspaces");
    for (const char* label :
         {"Fastest", "Timeouts", "Solve Time Avg", "Binary Var.", "Cont. Var.",
          "Inequalities", "Vertices", "B.C. Original", "B.C. Merged",
          "Reduction (%)", "Free Faces", "F.F. Halfspaces"})
        CHECK(out.tables.find(label) != std::string::npos);
}

TEST_CASE("svg emitters draw the documented elements") {
    const Environment env = gen_env(7, 2);
    const Partition p = partition_from(constrained_delaunay(env));
    const CdcInstance inst = cdc_from_partition(p);
    const ConflictGraph conflict = conflict_graph(inst);
    const FiniteElementGraph feg = finite_element_graph(inst);
    const SeparatorResult sep = planar_separator(feg);

    const std::string part_svg = svg_partition(env, p);
    CHECK(part_svg.find("<svg") != std::string::npos);
    CHECK(count_occurrences(part_svg, "#e8eef7") == static_cast<int>(p.faces.size()));
    CHECK(part_svg == svg_partition(env, p));

    const Partition square = partition_from(constrained_delaunay(empty_square()));
    CHECK(count_occurrences(svg_partition(empty_square(), square), "#e8eef7") == 2);

    const std::string conf_svg = svg_conflict(env, p, conflict);
    CHECK(count_occurrences(conf_svg, "#c0392b") ==
          static_cast<int>(conflict.edges.size()));

    const std::string sep_svg = svg_separator(env, p, feg, sep);
    CHECK(count_occurrences(sep_svg, "fill=\"red\"") == static_cast<int>(sep.a.size()));
    CHECK(count_occurrences(sep_svg, "fill=\"blue\"") == static_cast<int>(sep.b.size()));
    CHECK(count_occurrences(sep_svg, "fill=\"green\"") == static_cast<int>(sep.c.size()));

    PipelineArtifacts art;
    const BenchRecord rec =
        run_pipeline(gen_env(4, 1), easy_params(Method::Ib, 5), &art);
    REQUIRE(rec.status == "optimal");
    std::vector<Point2> steps;
    for (int s = 0; s < 5; ++s)
        steps.push_back({art.result.x[art.model.x_of[s]], art.result.x[art.model.y_of[s]]});
    const std::string sol_svg = svg_solution(gen_env(4, 1), steps, {0.05, 0.05}, {0.95, 0.95});
    CHECK(count_occurrences(sol_svg, "<circle") >= 5);
    CHECK(sol_svg.find("start") != std::string::npos);
    CHECK(sol_svg.find("goal") != std::string::npos);
}

TEST_CASE("solver results serialize with documented statuses") {
    PipelineArtifacts art;
    run_pipeline(gen_env(4, 1), easy_params(Method::Ib, 4), &art);
    const std::string good = bnb_result_to_json(art.result);
    CHECK(good.find("\"status\": \"optimal\"") != std::string::npos);
    CHECK(good.find("\"objective\"") != std::string::npos);
    CHECK(good.find("\"gap\": 0.0") != std::string::npos);

    // One step, distinct endpoints: the pinned bounds cross and the model
    // is infeasible before any branching.
    PipelineParams one = easy_params(Method::Ib, 1);
    PipelineArtifacts bad;
    const BenchRecord rec = run_pipeline(gen_env(4, 1), one, &bad);
    CHECK(rec.status == "infeasible");
    const std::string text = bnb_result_to_json(bad.result);
    CHECK(text.find("\"status\": \"infeasible\"") != std::string::npos);
    CHECK(text.find("\"gap\": null") != std::string::npos);
}
