#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "cdcpath/biclique.hpp"
#include "cdcpath/geometry.hpp"
#include "cdcpath/partition.hpp"
#include "test_support.hpp"

using namespace cdcpath;

namespace {

CdcInstance instance(int n, std::vector<std::vector<int>> fams) {
    CdcInstance inst;
    inst.ground_size = n;
    inst.families = std::move(fams);
    return inst;
}

CdcInstance env_instance(std::vector<Polygon> obstacles) {
    Environment env;
    env.bounds = Box{{0.0, 0.0}, {1.0, 1.0}};
    env.obstacles = std::move(obstacles);
    return cdc_from_partition(partition_from(constrained_delaunay(env)));
}

Polygon poly(std::initializer_list<Point2> pts) {
    Polygon p;
    p.vertices.assign(pts.begin(), pts.end());
    return p;
}

// Hub 0 with rim cycle 1..n-1; every face a triangle.
CdcInstance wheel_instance(int n) {
    std::vector<std::vector<int>> fams;
    for (int r = 1; r < n; ++r) {
        const int next = r == n - 1 ? 1 : r + 1;
        std::vector<int> fam{0, r, next};
        std::sort(fam.begin(), fam.end());
        fams.push_back(std::move(fam));
    }
    return instance(n, std::move(fams));
}

void check_separator(const FiniteElementGraph& g, const SeparatorResult& sep) {
    const int n = g.n;
    CHECK(static_cast<int>(sep.a.size() + sep.b.size() + sep.c.size()) == n);
    CHECK(static_cast<int>(sep.a.size()) <= (2 * n + 2) / 3);
    CHECK(static_cast<int>(sep.b.size()) <= (2 * n + 2) / 3);
    CHECK(static_cast<double>(sep.c.size()) <=
          4.0 * (g.max_element_size() / 2) * std::sqrt(static_cast<double>(n)) + 1e-9);
    for (int x : sep.a)
        for (int y : sep.b) CHECK(!g.has_edge(x, y));
}

void check_cover_stats(const CoverStats& stats, int n) {
    CHECK(static_cast<int>(stats.calls.size()) <= 4 * n * n);
    for (const SeparatorCall& call : stats.calls) {
        CHECK(call.a + call.b + call.c == call.n);
        CHECK(call.a >= 1);
        CHECK(call.b >= 1);
        CHECK(call.a <= (2 * call.n + 2) / 3);
        CHECK(call.b <= (2 * call.n + 2) / 3);
        CHECK(static_cast<double>(call.c) <=
              4.0 * (call.k / 2) * std::sqrt(static_cast<double>(call.n)) + 1e-9);
    }
}

}  // namespace

TEST_CASE("finite element graph from families") {
    const auto g = finite_element_graph(instance(5, {{0, 1, 2}, {2, 3, 4}}));
    CHECK(g.n == 5);
    CHECK(g.max_element_size() == 3);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(0, 2));
    CHECK(!g.has_edge(0, 3));
    CHECK(!g.has_edge(1, 1));
    CHECK(g.edges().size() == 6);
    CHECK(g.adjacency[2] == std::vector<int>{0, 1, 3, 4});
    CHECK_THROWS_AS(finite_element_graph(instance(2, {{0, 5}})), Error);
}

TEST_CASE("separator splits a path at the middle") {
    const auto g = finite_element_graph(instance(3, {{0, 1}, {1, 2}}));
    const SeparatorResult sep = planar_separator(g);
    CHECK(sep.a == std::vector<int>{0});
    CHECK(sep.b == std::vector<int>{2});
    CHECK(sep.c == std::vector<int>{1});
}

TEST_CASE("separator preconditions") {
    CHECK_THROWS_AS(planar_separator(finite_element_graph(instance(3, {{0, 1, 2}}))),
                    Error);
    CHECK_THROWS_AS(planar_separator(finite_element_graph(instance(4, {{0, 1}, {2, 3}}))),
                    Error);
}

TEST_CASE("separator handles a wheel by cutting the hub") {
    const auto g = finite_element_graph(wheel_instance(30));
    const SeparatorResult sep = planar_separator(g);
    check_separator(g, sep);
    CHECK(!sep.a.empty());
    CHECK(!sep.b.empty());
    // The hub is adjacent to everything, so it cannot sit in a or b.
    CHECK(std::find(sep.c.begin(), sep.c.end(), 0) != sep.c.end());
}

TEST_CASE("separator bounds on a random triangulation") {
    std::mt19937 rng(20240813u);
    std::uniform_real_distribution<double> co(0.05, 0.95);
    std::vector<Point2> pts;
    for (int i = 0; i < 100; ++i) pts.emplace_back(co(rng), co(rng));
    const auto tr = triangulate_points(pts, Box{{0.0, 0.0}, {1.0, 1.0}});
    const auto g = finite_element_graph(cdc_from_partition(partition_from(tr)));
    CHECK(g.n == 104);
    CHECK(g.max_element_size() == 3);
    const SeparatorResult sep = planar_separator(g);
    check_separator(g, sep);
    CHECK(static_cast<int>(sep.c.size()) <= 40);
}

TEST_CASE("cover of a two-family instance needs one level") {
    const auto inst = instance(5, {{0, 1, 2}, {2, 3, 4}});
    CoverStats stats;
    const BicliqueCover cover = biclique_cover(finite_element_graph(inst), &stats);
    REQUIRE(cover.depth() == 1);
    CHECK(cover.levels[0].a == std::vector<int>{0, 1});
    CHECK(cover.levels[0].b == std::vector<int>{3, 4});
    CHECK(!validate_cover(cover, conflict_graph(inst)).has_value());
    CHECK(stats.residual_edges == 0);
}

TEST_CASE("complete instances need no cover") {
    const auto inst = instance(4, {{0, 1, 2, 3}});
    CHECK(biclique_cover(finite_element_graph(inst)).depth() == 0);
    CHECK(trivial_cover(conflict_graph(inst)).depth() == 0);
}

TEST_CASE("disconnected complements get component bicliques") {
    const auto inst = instance(4, {{0, 1}, {2, 3}});
    const BicliqueCover cover = biclique_cover(finite_element_graph(inst));
    REQUIRE(cover.depth() == 1);
    CHECK(cover.levels[0].a == std::vector<int>{0, 1});
    CHECK(cover.levels[0].b == std::vector<int>{2, 3});
    CHECK(!validate_cover(cover, conflict_graph(inst)).has_value());
}

TEST_CASE("covers from environments validate and match the oracle") {
    const std::vector<CdcInstance> instances = {
        env_instance({}),
        env_instance({poly({{0.4, 0.4}, {0.6, 0.4}, {0.6, 0.6}, {0.4, 0.6}})}),
        env_instance({poly({{0.15, 0.45}, {0.35, 0.4}, {0.4, 0.6}, {0.2, 0.65}}),
                      poly({{0.55, 0.25}, {0.75, 0.2}, {0.85, 0.35}, {0.7, 0.5},
                            {0.55, 0.45}})}),
    };
    for (const CdcInstance& inst : instances) {
        CAPTURE(inst.ground_size);
        const ConflictGraph conflict = conflict_graph(inst);
        CoverStats stats;
        const BicliqueCover cover = biclique_cover(finite_element_graph(inst), &stats);
        CHECK(!validate_cover(cover, conflict).has_value());
        CHECK(stats.residual_edges == 0);
        check_cover_stats(stats, inst.ground_size);

        const BicliqueCover merged = merge_cover(cover, conflict);
        CHECK(merged.depth() <= cover.depth());
        CHECK(!validate_cover(merged, conflict).has_value());

        // Branching acceptance agrees with set feasibility up to triples.
        const int n = inst.ground_size;
        for (int u = 0; u < n; ++u) {
            CHECK(ib_feasible(cover, {u}) == is_feasible(inst, {u}));
            for (int v = u + 1; v < n; ++v) {
                CHECK(ib_feasible(cover, {u, v}) == is_feasible(inst, {u, v}));
                for (int w = v + 1; w < n; ++w)
                    CHECK(ib_feasible(cover, {u, v, w}) == is_feasible(inst, {u, v, w}));
            }
        }
        for (const auto& fam : inst.families) {
            CHECK(ib_feasible(cover, fam));
            CHECK(ib_feasible(merged, fam));
        }
    }
}

TEST_CASE("trivial cover emits deduplicated stars") {
    CdcInstance star = instance(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    ConflictGraph cg = conflict_graph(star);
    // Conflict graph of the star instance: leaves all conflict pairwise.
    CHECK(cg.edges.size() == 6);
    const BicliqueCover tc = trivial_cover(cg);
    CHECK(!validate_cover(tc, cg).has_value());
    CHECK(tc.depth() <= 5);

    ConflictGraph k2;
    k2.n = 2;
    k2.edges = {{0, 1}};
    const BicliqueCover ck2 = trivial_cover(k2);
    REQUIRE(ck2.depth() == 1);
    CHECK(ck2.levels[0].a == std::vector<int>{0});
    CHECK(ck2.levels[0].b == std::vector<int>{1});

    ConflictGraph empty;
    empty.n = 4;
    CHECK(trivial_cover(empty).depth() == 0);
}

TEST_CASE("merging joins compatible levels") {
    ConflictGraph cg;
    cg.n = 3;
    cg.edges = {{0, 1}, {0, 2}};

    BicliqueCover cover;
    cover.levels = {{{0}, {1}}, {{0}, {2}}};
    const BicliqueCover merged = merge_cover(cover, cg);
    REQUIRE(merged.depth() == 1);
    CHECK(merged.levels[0].a == std::vector<int>{0});
    CHECK(merged.levels[0].b == std::vector<int>{1, 2});

    BicliqueCover crossed;
    crossed.levels = {{{0}, {1}}, {{2}, {0}}};
    const BicliqueCover cm = merge_cover(crossed, cg);
    REQUIRE(cm.depth() == 1);
    CHECK(cm.levels[0].a == std::vector<int>{0});
    CHECK(cm.levels[0].b == std::vector<int>{1, 2});

    ConflictGraph sparse;
    sparse.n = 4;
    sparse.edges = {{0, 1}, {2, 3}};
    BicliqueCover pairs;
    pairs.levels = {{{0}, {1}}, {{2}, {3}}};
    CHECK(merge_cover(pairs, sparse).depth() == 2);
}

TEST_CASE("cover validation reports the first violation") {
    ConflictGraph cg;
    cg.n = 3;
    cg.edges = {{0, 1}};

    BicliqueCover missing;
    REQUIRE(validate_cover(missing, cg).has_value());
    CHECK(*validate_cover(missing, cg) == "uncovered conflict edge (1, 2)");

    BicliqueCover overlap;
    overlap.levels = {{{0}, {0, 1}}};
    REQUIRE(validate_cover(overlap, cg).has_value());
    CHECK(validate_cover(overlap, cg)->find("1 appears on both sides") !=
          std::string::npos);

    BicliqueCover nonedge;
    nonedge.levels = {{{0}, {1, 2}}};
    REQUIRE(validate_cover(nonedge, cg).has_value());
    CHECK(validate_cover(nonedge, cg)->find("(1, 3) is not a conflict edge") !=
          std::string::npos);

    BicliqueCover empty_side;
    empty_side.levels = {{{0}, {}}};
    REQUIRE(validate_cover(empty_side, cg).has_value());
    CHECK(validate_cover(empty_side, cg)->find("empty side") != std::string::npos);

    BicliqueCover range;
    range.levels = {{{0}, {7}}};
    REQUIRE(validate_cover(range, cg).has_value());
    CHECK(validate_cover(range, cg)->find("out of range") != std::string::npos);
}

TEST_CASE("branching acceptance semantics") {
    BicliqueCover cover;
    cover.levels = {{{0}, {1}}};
    CHECK(ib_feasible(cover, {}));
    CHECK(ib_feasible(cover, {0}));
    CHECK(ib_feasible(cover, {1}));
    CHECK(!ib_feasible(cover, {0, 1}));
    CHECK(!ib_feasible(cover, {1, 0, 2}));
}

TEST_CASE("wheel cover is valid") {
    const auto inst = wheel_instance(30);
    const ConflictGraph conflict = conflict_graph(inst);
    CoverStats stats;
    const BicliqueCover cover = biclique_cover(finite_element_graph(inst), &stats);
    CHECK(!validate_cover(cover, conflict).has_value());
    check_cover_stats(stats, inst.ground_size);
    const BicliqueCover merged = merge_cover(cover, conflict);
    CHECK(merged.depth() <= cover.depth());
    CHECK(!validate_cover(merged, conflict).has_value());
}
