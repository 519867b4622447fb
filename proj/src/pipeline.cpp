#include "cdcpath/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <thread>

#include "cdcpath/cdc.hpp"
#include "cdcpath/common.hpp"

namespace cdcpath {

namespace {

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    // 53-bit mantissa draw; avoids distribution implementation differences.
    const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
    return lo + u * (hi - lo);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(rng() % span);
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point2& a, const Point2& b) {
                              return a.x() == b.x() && a.y() == b.y();
                          }),
              pts.end());
    const int n = static_cast<int>(pts.size());
    if (n < 3) return {};
    std::vector<Point2> h(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    const int lower = k + 1;
    for (int i = n - 2; i >= 0; --i) {
        while (k >= lower && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

Box bounding_box(const std::vector<Point2>& pts) {
    Box b{pts.front(), pts.front()};
    for (const Point2& p : pts) {
        b.lo = b.lo.cwiseMin(p);
        b.hi = b.hi.cwiseMax(p);
    }
    return b;
}

double box_gap(const Box& a, const Box& b) {
    const double dx = std::max({0.0, b.lo.x() - a.hi.x(), a.lo.x() - b.hi.x()});
    const double dy = std::max({0.0, b.lo.y() - a.hi.y(), a.lo.y() - b.hi.y()});
    return std::hypot(dx, dy);
}

double box_point_gap(const Box& a, const Point2& p) {
    const double dx = std::max({0.0, a.lo.x() - p.x(), p.x() - a.hi.x()});
    const double dy = std::max({0.0, a.lo.y() - p.y(), p.y() - a.hi.y()});
    return std::hypot(dx, dy);
}

}  // namespace

namespace {

// Obstacle sets are drawn from a single generator stream, so the retry loop
// in gen_env stays deterministic per (seed, count).
Environment draw_candidate(std::mt19937_64& rng, std::uint64_t seed, int n_obstacles,
                           int min_vertices) {
    Environment env;
    env.bounds = Box{{0.0, 0.0}, {1.0, 1.0}};
    env.seed = seed;
    const Point2 start(0.05, 0.05), goal(0.95, 0.95);
    std::vector<Box> placed;

    for (int ob = 0; ob < n_obstacles; ++ob) {
        bool ok = false;
        for (int attempt = 0; attempt < 2000 && !ok; ++attempt) {
            const double cx = uniform_real(rng, 0.2, 0.8);
            const double cy = uniform_real(rng, 0.2, 0.8);
            const double hw = uniform_real(rng, 0.06, 0.18);
            const double hh = uniform_real(rng, 0.06, 0.18);
            const int m = uniform_int(rng, 4, 8);
            std::vector<Point2> pts;
            for (int i = 0; i < m; ++i)
                pts.emplace_back(uniform_real(rng, cx - hw, cx + hw),
                                 uniform_real(rng, cy - hh, cy + hh));
            const std::vector<Point2> hull = convex_hull(pts);
            if (static_cast<int>(hull.size()) < min_vertices) continue;
            const Box bb = bounding_box(hull);
            if (bb.lo.x() < 0.02 || bb.lo.y() < 0.02 || bb.hi.x() > 0.98 ||
                bb.hi.y() > 0.98)
                continue;
            if (box_point_gap(bb, start) < 0.05 || box_point_gap(bb, goal) < 0.05)
                continue;
            bool clear = true;
            for (const Box& other : placed) clear &= box_gap(bb, other) >= 0.02;
            if (!clear) continue;
            Polygon poly;
            poly.vertices = hull;
            env.obstacles.push_back(std::move(poly));
            placed.push_back(bb);
            ok = true;
        }
        if (!ok) throw Error("obstacle placement failed for seed " + std::to_string(seed));
    }
    env.validate();
    return env;
}

}  // namespace

Environment gen_env(std::uint64_t seed, int n_obstacles, int min_vertices) {
    if (n_obstacles < 0) throw Error("obstacle count must be non-negative");

    std::seed_seq seq{seed, static_cast<std::uint64_t>(n_obstacles)};
    std::mt19937_64 rng(seq);

    // Slim obstacles can force a partition whose branching scheme has a
    // minimal infeasible triple (a 3-cycle of co-facial pairs enclosing the
    // obstacle), so candidates are redrawn until the partition is usable by
    // every method.
    for (int redraw = 0; redraw < 64; ++redraw) {
        Environment env = draw_candidate(rng, seed, n_obstacles, min_vertices);
        const CdcInstance inst =
            cdc_from_partition(partition_from(constrained_delaunay(env)));
        if (is_pairwise_ib_representable(inst)) return env;
    }
    throw Error("no representable scenario for seed " + std::to_string(seed));
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Ib: return "ib";
        case Method::IbOrig: return "ib-orig";
        case Method::BigM: return "bigm";
    }
    return "ib";
}

std::optional<Method> method_from(const std::string& name) {
    if (name == "ib") return Method::Ib;
    if (name == "ib-orig") return Method::IbOrig;
    if (name == "bigm") return Method::BigM;
    return std::nullopt;
}

BenchRecord run_pipeline(const Environment& env, const PipelineParams& params,
                         PipelineArtifacts* artifacts) {
    env.validate();
    Partition p = partition_from(constrained_delaunay(env));
    if (params.merge_faces) p = merge_all_faces(p);
    const CdcInstance inst = cdc_from_partition(p);

    if (params.method != Method::BigM) {
        if (const auto witness = pairwise_ib_obstruction(inst))
            throw Error("partition is not pairwise IB-representable; witness " +
                        format_index_set(*witness));
    }

    const FiniteElementGraph feg = finite_element_graph(inst);
    const BicliqueCover original = biclique_cover(feg);
    const BicliqueCover merged = merge_cover(original, conflict_graph(inst));

    FootstepModel model;
    switch (params.method) {
        case Method::Ib: model = footstep_model_ib(env, p, merged, params.footsteps); break;
        case Method::IbOrig:
            model = footstep_model_ib(env, p, original, params.footsteps);
            break;
        case Method::BigM:
            model = footstep_model_bigm(env, p, big_m_values(p, env.bounds),
                                        params.footsteps);
            break;
    }

    BnbLimits limits;
    limits.time_seconds = params.time_limit;
    const BnbResult result = solve_milp(model.model, limits);

    BenchRecord rec;
    rec.scenario = env.seed.value_or(0);
    rec.obstacles = static_cast<int>(env.obstacles.size());
    rec.method = method_name(params.method);
    switch (result.status) {
        case MilpStatus::Optimal: rec.status = "optimal"; break;
        case MilpStatus::Infeasible: rec.status = "infeasible"; break;
        case MilpStatus::TimeLimit: rec.status = "time-limit"; break;
    }
    rec.seconds = result.seconds;
    rec.binaries = model.assignment.binaries;
    rec.continuous = model.assignment.continuous;
    rec.inequalities = model.assignment.inequalities;
    rec.cover_original = original.depth();
    rec.cover_merged = merged.depth();
    rec.vertices = static_cast<int>(p.points.size());
    rec.free_faces = static_cast<int>(p.faces.size());
    rec.halfspaces = total_halfspaces(p);

    if (artifacts) {
        artifacts->cover_original = original;
        artifacts->cover = params.method == Method::IbOrig ? original : merged;
        artifacts->partition = std::move(p);
        artifacts->model = std::move(model);
        artifacts->result = result;
    }
    return rec;
}

BenchOutput bench(const std::vector<std::uint64_t>& seeds,
                  const std::vector<int>& obstacle_counts,
                  const std::vector<Method>& methods, const PipelineParams& base) {
    struct Item {
        std::uint64_t seed;
        int obstacles;
        Method method;
    };
    std::vector<Item> items;
    for (const std::uint64_t seed : seeds)
        for (const int count : obstacle_counts)
            for (const Method method : methods) items.push_back({seed, count, method});

    BenchOutput out;
    out.records.resize(items.size());
    std::atomic<std::size_t> next{0};
    const unsigned workers = std::max(
        1u, std::min(std::thread::hardware_concurrency(),
                     static_cast<unsigned>(items.size())));
    auto run = [&] {
        for (std::size_t i = next.fetch_add(1); i < items.size(); i = next.fetch_add(1)) {
            PipelineParams params = base;
            params.method = items[i].method;
            out.records[i] =
                run_pipeline(gen_env(items[i].seed, items[i].obstacles), params);
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
        for (std::thread& t : pool) t.join();
    }

    out.csv = bench_csv(out.records);
    out.tables = bench_tables(out.records);
    return out;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
    // No timing column on purpose: the CSV is the reproducible artifact.
    std::string out =
        "scenario,obstacles,method,status,binaries,continuous,inequalities,"
        "cover_original,cover_merged,vertices,free_faces,halfspaces\n";
    for (const BenchRecord& r : records) {
        out += std::to_string(r.scenario) + ',' + std::to_string(r.obstacles) + ',' +
               r.method + ',' + r.status + ',' + std::to_string(r.binaries) + ',' +
               std::to_string(r.continuous) + ',' + std::to_string(r.inequalities) +
               ',' + std::to_string(r.cover_original) + ',' +
               std::to_string(r.cover_merged) + ',' + std::to_string(r.vertices) + ',' +
               std::to_string(r.free_faces) + ',' + std::to_string(r.halfspaces) + '\n';
    }
    return out;
}

namespace {

std::string fixed2(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

double mean(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double stddev(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

struct MethodStats {
    int fastest = 0;
    int timeouts = 0;
    std::vector<double> seconds, binaries, continuous, inequalities;
};

void append_row(std::string& out, const std::string& label,
                const std::vector<std::string>& cells) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%-18s", label.c_str());
    out += buf;
    for (const std::string& cell : cells) {
        std::snprintf(buf, sizeof(buf), " | %14s", cell.c_str());
        out += buf;
    }
    out += '\n';
}

}  // namespace

std::string bench_tables(const std::vector<BenchRecord>& records) {
    std::vector<int> counts;
    std::vector<std::string> methods;
    for (const BenchRecord& r : records) {
        if (std::find(counts.begin(), counts.end(), r.obstacles) == counts.end())
            counts.push_back(r.obstacles);
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
            methods.push_back(r.method);
    }
    std::sort(counts.begin(), counts.end());

    const auto pretty = [](const std::string& m) -> std::string {
        if (m == "ib") return "I.B. (Merged)";
        if (m == "ib-orig") return "I.B. (Original)";
        if (m == "bigm") return "Big-M";
        return m;
    };

    std::string out;
    for (const int count : counts) {
        std::map<std::string, MethodStats> stats;
        std::map<std::uint64_t, std::pair<double, std::string>> best;
        for (const BenchRecord& r : records) {
            if (r.obstacles != count) continue;
            MethodStats& s = stats[r.method];
            if (r.status == "time-limit") ++s.timeouts;
            s.seconds.push_back(r.seconds);
            s.binaries.push_back(r.binaries);
            s.continuous.push_back(r.continuous);
            s.inequalities.push_back(r.inequalities);
            const auto it = best.find(r.scenario);
            if (it == best.end() || r.seconds < it->second.first)
                best[r.scenario] = {r.seconds, r.method};
        }
        for (const auto& [scenario, who] : best) {
            (void)scenario;
            ++stats[who.second].fastest;
        }

        out += "Obstacles: " + std::to_string(count) + "\n";
        std::vector<std::string> header;
        for (const std::string& m : methods) header.push_back(pretty(m));
        append_row(out, "", header);
        const auto row = [&](const std::string& label, auto get) {
            std::vector<std::string> cells;
            for (const std::string& m : methods) cells.push_back(get(stats[m]));
            append_row(out, label, cells);
        };
        row("Fastest", [](const MethodStats& s) { return std::to_string(s.fastest); });
        row("Timeouts", [](const MethodStats& s) { return std::to_string(s.timeouts); });
        row("Solve Time Avg", [](const MethodStats& s) { return fixed2(mean(s.seconds)); });
        row("Solve Time Std",
            [](const MethodStats& s) { return fixed2(stddev(s.seconds)); });
        row("Binary Var.", [](const MethodStats& s) { return fixed2(mean(s.binaries)); });
        row("Cont. Var.", [](const MethodStats& s) { return fixed2(mean(s.continuous)); });
        row("Inequalities",
            [](const MethodStats& s) { return fixed2(mean(s.inequalities)); });
        out += '\n';
    }

    // Scenario-intrinsic sizes (method independent): one sample per scenario.
    out += "Scenario sizes\n";
    std::vector<std::string> header;
    for (const int count : counts) header.push_back(std::to_string(count) + " obst.");
    append_row(out, "", header);
    const auto size_row = [&](const std::string& label, auto get) {
        std::vector<std::string> cells;
        for (const int count : counts) {
            std::map<std::uint64_t, double> per_scenario;
            for (const BenchRecord& r : records)
                if (r.obstacles == count) per_scenario.emplace(r.scenario, get(r));
            std::vector<double> vals;
            for (const auto& [seed, v] : per_scenario) {
                (void)seed;
                vals.push_back(v);
            }
            cells.push_back(fixed2(mean(vals)));
        }
        append_row(out, label, cells);
    };
    size_row("Vertices", [](const BenchRecord& r) { return double(r.vertices); });
    size_row("B.C. Original",
             [](const BenchRecord& r) { return double(r.cover_original); });
    size_row("B.C. Merged", [](const BenchRecord& r) { return double(r.cover_merged); });
    size_row("Reduction (%)", [](const BenchRecord& r) {
        return r.cover_original == 0
                   ? 0.0
                   : 100.0 * (1.0 - double(r.cover_merged) / double(r.cover_original));
    });
    size_row("Free Faces", [](const BenchRecord& r) { return double(r.free_faces); });
    size_row("F.F. Halfspaces", [](const BenchRecord& r) { return double(r.halfspaces); });
    return out;
}

}  // namespace cdcpath
