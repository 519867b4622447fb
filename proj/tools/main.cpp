#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cdcpath/biclique.hpp"
#include "cdcpath/cdc.hpp"
#include "cdcpath/common.hpp"
#include "cdcpath/geometry.hpp"
#include "cdcpath/io.hpp"
#include "cdcpath/lp_io.hpp"
#include "cdcpath/mip.hpp"
#include "cdcpath/partition.hpp"
#include "cdcpath/pipeline.hpp"
#include "cdcpath/solver.hpp"
#include "cdcpath/svg.hpp"

namespace {

using namespace cdcpath;

// Options shared by the pipeline-driven commands.
struct Common {
    std::string input;  // environment JSON; generated from seed when empty
    std::uint64_t seed = 1;
    int obstacles = 3;
    std::string method = "ib";
    int steps = 25;
    double time_limit = 300.0;
    std::string objective = "l1";
    bool merge_faces = false;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool with_input = true) {
    if (with_input)
        cmd->add_option("input", c.input, "environment JSON (generated when omitted)");
    cmd->add_option("--seed", c.seed, "scenario seed");
    cmd->add_option("--obstacles", c.obstacles, "obstacle count");
    cmd->add_option("--method", c.method, "ib | ib-orig | bigm")
        ->check(CLI::IsMember({"ib", "ib-orig", "bigm"}));
    cmd->add_option("--steps", c.steps, "footstep count");
    cmd->add_option("--time-limit", c.time_limit, "solver time limit in seconds");
    cmd->add_option("--objective", c.objective, "l1 | quadratic")
        ->check(CLI::IsMember({"l1", "quadratic"}));
    cmd->add_flag("--merge-faces", c.merge_faces, "merge free faces before covering");
    cmd->add_option("--out", c.out, "output file");
}

Environment environment_for(const Common& c) {
    if (!c.input.empty()) return load_env(c.input);
    return gen_env(c.seed, c.obstacles);
}

PipelineParams params_for(const Common& c) {
    PipelineParams params;
    params.method = *method_from(c.method);
    params.merge_faces = c.merge_faces;
    params.time_limit = c.time_limit;
    params.footsteps.steps = c.steps;
    params.footsteps.objective =
        c.objective == "quadratic" ? Objective::Quadratic : Objective::L1;
    return params;
}

void emit(const std::string& out, const std::string& content) {
    if (out.empty()) {
        std::fputs(content.c_str(), stdout);
    } else {
        write_text_file(out, content);
        std::printf("wrote %s\n", out.c_str());
    }
}

Partition partition_for(const Environment& env, const Common& c) {
    Partition p = partition_from(constrained_delaunay(env));
    if (c.merge_faces) p = merge_all_faces(p);
    return p;
}

BicliqueCover cover_for(const Partition& p, const Common& c) {
    const CdcInstance inst = cdc_from_partition(p);
    const BicliqueCover original = biclique_cover(finite_element_graph(inst));
    if (c.method == "ib-orig") return original;
    return merge_cover(original, conflict_graph(inst));
}

FootstepModel model_for(const Environment& env, const Common& c) {
    const Partition p = partition_for(env, c);
    const PipelineParams params = params_for(c);
    if (params.method == Method::BigM)
        return footstep_model_bigm(env, p, big_m_values(p, env.bounds),
                                   params.footsteps);
    return footstep_model_ib(env, p, cover_for(p, c), params.footsteps);
}

int run_gen_env(const Common& c) {
    emit(c.out, env_to_json(gen_env(c.seed, c.obstacles)));
    return 0;
}

int run_partition(const Common& c) {
    const Environment env = environment_for(c);
    emit(c.out, partition_to_json(partition_for(env, c)));
    return 0;
}

int run_check_ib(const Common& c) {
    const Environment env = environment_for(c);
    const CdcInstance inst = cdc_from_partition(partition_for(env, c));
    if (const auto witness = pairwise_ib_obstruction(inst)) {
        std::printf("not pairwise IB-representable; witness %s\n",
                    format_index_set(*witness).c_str());
        return 1;
    }
    std::printf("pairwise IB-representable (%d vertices, %zu families)\n",
                inst.ground_size, inst.families.size());
    return 0;
}

int run_cover(const Common& c) {
    const Environment env = environment_for(c);
    const BicliqueCover cover = cover_for(partition_for(env, c), c);
    const bool json = c.out.size() > 5 && c.out.substr(c.out.size() - 5) == ".json";
    emit(c.out, json ? cover_to_json(cover) : cover_table_text(cover));
    return 0;
}

int run_formulate(const Common& c) {
    const Environment env = environment_for(c);
    const FootstepModel fm = model_for(env, c);
    emit(c.out, summary_to_json(summarize(fm.model)));
    return 0;
}

int run_export_lp(const Common& c) {
    const Environment env = environment_for(c);
    const FootstepModel fm = model_for(env, c);
    emit(c.out, write_lp(fm.model));
    return 0;
}

int run_solve(const Common& c) {
    BnbLimits limits;
    limits.time_seconds = c.time_limit;
    if (c.input.size() > 3 && c.input.substr(c.input.size() - 3) == ".lp") {
        const BnbResult res = solve_milp(parse_lp_file(c.input), limits);
        emit(c.out, bnb_result_to_json(res));
        return res.status == MilpStatus::Optimal ? 0 : 1;
    }
    const Environment env = environment_for(c);
    PipelineArtifacts artifacts;
    run_pipeline(env, params_for(c), &artifacts);
    emit(c.out, bnb_result_to_json(artifacts.result));
    return artifacts.result.status == MilpStatus::Optimal ? 0 : 1;
}

int run_plot(const std::string& stage, const Common& c) {
    const Environment env = environment_for(c);
    const Partition p = partition_for(env, c);
    std::string svg;
    if (stage == "partition") {
        svg = svg_partition(env, p);
    } else if (stage == "conflict") {
        svg = svg_conflict(env, p, conflict_graph(cdc_from_partition(p)));
    } else if (stage == "separator") {
        const FiniteElementGraph g = finite_element_graph(cdc_from_partition(p));
        svg = svg_separator(env, p, g, planar_separator(g));
    } else {  // solution
        PipelineArtifacts artifacts;
        run_pipeline(env, params_for(c), &artifacts);
        if (!artifacts.result.has_incumbent) throw Error("no solution to plot");
        std::vector<Point2> steps;
        for (std::size_t s = 0; s < artifacts.model.x_of.size(); ++s)
            steps.emplace_back(artifacts.result.x[artifacts.model.x_of[s]],
                               artifacts.result.x[artifacts.model.y_of[s]]);
        svg = svg_solution(env, steps, params_for(c).footsteps.start,
                           params_for(c).footsteps.goal);
    }
    emit(c.out.empty() ? stage + ".svg" : c.out, svg);
    return 0;
}

int run_bench(const std::vector<std::uint64_t>& seeds, const std::vector<int>& counts,
              const std::vector<std::string>& method_names, const Common& c) {
    std::vector<Method> methods;
    for (const std::string& name : method_names) methods.push_back(*method_from(name));
    const BenchOutput out = bench(seeds, counts, methods, params_for(c));
    const std::string dir = c.out.empty() ? "bench_out" : c.out;
    std::filesystem::create_directories(dir);
    write_text_file(dir + "/bench.csv", out.csv);
    write_text_file(dir + "/tables.txt", out.tables);
    std::printf("%zu records -> %s/bench.csv, %s/tables.txt\n", out.records.size(),
                dir.c_str(), dir.c_str());
    std::fputs(out.tables.c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Footstep-planning MIP pipeline over polygonal environments"};
    app.require_subcommand(1);

    Common c;
    std::string plot_stage = "partition";
    std::vector<std::uint64_t> bench_seeds{1, 2, 3, 4, 5};
    std::vector<int> bench_counts{1, 2, 3};
    std::vector<std::string> bench_methods{"ib", "ib-orig", "bigm"};

    auto* gen = app.add_subcommand("gen-env", "generate a random scenario");
    add_common(gen, c, false);
    auto* part = app.add_subcommand("partition", "triangulate free space");
    add_common(part, c);
    auto* check = app.add_subcommand("check-ib", "test pairwise IB-representability");
    add_common(check, c);
    auto* cover = app.add_subcommand("cover", "compute a biclique cover");
    add_common(cover, c);
    auto* formulate = app.add_subcommand("formulate", "build the MIP and report sizes");
    add_common(formulate, c);
    auto* solve = app.add_subcommand("solve", "run the branch-and-bound solver");
    add_common(solve, c);
    auto* export_lp = app.add_subcommand("export-lp", "write the model as an LP file");
    add_common(export_lp, c);
    auto* plot = app.add_subcommand("plot", "render a pipeline stage as SVG");
    plot->add_option("stage", plot_stage, "partition | conflict | separator | solution")
        ->check(CLI::IsMember({"partition", "conflict", "separator", "solution"}));
    add_common(plot, c);
    auto* bench_cmd = app.add_subcommand("bench", "run the benchmark grid");
    bench_cmd->add_option("--seed", bench_seeds, "scenario seeds");
    bench_cmd->add_option("--obstacles", bench_counts, "obstacle counts");
    bench_cmd->add_option("--method", bench_methods, "methods to compare")
        ->check(CLI::IsMember({"ib", "ib-orig", "bigm"}));
    bench_cmd->add_option("--steps", c.steps, "footstep count");
    bench_cmd->add_option("--time-limit", c.time_limit, "per-solve limit in seconds");
    bench_cmd->add_option("--out", c.out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen_env(c);
        if (part->parsed()) return run_partition(c);
        if (check->parsed()) return run_check_ib(c);
        if (cover->parsed()) return run_cover(c);
        if (formulate->parsed()) return run_formulate(c);
        if (solve->parsed()) return run_solve(c);
        if (export_lp->parsed()) return run_export_lp(c);
        if (plot->parsed()) return run_plot(plot_stage, c);
        if (bench_cmd->parsed())
            return run_bench(bench_seeds, bench_counts, bench_methods, c);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
