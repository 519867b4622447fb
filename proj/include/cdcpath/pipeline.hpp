#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdcpath/biclique.hpp"
#include "cdcpath/geometry.hpp"
#include "cdcpath/mip.hpp"
#include "cdcpath/partition.hpp"
#include "cdcpath/solver.hpp"

namespace cdcpath {

// Random scenario in the unit square: disjoint convex obstacles (hulls of
// 4-8 points in random sub-boxes), each with at least min_vertices corners,
// clear of the default start/goal poses. Deterministic per (seed, count).
Environment gen_env(std::uint64_t seed, int n_obstacles, int min_vertices = 4);

enum class Method { Ib, IbOrig, BigM };

std::string method_name(Method m);
std::optional<Method> method_from(const std::string& name);

struct PipelineParams {
    Method method = Method::Ib;
    FootstepParams footsteps;
    double time_limit = 300.0;
    bool merge_faces = false;
};

// One row of the benchmark tables. Variable/constraint counts cover the
// footstep-assignment fragments only, matching how the result tables report
// formulation sizes.
struct BenchRecord {
    std::uint64_t scenario = 0;
    int obstacles = 0;
    std::string method;
    std::string status;
    double seconds = 0.0;
    int binaries = 0;
    int continuous = 0;
    int inequalities = 0;
    int cover_original = 0;
    int cover_merged = 0;
    int vertices = 0;
    int free_faces = 0;
    int halfspaces = 0;
};

// Heavier intermediates for plotting and inspection.
struct PipelineArtifacts {
    Partition partition;
    BicliqueCover cover_original;
    BicliqueCover cover;  // the one the model uses (merged for Method::Ib)
    FootstepModel model;
    BnbResult result;
};

BenchRecord run_pipeline(const Environment& env, const PipelineParams& params,
                         PipelineArtifacts* artifacts = nullptr);

struct BenchOutput {
    std::vector<BenchRecord> records;
    std::string csv;
    std::string tables;
};

// Cross product of seeds x obstacle counts x methods; scenarios run in
// parallel, aggregation is ordered and deterministic.
BenchOutput bench(const std::vector<std::uint64_t>& seeds,
                  const std::vector<int>& obstacle_counts,
                  const std::vector<Method>& methods, const PipelineParams& base);

std::string bench_csv(const std::vector<BenchRecord>& records);
std::string bench_tables(const std::vector<BenchRecord>& records);

}  // namespace cdcpath
