#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cdcpath/partition.hpp"

namespace cdcpath {

// Combinatorial disjunctive constraint: a set is feasible iff it is contained
// in one of the families. Families are sorted index sets over the ground set.
struct CdcInstance {
    int ground_size = 0;
    std::vector<std::vector<int>> families;
};

CdcInstance cdc_from_partition(const Partition& p);

bool is_feasible(const CdcInstance& inst, const std::vector<int>& set);

// Pairs that appear together in no family.
struct ConflictGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // normalized (lo, hi), sorted

    bool has_edge(int a, int b) const;
    std::vector<std::vector<int>> adjacency() const;
};

ConflictGraph conflict_graph(const CdcInstance& inst);

// A minimal infeasible set of size != 2 if one exists: either a ground element
// in no family, or a triple whose pairs are all feasible. For partitions into
// convex faces these are the only possible obstructions, and their absence
// makes the constraint representable by pairwise independent branching.
std::optional<std::vector<int>> pairwise_ib_obstruction(const CdcInstance& inst);

bool is_pairwise_ib_representable(const CdcInstance& inst);

}  // namespace cdcpath
