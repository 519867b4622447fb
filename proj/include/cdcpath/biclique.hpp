#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdcpath/cdc.hpp"

namespace cdcpath {

// Complement of the conflict graph: ground-set elements are vertices and each
// family spans a clique. The families double as the "elements" whose maximum
// size k enters the separator bound.
struct FiniteElementGraph {
    int n = 0;
    std::vector<std::vector<int>> elements;   // sorted vertex sets
    std::vector<std::vector<int>> adjacency;  // derived union of cliques

    bool has_edge(int u, int v) const;
    int max_element_size() const;
    std::vector<std::pair<int, int>> edges() const;
};

FiniteElementGraph finite_element_graph(const CdcInstance& inst);

// Vertex partition of a connected, non-complete graph: no edge joins a and b,
// |a|,|b| <= ceil(2n/3) and |c| <= 4*floor(k/2)*sqrt(n).
struct SeparatorResult {
    std::vector<int> a, b, c;
};

SeparatorResult planar_separator(const FiniteElementGraph& g);

struct Biclique {
    std::vector<int> a, b;
};

struct BicliqueCover {
    std::vector<Biclique> levels;
    int depth() const { return static_cast<int>(levels.size()); }
};

// One row per separator invocation, recorded after postprocessing; n and k are
// the subgraph's vertex count and largest induced element.
struct SeparatorCall {
    int n, k, a, b, c;
};

struct CoverStats {
    std::vector<SeparatorCall> calls;
    int residual_edges = 0;
};

// Divide and conquer over the complement graph; the result covers every
// conflict edge (checked by validate_cover).
BicliqueCover biclique_cover(const FiniteElementGraph& g, CoverStats* stats = nullptr);

// Star per vertex, skipping stars that add no new edge.
BicliqueCover trivial_cover(const ConflictGraph& conflict);

// Greedy pairwise merging to a fixpoint; never increases depth.
BicliqueCover merge_cover(const BicliqueCover& cover, const ConflictGraph& conflict);

// nullopt when the cover is valid; otherwise the first violation, phrased
// with 1-based vertex ids.
std::optional<std::string> validate_cover(const BicliqueCover& cover,
                                          const ConflictGraph& conflict);

// Acceptance by the branching scheme: no level may see T on both sides.
bool ib_feasible(const BicliqueCover& cover, const std::vector<int>& T);

}  // namespace cdcpath
