#pragma once

#include <vector>

#include "cdcpath/mip.hpp"

namespace cdcpath {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x;      // structural variables only
    std::vector<int> basis;     // basic column per row (slacks >= var count)
};

// Integrality relaxed; quadratic objectives are rejected.
LpSolution solve_lp(const MipModel& m);

enum class MilpStatus { Optimal, Infeasible, TimeLimit };

struct BnbLimits {
    double time_seconds = 300.0;
    double gap = 0.0;    // stop once the relative gap is at most this
    long max_nodes = 0;  // 0 = unlimited
};

struct BnbResult {
    MilpStatus status = MilpStatus::Infeasible;
    bool has_incumbent = false;
    double objective = 0.0;  // incumbent value
    double bound = 0.0;
    double gap = 0.0;
    long nodes = 0;
    double seconds = 0.0;
    std::vector<double> x;  // incumbent (structural variables)
};

// Best-bound branch and bound over the binaries, branching on the most
// fractional one (lowest index on ties). Deterministic apart from `seconds`.
BnbResult solve_milp(const MipModel& m, const BnbLimits& limits = {});

}  // namespace cdcpath
