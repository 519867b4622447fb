#pragma once

#include <string>
#include <vector>

#include "cdcpath/biclique.hpp"
#include "cdcpath/geometry.hpp"
#include "cdcpath/partition.hpp"

namespace cdcpath {

enum class VarType { Continuous, Binary };
enum class Rel { Le, Ge, Eq };
enum class Sense { Minimize, Maximize };
enum class Objective { L1, Quadratic };

struct LinearTerm {
    int var;
    double coef;
};

struct Constraint {
    std::string name;
    std::vector<LinearTerm> terms;
    Rel rel = Rel::Le;
    double rhs = 0.0;
};

struct Variable {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    VarType type = VarType::Continuous;
};

// Objective quadratic part: coef * v1 * v2 (v1 == v2 for squares).
struct QuadTerm {
    int v1, v2;
    double coef;
};

struct MipModel {
    Sense sense = Sense::Minimize;
    std::vector<Variable> vars;
    std::vector<LinearTerm> objective;
    std::vector<QuadTerm> quadratic;
    double objective_constant = 0.0;
    std::vector<Constraint> constraints;

    int add_var(const std::string& name, double lo, double hi,
                VarType type = VarType::Continuous);
    void add_constraint(const std::string& name, std::vector<LinearTerm> terms, Rel rel,
                        double rhs);
};

struct ModelSummary {
    int binaries = 0;
    int continuous = 0;
    int inequalities = 0;
    int equalities = 0;
};

ModelSummary summarize(const MipModel& m);

// Largest bound or constraint violation of the assignment x (linear rows only;
// integrality is not checked here).
double max_violation(const MipModel& m, const std::vector<double>& x);

struct BigMData {
    std::vector<std::vector<double>> m;  // per face, per halfspace row
};

// Row-wise maxima of A^i x over the box; rows must come from face_halfspaces.
BigMData big_m_values(const Partition& p, const Box& box);

// Standalone convex-multiplier fragment: lambda in the unit simplex plus the
// two branching inequalities per cover level. Used by the ideality probe.
MipModel ib_fragment(int ground_size, const BicliqueCover& cover);

// One waypoint of the disjunction, appended to an existing model whose x/y
// variables are already declared. Returns the summary of what was added.
ModelSummary add_ib_waypoint(MipModel& m, const Partition& p, const BicliqueCover& cover,
                             int step, int x_var, int y_var);
ModelSummary add_bigm_waypoint(MipModel& m, const Partition& p, const BigMData& big_m,
                               int step, int x_var, int y_var);

struct FootstepParams {
    int steps = 25;
    Objective objective = Objective::L1;
    double step_radius = 0.15;
    double lateral_offset = 0.1;
    double dtheta_max = 0.39269908169872414;  // pi/8
    int reach_gon = 8;
    std::vector<double> headings = {0.0, 0.39269908169872414, 0.7853981633974483,
                                    1.1780972450961724};
    Point2 start{0.05, 0.05};
    Point2 goal{0.95, 0.95};
    double trim_reward = 0.01;  // 0 drops the trim binaries altogether
};

struct FootstepModel {
    MipModel model;
    ModelSummary assignment;  // disjunction-encoding portion only
    std::vector<int> x_of, y_of, theta_of;  // per step
    std::vector<int> trim_of;               // steps 1..N-1
};

FootstepModel footstep_model_ib(const Environment& env, const Partition& p,
                                const BicliqueCover& cover, const FootstepParams& params);
FootstepModel footstep_model_bigm(const Environment& env, const Partition& p,
                                  const BigMData& big_m, const FootstepParams& params);

}  // namespace cdcpath
