#include "cdcpath/mip.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cdcpath/common.hpp"

namespace cdcpath {

int MipModel::add_var(const std::string& name, double lo, double hi, VarType type) {
    vars.push_back({name, lo, hi, type});
    return static_cast<int>(vars.size()) - 1;
}

void MipModel::add_constraint(const std::string& name, std::vector<LinearTerm> terms,
                              Rel rel, double rhs) {
    constraints.push_back({name, std::move(terms), rel, rhs});
}

ModelSummary summarize(const MipModel& m) {
    ModelSummary s;
    for (const Variable& v : m.vars)
        (v.type == VarType::Binary ? s.binaries : s.continuous) += 1;
    for (const Constraint& c : m.constraints)
        (c.rel == Rel::Eq ? s.equalities : s.inequalities) += 1;
    return s;
}

double max_violation(const MipModel& m, const std::vector<double>& x) {
    double worst = 0.0;
    for (std::size_t v = 0; v < m.vars.size(); ++v) {
        worst = std::max(worst, m.vars[v].lo - x[v]);
        worst = std::max(worst, x[v] - m.vars[v].hi);
    }
    for (const Constraint& c : m.constraints) {
        double lhs = 0.0;
        for (const LinearTerm& t : c.terms) lhs += t.coef * x[t.var];
        switch (c.rel) {
            case Rel::Le: worst = std::max(worst, lhs - c.rhs); break;
            case Rel::Ge: worst = std::max(worst, c.rhs - lhs); break;
            case Rel::Eq: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
        }
    }
    return worst;
}

BigMData big_m_values(const Partition& p, const Box& box) {
    BigMData data;
    data.m.reserve(p.faces.size());
    for (int f = 0; f < static_cast<int>(p.faces.size()); ++f) {
        std::vector<double> row_max;
        for (const Halfspace& h : face_halfspaces(p, f)) {
            const double mx = std::max(h.normal.x() * box.lo.x(), h.normal.x() * box.hi.x());
            const double my = std::max(h.normal.y() * box.lo.y(), h.normal.y() * box.hi.y());
            row_max.push_back(mx + my);
        }
        data.m.push_back(std::move(row_max));
    }
    return data;
}

namespace {

std::string tag(const char* base, int a) { return base + std::to_string(a); }
std::string tag(const char* base, int a, int b) {
    return base + std::to_string(a) + "_" + std::to_string(b);
}
std::string tag(const char* base, int a, int b, int c) {
    return base + std::to_string(a) + "_" + std::to_string(b) + "_" + std::to_string(c);
}

}  // namespace

MipModel ib_fragment(int ground_size, const BicliqueCover& cover) {
    MipModel m;
    std::vector<int> lam(ground_size);
    for (int v = 0; v < ground_size; ++v) lam[v] = m.add_var(tag("l", v), 0.0, 1.0);
    std::vector<int> z(cover.depth());
    for (int j = 0; j < cover.depth(); ++j)
        z[j] = m.add_var(tag("z", j), 0.0, 1.0, VarType::Binary);

    std::vector<LinearTerm> simplex;
    for (int v = 0; v < ground_size; ++v) simplex.push_back({lam[v], 1.0});
    m.add_constraint("cv", std::move(simplex), Rel::Eq, 1.0);
    for (int j = 0; j < cover.depth(); ++j) {
        std::vector<LinearTerm> ca, cb;
        for (int v : cover.levels[j].a) ca.push_back({lam[v], 1.0});
        ca.push_back({z[j], -1.0});
        m.add_constraint(tag("ca", j), std::move(ca), Rel::Le, 0.0);
        for (int v : cover.levels[j].b) cb.push_back({lam[v], 1.0});
        cb.push_back({z[j], 1.0});
        m.add_constraint(tag("cb", j), std::move(cb), Rel::Le, 1.0);
    }
    return m;
}

ModelSummary add_ib_waypoint(MipModel& m, const Partition& p, const BicliqueCover& cover,
                             int step, int x_var, int y_var) {
    const int n = static_cast<int>(p.points.size());
    std::vector<int> lam(n);
    for (int v = 0; v < n; ++v) lam[v] = m.add_var(tag("l", step, v), 0.0, 1.0);
    std::vector<int> z(cover.depth());
    for (int j = 0; j < cover.depth(); ++j)
        z[j] = m.add_var(tag("z", step, j), 0.0, 1.0, VarType::Binary);

    std::vector<LinearTerm> simplex, link_x, link_y;
    for (int v = 0; v < n; ++v) {
        simplex.push_back({lam[v], 1.0});
        link_x.push_back({lam[v], p.points[v].x()});
        link_y.push_back({lam[v], p.points[v].y()});
    }
    link_x.push_back({x_var, -1.0});
    link_y.push_back({y_var, -1.0});
    m.add_constraint(tag("cv", step), std::move(simplex), Rel::Eq, 1.0);
    m.add_constraint(tag("lx", step), std::move(link_x), Rel::Eq, 0.0);
    m.add_constraint(tag("ly", step), std::move(link_y), Rel::Eq, 0.0);
    for (int j = 0; j < cover.depth(); ++j) {
        std::vector<LinearTerm> ca, cb;
        for (int v : cover.levels[j].a) ca.push_back({lam[v], 1.0});
        ca.push_back({z[j], -1.0});
        m.add_constraint(tag("ca", step, j), std::move(ca), Rel::Le, 0.0);
        for (int v : cover.levels[j].b) cb.push_back({lam[v], 1.0});
        cb.push_back({z[j], 1.0});
        m.add_constraint(tag("cb", step, j), std::move(cb), Rel::Le, 1.0);
    }
    return {cover.depth(), n, 2 * cover.depth(), 3};
}

ModelSummary add_bigm_waypoint(MipModel& m, const Partition& p, const BigMData& big_m,
                               int step, int x_var, int y_var) {
    const int d = static_cast<int>(p.faces.size());
    std::vector<int> z(d);
    for (int i = 0; i < d; ++i)
        z[i] = m.add_var(tag("w", step, i), 0.0, 1.0, VarType::Binary);

    int rows = 0;
    for (int i = 0; i < d; ++i) {
        const auto halfspaces = face_halfspaces(p, i);
        for (std::size_t k = 0; k < halfspaces.size(); ++k) {
            const Halfspace& h = halfspaces[k];
            const double big = big_m.m[i][k];
            m.add_constraint(tag("fa", step, i, static_cast<int>(k)),
                             {{x_var, h.normal.x()},
                              {y_var, h.normal.y()},
                              {z[i], big - h.offset}},
                             Rel::Le, big);
            ++rows;
        }
    }
    std::vector<LinearTerm> pick;
    for (int i = 0; i < d; ++i) pick.push_back({z[i], 1.0});
    m.add_constraint(tag("fz", step), std::move(pick), Rel::Eq, 1.0);
    return {d, 0, rows, 1};
}

namespace {

void check_pose(const Environment& env, const Point2& pose, const char* which) {
    if (!env.bounds.contains(pose))
        throw InfeasiblePose(std::string(which) + " pose outside the bounds");
    for (const Polygon& obstacle : env.obstacles)
        if (point_in_polygon(obstacle, pose) > 0)
            throw InfeasiblePose(std::string(which) + " pose inside an obstacle");
}

using AssignmentAdder = std::function<ModelSummary(MipModel&, int, int, int)>;

FootstepModel build_footsteps(const Environment& env, const FootstepParams& pr,
                              const AssignmentAdder& add_assignment) {
    if (pr.steps < 1) throw Error("step count must be positive");
    if (pr.headings.empty()) throw Error("at least one heading required");
    if (pr.reach_gon < 3) throw Error("reach polygon needs at least three sides");
    check_pose(env, pr.start, "start");
    check_pose(env, pr.goal, "goal");

    FootstepModel fm;
    MipModel& m = fm.model;
    const int N = pr.steps;
    const Box& box = env.bounds;
    const double width_x = box.hi.x() - box.lo.x();
    const double width_y = box.hi.y() - box.lo.y();
    const double theta_lo = *std::min_element(pr.headings.begin(), pr.headings.end());
    const double theta_hi = *std::max_element(pr.headings.begin(), pr.headings.end());

    for (int s = 0; s < N; ++s) {
        double lx = box.lo.x(), hx = box.hi.x();
        double ly = box.lo.y(), hy = box.hi.y();
        if (s == 0) {
            lx = std::max(lx, pr.start.x()), hx = std::min(hx, pr.start.x());
            ly = std::max(ly, pr.start.y()), hy = std::min(hy, pr.start.y());
        }
        if (s == N - 1) {
            lx = std::max(lx, pr.goal.x()), hx = std::min(hx, pr.goal.x());
            ly = std::max(ly, pr.goal.y()), hy = std::min(hy, pr.goal.y());
        }
        fm.x_of.push_back(m.add_var(tag("x", s), lx, hx));
        fm.y_of.push_back(m.add_var(tag("y", s), ly, hy));
        fm.theta_of.push_back(m.add_var(tag("th", s), theta_lo, theta_hi));
    }

    for (int s = 0; s < N; ++s) {
        const ModelSummary added = add_assignment(m, s, fm.x_of[s], fm.y_of[s]);
        fm.assignment.binaries += added.binaries;
        fm.assignment.continuous += added.continuous;
        fm.assignment.inequalities += added.inequalities;
        fm.assignment.equalities += added.equalities;
    }

    const int H = static_cast<int>(pr.headings.size());
    std::vector<std::vector<int>> head(N, std::vector<int>(H));
    for (int s = 0; s < N; ++s) {
        std::vector<LinearTerm> one, link{{fm.theta_of[s], 1.0}};
        for (int h = 0; h < H; ++h) {
            head[s][h] = m.add_var(tag("u", s, h), 0.0, 1.0, VarType::Binary);
            one.push_back({head[s][h], 1.0});
            link.push_back({head[s][h], -pr.headings[h]});
        }
        m.add_constraint(tag("hu", s), std::move(one), Rel::Eq, 1.0);
        m.add_constraint(tag("hl", s), std::move(link), Rel::Eq, 0.0);
    }
    for (int s = 0; s + 1 < N; ++s) {
        m.add_constraint(tag("dtp", s),
                         {{fm.theta_of[s + 1], 1.0}, {fm.theta_of[s], -1.0}}, Rel::Le,
                         pr.dtheta_max);
        m.add_constraint(tag("dtm", s),
                         {{fm.theta_of[s], 1.0}, {fm.theta_of[s + 1], -1.0}}, Rel::Le,
                         pr.dtheta_max);
    }

    // Reachability: the displacement, seen from the support foot's heading,
    // must land in a regular polygon inscribed in the step-radius circle
    // around the lateral offset point; the offset side alternates per step.
    const double rho = pr.step_radius * std::cos(M_PI / pr.reach_gon);
    for (int s = 0; s + 1 < N; ++s) {
        const double side = (s % 2 == 0) ? 1.0 : -1.0;
        const double cy = side * pr.lateral_offset;
        for (int h = 0; h < H; ++h) {
            const double ct = std::cos(pr.headings[h]);
            const double st = std::sin(pr.headings[h]);
            for (int k = 0; k < pr.reach_gon; ++k) {
                const double phi = 2.0 * M_PI * k / pr.reach_gon;
                const double nx = std::cos(phi), ny = std::sin(phi);
                const double ax = ct * nx - st * ny;
                const double ay = st * nx + ct * ny;
                const double rhs = rho + ny * cy;
                const double reach_m =
                    std::max(ax * width_x, -ax * width_x) +
                    std::max(ay * width_y, -ay * width_y) - rhs;
                m.add_constraint(tag("rh", s, h, k),
                                 {{fm.x_of[s + 1], ax},
                                  {fm.x_of[s], -ax},
                                  {fm.y_of[s + 1], ay},
                                  {fm.y_of[s], -ay},
                                  {head[s][h], std::max(reach_m, 0.0)}},
                                 Rel::Le, rhs + std::max(reach_m, 0.0));
            }
        }
    }

    // Trimming: tr_s == 1 certifies that step s-1 already stands on the goal,
    // so steps s.. are redundant; the chain constraint keeps trims trailing.
    // A zero reward makes the binaries pure dead weight, so they are omitted.
    for (int s = 1; s < N && pr.trim_reward != 0.0; ++s) {
        const int tr = m.add_var(tag("tr", s), 0.0, 1.0, VarType::Binary);
        fm.trim_of.push_back(tr);
        m.add_constraint(tag("tgxp", s), {{fm.x_of[s - 1], 1.0}, {tr, width_x}}, Rel::Le,
                         pr.goal.x() + width_x);
        m.add_constraint(tag("tgxm", s), {{fm.x_of[s - 1], -1.0}, {tr, width_x}}, Rel::Le,
                         -pr.goal.x() + width_x);
        m.add_constraint(tag("tgyp", s), {{fm.y_of[s - 1], 1.0}, {tr, width_y}}, Rel::Le,
                         pr.goal.y() + width_y);
        m.add_constraint(tag("tgym", s), {{fm.y_of[s - 1], -1.0}, {tr, width_y}}, Rel::Le,
                         -pr.goal.y() + width_y);
        m.objective.push_back({tr, -pr.trim_reward});
    }
    for (std::size_t i = 0; i + 1 < fm.trim_of.size(); ++i)
        m.add_constraint(tag("to", static_cast<int>(i) + 1),
                         {{fm.trim_of[i], 1.0}, {fm.trim_of[i + 1], -1.0}}, Rel::Le, 0.0);

    for (int s = 0; s + 1 < N; ++s) {
        if (pr.objective == Objective::L1) {
            const int ax = m.add_var(tag("axv", s), 0.0, width_x);
            const int ay = m.add_var(tag("ayv", s), 0.0, width_y);
            m.add_constraint(tag("axp", s),
                             {{fm.x_of[s + 1], 1.0}, {fm.x_of[s], -1.0}, {ax, -1.0}},
                             Rel::Le, 0.0);
            m.add_constraint(tag("axm", s),
                             {{fm.x_of[s], 1.0}, {fm.x_of[s + 1], -1.0}, {ax, -1.0}},
                             Rel::Le, 0.0);
            m.add_constraint(tag("ayp", s),
                             {{fm.y_of[s + 1], 1.0}, {fm.y_of[s], -1.0}, {ay, -1.0}},
                             Rel::Le, 0.0);
            m.add_constraint(tag("aym", s),
                             {{fm.y_of[s], 1.0}, {fm.y_of[s + 1], -1.0}, {ay, -1.0}},
                             Rel::Le, 0.0);
            m.objective.push_back({ax, 1.0});
            m.objective.push_back({ay, 1.0});
        } else {
            const int dx = m.add_var(tag("dxv", s), -width_x, width_x);
            const int dy = m.add_var(tag("dyv", s), -width_y, width_y);
            m.add_constraint(tag("dxl", s),
                             {{fm.x_of[s + 1], 1.0}, {fm.x_of[s], -1.0}, {dx, -1.0}},
                             Rel::Eq, 0.0);
            m.add_constraint(tag("dyl", s),
                             {{fm.y_of[s + 1], 1.0}, {fm.y_of[s], -1.0}, {dy, -1.0}},
                             Rel::Eq, 0.0);
            m.quadratic.push_back({dx, dx, 1.0});
            m.quadratic.push_back({dy, dy, 1.0});
        }
    }
    return fm;
}

}  // namespace

FootstepModel footstep_model_ib(const Environment& env, const Partition& p,
                                const BicliqueCover& cover, const FootstepParams& params) {
    return build_footsteps(env, params,
                           [&](MipModel& m, int step, int x_var, int y_var) {
                               return add_ib_waypoint(m, p, cover, step, x_var, y_var);
                           });
}

FootstepModel footstep_model_bigm(const Environment& env, const Partition& p,
                                  const BigMData& big_m, const FootstepParams& params) {
    return build_footsteps(env, params,
                           [&](MipModel& m, int step, int x_var, int y_var) {
                               return add_bigm_waypoint(m, p, big_m, step, x_var, y_var);
                           });
}

}  // namespace cdcpath
