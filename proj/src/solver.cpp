#include "cdcpath/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <queue>

#include "cdcpath/common.hpp"

namespace cdcpath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-7;
constexpr double kDualTol = 1e-8;
constexpr double kPivTol = 1e-10;
constexpr double kIntTol = 1e-6;

enum class ColState : unsigned char { AtLo, AtHi, Basic };

struct Snapshot {
    std::vector<int> basis;
    std::vector<ColState> state;
};

// Bounded-variable primal simplex over columns = structurals, slacks, and
// phase-one artificials, with a dense basis inverse.
class Simplex {
 public:
    explicit Simplex(const MipModel& model) : model_(model) {
        if (!model.quadratic.empty())
            throw UnsupportedModel("quadratic objective not supported by the solver");
        nstruct_ = static_cast<int>(model.vars.size());
        m_ = static_cast<int>(model.constraints.size());
        nslack_end_ = nstruct_ + m_;
        ntotal_ = nslack_end_ + m_;
        cols_.resize(ntotal_);
        lo_.assign(ntotal_, 0.0);
        hi_.assign(ntotal_, 0.0);
        for (int j = 0; j < nstruct_; ++j) {
            const Variable& v = model.vars[j];
            if (!std::isfinite(v.lo) || !std::isfinite(v.hi))
                throw Error("variable bounds must be finite: " + v.name);
            lo_[j] = v.lo;
            hi_[j] = v.hi;
        }
        rhs_.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            const Constraint& c = model.constraints[i];
            rhs_[i] = c.rhs;
            for (const LinearTerm& t : c.terms) cols_[t.var].push_back({i, t.coef});
            const int s = nstruct_ + i;
            cols_[s].push_back({i, 1.0});
            switch (c.rel) {
                case Rel::Le: lo_[s] = 0.0; hi_[s] = kInf; break;
                case Rel::Ge: lo_[s] = -kInf; hi_[s] = 0.0; break;
                case Rel::Eq: lo_[s] = 0.0; hi_[s] = 0.0; break;
            }
        }
        sign_ = model.sense == Sense::Maximize ? -1.0 : 1.0;
        real_cost_.assign(ntotal_, 0.0);
        for (const LinearTerm& t : model.objective) real_cost_[t.var] += sign_ * t.coef;
        cost_ = real_cost_;
        state_.assign(ntotal_, ColState::AtLo);
        x_.assign(ntotal_, 0.0);
        basis_.assign(m_, 0);
    }

    void reset_structural_bounds() {
        for (int j = 0; j < nstruct_; ++j) {
            lo_[j] = model_.vars[j].lo;
            hi_[j] = model_.vars[j].hi;
        }
    }

    void pin(int var, double value) { lo_[var] = hi_[var] = value; }

    LpStatus solve_from_scratch() {
        for (int j = 0; j < nstruct_; ++j)
            if (lo_[j] > hi_[j] + kFeasTol) return LpStatus::Infeasible;
        for (int j = 0; j < nstruct_; ++j) state_[j] = ColState::AtLo;
        for (int i = 0; i < m_; ++i) {
            const int s = nstruct_ + i;
            state_[s] = model_.constraints[i].rel == Rel::Ge ? ColState::AtHi : ColState::AtLo;
        }
        // Residuals with every non-artificial column at its bound decide the
        // artificial signs; artificials start basic at |residual|.
        std::vector<double> resid = rhs_;
        for (int j = 0; j < nslack_end_; ++j) {
            const double v = state_[j] == ColState::AtLo ? lo_[j] : hi_[j];
            if (v == 0.0) continue;
            for (const auto& e : cols_[j]) resid[e.first] -= e.second * v;
        }
        for (int i = 0; i < m_; ++i) {
            const int a = nslack_end_ + i;
            cols_[a] = {{i, resid[i] >= 0.0 ? 1.0 : -1.0}};
            lo_[a] = 0.0;
            hi_[a] = kInf;
            state_[a] = ColState::Basic;
            basis_[i] = a;
        }
        factorize();

        cost_.assign(ntotal_, 0.0);
        for (int i = 0; i < m_; ++i) cost_[nslack_end_ + i] = 1.0;
        const LpStatus phase1 = optimize();
        if (phase1 != LpStatus::Optimal) return LpStatus::Infeasible;
        if (raw_objective() > kFeasTol) return LpStatus::Infeasible;
        for (int i = 0; i < m_; ++i) pin(nslack_end_ + i, 0.0);
        cost_ = real_cost_;
        return optimize();
    }

    // Re-solve after fixing `var` to `value`, starting from a snapshot that was
    // optimal before the fix: first push the variable to its target with a
    // temporary objective, then reoptimize the real one.
    LpStatus resolve_with_fix(const Snapshot& snap, int var, double value) {
        basis_ = snap.basis;
        state_ = snap.state;
        factorize();
        return repair_and_reoptimize(var, value);
    }

    // Same, but the simplex already holds the parent's end state (bounds,
    // basis, and factorization), so no restore is needed.
    LpStatus resolve_with_fix_warm(int var, double value) {
        return repair_and_reoptimize(var, value);
    }

    Snapshot snapshot() const { return {basis_, state_}; }

    double objective() const {
        double obj = 0.0;
        for (int j = 0; j < ntotal_; ++j) obj += real_cost_[j] * x_[j];
        return sign_ * obj + model_.objective_constant;
    }

    std::vector<double> structural_x() const {
        return std::vector<double>(x_.begin(), x_.begin() + nstruct_);
    }

    const std::vector<int>& basis() const { return basis_; }

 private:
    LpStatus repair_and_reoptimize(int var, double value) {
        cost_.assign(ntotal_, 0.0);
        cost_[var] = value > 0.5 ? -1.0 : 1.0;
        const LpStatus push = optimize();
        if (push != LpStatus::Optimal) return LpStatus::Infeasible;
        if (std::abs(x_[var] - value) > kFeasTol) return LpStatus::Infeasible;
        pin(var, value);
        compute_x();
        cost_ = real_cost_;
        return optimize();
    }

    double raw_objective() const {
        double obj = 0.0;
        for (int j = 0; j < ntotal_; ++j) obj += cost_[j] * x_[j];
        return obj;
    }

    void factorize() {
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m_, m_);
        for (int r = 0; r < m_; ++r)
            for (const auto& e : cols_[basis_[r]]) B(e.first, r) += e.second;
        binv_ = B.partialPivLu().inverse();
        pivots_since_refactor_ = 0;
        compute_x();
    }

    void compute_x() {
        Eigen::VectorXd r(m_);
        for (int i = 0; i < m_; ++i) r[i] = rhs_[i];
        for (int j = 0; j < ntotal_; ++j) {
            if (state_[j] == ColState::Basic) continue;
            const double v = state_[j] == ColState::AtLo ? lo_[j] : hi_[j];
            x_[j] = v;
            if (v == 0.0) continue;
            for (const auto& e : cols_[j]) r[e.first] -= e.second * v;
        }
        const Eigen::VectorXd xb = binv_ * r;
        for (int i = 0; i < m_; ++i) x_[basis_[i]] = xb[i];
    }

    LpStatus optimize() {
        bool bland = false;
        int stall = 0;
        double last_obj = raw_objective();
        for (long iter = 0; iter < 200000; ++iter) {
            Eigen::VectorXd cb(m_);
            for (int i = 0; i < m_; ++i) cb[i] = cost_[basis_[i]];
            const Eigen::VectorXd y = binv_.transpose() * cb;

            int enter = -1;
            double enter_dir = 0.0, best_score = kDualTol;
            for (int j = 0; j < ntotal_; ++j) {
                if (state_[j] == ColState::Basic || lo_[j] == hi_[j]) continue;
                double d = cost_[j];
                for (const auto& e : cols_[j]) d -= y[e.first] * e.second;
                double score = 0.0, dir = 0.0;
                if (state_[j] == ColState::AtLo && d < -kDualTol) {
                    score = -d;
                    dir = 1.0;
                } else if (state_[j] == ColState::AtHi && d > kDualTol) {
                    score = d;
                    dir = -1.0;
                } else {
                    continue;
                }
                if (bland) {
                    enter = j;
                    enter_dir = dir;
                    break;
                }
                if (score > best_score) {
                    best_score = score;
                    enter = j;
                    enter_dir = dir;
                }
            }
            if (enter < 0) return LpStatus::Optimal;

            Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
            for (const auto& e : cols_[enter]) a[e.first] += e.second;
            const Eigen::VectorXd w = binv_ * a;

            double best_t = hi_[enter] - lo_[enter];  // bound flip
            int leave = -1;
            ColState leave_state = ColState::AtLo;
            for (int r = 0; r < m_; ++r) {
                const double wr = enter_dir * w[r];
                const int bv = basis_[r];
                double t;
                ColState target;
                if (wr > kPivTol) {
                    if (lo_[bv] == -kInf) continue;
                    t = (x_[bv] - lo_[bv]) / wr;
                    target = ColState::AtLo;
                } else if (wr < -kPivTol) {
                    if (hi_[bv] == kInf) continue;
                    t = (x_[bv] - hi_[bv]) / wr;
                    target = ColState::AtHi;
                } else {
                    continue;
                }
                if (t < 0.0) t = 0.0;
                if (t < best_t - 1e-12 ||
                    (leave >= 0 && t < best_t + 1e-12 && bv < basis_[leave])) {
                    best_t = t;
                    leave = r;
                    leave_state = target;
                }
            }
            if (leave < 0 && !std::isfinite(best_t)) return LpStatus::Unbounded;

            for (int r = 0; r < m_; ++r) x_[basis_[r]] -= best_t * enter_dir * w[r];
            if (leave < 0) {
                state_[enter] = state_[enter] == ColState::AtLo ? ColState::AtHi
                                                                : ColState::AtLo;
                x_[enter] = state_[enter] == ColState::AtLo ? lo_[enter] : hi_[enter];
            } else {
                const int lv = basis_[leave];
                x_[enter] = (state_[enter] == ColState::AtLo ? lo_[enter] : hi_[enter]) +
                            enter_dir * best_t;
                x_[lv] = leave_state == ColState::AtLo ? lo_[lv] : hi_[lv];
                state_[lv] = leave_state;
                state_[enter] = ColState::Basic;
                basis_[leave] = enter;
                const double piv = w[leave];
                if (std::abs(piv) < 1e-9) {
                    factorize();
                } else {
                    const Eigen::RowVectorXd prow = binv_.row(leave) / piv;
                    for (int i = 0; i < m_; ++i)
                        if (i != leave) binv_.row(i) -= w[i] * prow;
                    binv_.row(leave) = prow;
                    if (++pivots_since_refactor_ >= 500) factorize();
                }
            }

            const double obj = raw_objective();
            if (obj > last_obj - 1e-12 * (1.0 + std::abs(last_obj))) {
                if (++stall > 300) bland = true;
            } else {
                stall = 0;
            }
            last_obj = obj;
        }
        throw Error("simplex iteration limit reached");
    }

    const MipModel& model_;
    int nstruct_ = 0, m_ = 0, nslack_end_ = 0, ntotal_ = 0;
    double sign_ = 1.0;
    std::vector<std::vector<std::pair<int, double>>> cols_;
    std::vector<double> lo_, hi_, rhs_, cost_, real_cost_, x_;
    std::vector<int> basis_;
    std::vector<ColState> state_;
    Eigen::MatrixXd binv_;
    int pivots_since_refactor_ = 0;
};

}  // namespace

LpSolution solve_lp(const MipModel& m) {
    Simplex spx(m);
    LpSolution sol;
    sol.status = spx.solve_from_scratch();
    if (sol.status == LpStatus::Optimal) {
        sol.objective = spx.objective();
        sol.x = spx.structural_x();
        sol.basis = spx.basis();
    }
    return sol;
}

namespace {

struct BnbNode {
    double bound;
    long id;
    long parent_id = -1;
    std::shared_ptr<const Snapshot> parent;  // null = root, solved from scratch
    int fix_var = -1;
    double fix_value = 0.0;
    std::vector<std::pair<int, double>> earlier_fixes;
};

// Best bound first; newest node on ties, so a just-branched child usually
// continues straight from the simplex state its parent left behind.
struct NodeOrder {
    bool operator()(const BnbNode& a, const BnbNode& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;
        return a.id < b.id;
    }
};

}  // namespace

BnbResult solve_milp(const MipModel& m, const BnbLimits& limits) {
    if (!m.quadratic.empty())
        throw UnsupportedModel("quadratic objective not supported by the solver");
    const auto t0 = std::chrono::steady_clock::now();
    const auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    std::vector<int> binaries;
    for (int j = 0; j < static_cast<int>(m.vars.size()); ++j)
        if (m.vars[j].type == VarType::Binary) binaries.push_back(j);

    Simplex spx(m);
    BnbResult res;
    std::priority_queue<BnbNode, std::vector<BnbNode>, NodeOrder> open;
    open.push({-kInf, 0, -1, nullptr, -1, 0.0, {}});
    long next_id = 1;
    long loaded_state = -1;  // node whose end state the simplex currently holds
    bool hit_limit = false;
    bool gap_stop = false;

    while (!open.empty()) {
        if (elapsed() > limits.time_seconds ||
            (limits.max_nodes > 0 && res.nodes >= limits.max_nodes)) {
            hit_limit = true;
            break;
        }
        if (limits.gap > 0.0 && res.has_incumbent &&
            res.objective - open.top().bound <=
                limits.gap * std::max(1.0, std::abs(res.objective)) + 1e-12) {
            gap_stop = true;
            break;
        }
        BnbNode node = open.top();
        open.pop();
        if (res.has_incumbent && node.bound >= res.objective - 1e-9) continue;

        ++res.nodes;
        LpStatus st;
        if (!node.parent) {
            spx.reset_structural_bounds();
            st = spx.solve_from_scratch();
        } else if (node.parent_id == loaded_state) {
            st = spx.resolve_with_fix_warm(node.fix_var, node.fix_value);
        } else {
            spx.reset_structural_bounds();
            for (const auto& [var, value] : node.earlier_fixes) spx.pin(var, value);
            st = spx.resolve_with_fix(*node.parent, node.fix_var, node.fix_value);
        }
        loaded_state = st == LpStatus::Optimal ? node.id : -1;
        if (st == LpStatus::Unbounded) throw Error("unbounded relaxation");
        if (st != LpStatus::Optimal) continue;

        const double obj = spx.objective();
        if (res.has_incumbent && obj >= res.objective - 1e-9) continue;
        const std::vector<double> x = spx.structural_x();

        int branch = -1;
        double best_frac = 0.0;
        for (int b : binaries) {
            const double frac = std::abs(x[b] - std::round(x[b]));
            if (frac > kIntTol && frac > best_frac + 1e-12) {
                best_frac = frac;
                branch = b;
            }
        }
        if (branch < 0) {
            if (max_violation(m, x) <= 1e-6) {
                res.has_incumbent = true;
                res.objective = obj;
                res.x = x;
            }
            continue;
        }

        auto snap = std::make_shared<const Snapshot>(spx.snapshot());
        std::vector<std::pair<int, double>> fixes = node.earlier_fixes;
        if (node.fix_var >= 0) fixes.emplace_back(node.fix_var, node.fix_value);
        for (const double v : {0.0, 1.0}) {
            BnbNode child;
            child.bound = obj;
            child.id = next_id++;
            child.parent_id = node.id;
            child.parent = snap;
            child.fix_var = branch;
            child.fix_value = v;
            child.earlier_fixes = fixes;
            open.push(std::move(child));
        }
    }

    double open_bound = kInf;
    while (!open.empty()) {
        open_bound = std::min(open_bound, open.top().bound);
        open.pop();
    }
    res.seconds = elapsed();
    if (hit_limit || gap_stop) {
        res.status = gap_stop ? MilpStatus::Optimal : MilpStatus::TimeLimit;
        res.bound = std::min(open_bound, res.has_incumbent ? res.objective : kInf);
        if (res.bound == -kInf || res.bound == kInf)
            res.bound = res.has_incumbent ? res.objective : 0.0;
    } else if (res.has_incumbent) {
        res.status = MilpStatus::Optimal;
        res.bound = res.objective;
    } else {
        res.status = MilpStatus::Infeasible;
        res.bound = 0.0;
    }
    res.gap = res.has_incumbent
                  ? std::max(0.0, (res.objective - res.bound) /
                                      std::max(1.0, std::abs(res.objective)))
                  : kInf;
    return res;
}

}  // namespace cdcpath
