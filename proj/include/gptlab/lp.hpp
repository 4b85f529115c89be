#pragma once

// Exact rational linear programming. Two-phase primal simplex with Bland's rule,
// so every run terminates and identical inputs produce identical results. Every
// Infeasible verdict carries a Farkas witness that verify_farkas() re-checks
// without consulting the solver.

#include <optional>
#include <vector>

#include "gptlab/linalg.hpp"

namespace gptlab {

enum class Rel { LE, EQ, GE };

struct LPConstraint {
    QVec row;
    Rel rel = Rel::LE;
    Rat rhs;
};

struct LPProblem {
    int num_vars = 0;
    QVec objective;  // maximized; zero vector means pure feasibility
    std::vector<LPConstraint> constraints;
    // Optional simple bounds, indexed per variable (empty vectors = no bounds).
    std::vector<std::optional<Rat>> lower;
    std::vector<std::optional<Rat>> upper;

    static LPProblem feasibility(int num_vars) {
        LPProblem p;
        p.num_vars = num_vars;
        p.objective = qvec_zero(num_vars);
        return p;
    }
    void add(QVec row, Rel rel, Rat rhs) { constraints.push_back({std::move(row), rel, std::move(rhs)}); }
    void set_lower(int var, Rat bound);
    void set_upper(int var, Rat bound);
};

enum class LPStatus { Optimal, Feasible, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    std::optional<QVec> point;
    Rat objective_value;
    // Multipliers over canonical_rows(problem); see verify_farkas for the exact
    // contract. Present iff status == Infeasible.
    std::optional<QVec> farkas;
};

// The row list a Farkas witness refers to: explicit constraints first, then
// lower-bound rows (x_j >= l_j) in variable order, then upper-bound rows
// (x_j <= u_j) in variable order.
std::vector<LPConstraint> canonical_rows(const LPProblem& p);

LPResult lp_solve(const LPProblem& p);

// Exact re-checks, independent of the solver path.
bool verify_feasible_point(const LPProblem& p, const QVec& x);
bool verify_farkas(const LPProblem& p, const QVec& witness);

}  // namespace gptlab
