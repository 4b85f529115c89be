#include "gptlab/lp.hpp"
#ifdef GPTLAB_LP_TRACE
extern long gptlab_lp_pivots;
#endif

#include <cassert>
#include <stdexcept>

namespace gptlab {

void LPProblem::set_lower(int var, Rat bound) {
    if (lower.empty()) lower.resize(static_cast<size_t>(num_vars));
    lower[static_cast<size_t>(var)] = std::move(bound);
}

void LPProblem::set_upper(int var, Rat bound) {
    if (upper.empty()) upper.resize(static_cast<size_t>(num_vars));
    upper[static_cast<size_t>(var)] = std::move(bound);
}

std::vector<LPConstraint> canonical_rows(const LPProblem& p) {
    std::vector<LPConstraint> rows = p.constraints;
    for (int j = 0; j < p.num_vars; ++j) {
        if (p.lower.empty() || !p.lower[static_cast<size_t>(j)]) continue;
        QVec e = qvec_zero(p.num_vars);
        e(j) = 1;
        rows.push_back({e, Rel::GE, *p.lower[static_cast<size_t>(j)]});
    }
    for (int j = 0; j < p.num_vars; ++j) {
        if (p.upper.empty() || !p.upper[static_cast<size_t>(j)]) continue;
        QVec e = qvec_zero(p.num_vars);
        e(j) = 1;
        rows.push_back({e, Rel::LE, *p.upper[static_cast<size_t>(j)]});
    }
    return rows;
}

bool verify_feasible_point(const LPProblem& p, const QVec& x) {
    if (x.size() != p.num_vars) return false;
    for (const LPConstraint& c : canonical_rows(p)) {
        Rat lhs = c.row.dot(x);
        switch (c.rel) {
            case Rel::LE: if (lhs > c.rhs) return false; break;
            case Rel::GE: if (lhs < c.rhs) return false; break;
            case Rel::EQ: if (lhs != c.rhs) return false; break;
        }
    }
    return true;
}

bool verify_farkas(const LPProblem& p, const QVec& w) {
    std::vector<LPConstraint> rows = canonical_rows(p);
    if (w.size() != static_cast<Eigen::Index>(rows.size())) return false;
    QVec combined = qvec_zero(p.num_vars);
    Rat rhs(0);
    for (size_t i = 0; i < rows.size(); ++i) {
        const Rat& wi = w(static_cast<Eigen::Index>(i));
        if (rows[i].rel == Rel::LE && wi < 0) return false;
        if (rows[i].rel == Rel::GE && wi > 0) return false;
        if (wi == 0) continue;
        combined += wi * rows[i].row;
        rhs += wi * rows[i].rhs;
    }
    for (Eigen::Index j = 0; j < combined.size(); ++j)
        if (combined(j) != 0) return false;
    return rhs < 0;
}

namespace {

struct Column {
    enum Kind { Shift, Pos, Neg, Slack, Art } kind;
    int index;  // variable for Shift/Pos/Neg, internal row for Slack/Art
};

// Dense two-phase simplex tableau. Row layout: m constraint rows, then the
// phase-1 cost row and the phase-2 cost row. Column layout: structural columns,
// slacks, artificials, rhs.
struct Simplex {
    QMat t;
    std::vector<Column> cols;
    std::vector<int> basis;        // basic column per constraint row
    int m = 0;                     // constraint rows
    int n = 0;                     // columns excluding rhs
    int first_art = 0;

    int cost_row(int phase) const { return m + phase - 1; }
    int rhs_col() const { return n; }

    void pivot(int row, int col) {
#ifdef GPTLAB_LP_TRACE
        ++::gptlab_lp_pivots;
#endif
        Rat piv = t(row, col);
        t.row(row) /= piv;
        for (int i = 0; i < m + 2; ++i) {
            if (i == row || t(i, col) == 0) continue;
            Rat f = t(i, col);
            t.row(i) -= f * t.row(row);
        }
        basis[static_cast<size_t>(row)] = col;
    }

    // Entering column. Normally the most negative reduced cost (ties to the
    // lowest index); once a degenerate stall is detected the caller flips
    // bland_mode and the rule becomes Bland's least-index, which cannot cycle.
    // Both rules are deterministic. allow_art widens the candidate set to
    // artificial columns (phase 1 only).
    int entering(int phase, bool allow_art, bool bland_mode) const {
        int limit = allow_art ? n : first_art;
        int best = -1;
        for (int j = 0; j < limit; ++j) {
            if (t(cost_row(phase), j) >= 0) continue;
            if (bland_mode) return j;
            if (best < 0 || t(cost_row(phase), j) < t(cost_row(phase), best)) best = j;
        }
        return best;
    }

    // Bland ratio test; ties broken by lowest basic column index. -1 = unbounded.
    int leaving(int col) const {
        int best = -1;
        Rat best_ratio(0);
        for (int i = 0; i < m; ++i) {
            if (t(i, col) <= 0) continue;
            Rat ratio = t(i, rhs_col()) / t(i, col);
            if (best < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(best)])) {
                best = i;
                best_ratio = ratio;
            }
        }
        return best;
    }

    // Returns false when the phase-2 problem is unbounded.
    bool run(int phase) {
        bool bland_mode = false;
        int stalled = 0;
        const int stall_limit = 4 * (m + 2);
        for (;;) {
            int col = entering(phase, phase == 1, bland_mode);
            if (col < 0) return true;
            int row = leaving(col);
            if (row < 0) return false;
            Rat before = t(cost_row(phase), rhs_col());
            pivot(row, col);
            if (!bland_mode) {
                if (t(cost_row(phase), rhs_col()) == before) {
                    if (++stalled >= stall_limit) bland_mode = true;
                } else {
                    stalled = 0;
                }
            }
        }
    }
};

}  // namespace

LPResult lp_solve(const LPProblem& p) {
    const int nv = p.num_vars;
    auto lower_of = [&](int j) -> const std::optional<Rat>* {
        return p.lower.empty() ? nullptr : &p.lower[static_cast<size_t>(j)];
    };

    // Structural columns: one shifted column per lower-bounded variable, a
    // positive/negative pair per free variable.
    std::vector<Column> cols;
    std::vector<int> var_col(static_cast<size_t>(nv));
    for (int j = 0; j < nv; ++j) {
        var_col[static_cast<size_t>(j)] = static_cast<int>(cols.size());
        const auto* lb = lower_of(j);
        if (lb && *lb)
            cols.push_back({Column::Shift, j});
        else {
            cols.push_back({Column::Pos, j});
            cols.push_back({Column::Neg, j});
        }
    }
    const int ns = static_cast<int>(cols.size());

    // Internal rows: the explicit constraints, then one LE row per upper bound.
    struct InternalRow { QVec coeff; Rel rel; Rat rhs; int canonical; };
    std::vector<InternalRow> rows;
    int num_lower = 0;
    for (int j = 0; j < nv; ++j)
        if (lower_of(j) && *lower_of(j)) ++num_lower;
    {
        int canonical = 0;
        for (const LPConstraint& c : p.constraints)
            rows.push_back({c.row, c.rel, c.rhs, canonical++});
        canonical += num_lower;  // lower-bound rows carry no internal row
        for (int j = 0; j < nv; ++j) {
            if (p.upper.empty() || !p.upper[static_cast<size_t>(j)]) continue;
            QVec e = qvec_zero(nv);
            e(j) = 1;
            rows.push_back({e, Rel::LE, *p.upper[static_cast<size_t>(j)], canonical++});
        }
    }

    const int m = static_cast<int>(rows.size());
    const int total_canonical = static_cast<int>(p.constraints.size()) + num_lower +
                                (m - static_cast<int>(p.constraints.size()));

    auto shifted_value = [&](int j) -> Rat {
        const auto* lb = lower_of(j);
        return (lb && *lb) ? **lb : Rat(0);
    };

    if (m == 0) {
        // Only (consistent-by-construction) lower bounds remain.
        QVec x(nv);
        for (int j = 0; j < nv; ++j) x(j) = shifted_value(j);
        LPResult r;
        bool trivial_obj = true;
        for (Eigen::Index j = 0; j < p.objective.size(); ++j)
            if (p.objective(j) != 0) trivial_obj = false;
        if (!trivial_obj) {
            // Any nonzero objective over a translated orthant / free space is
            // unbounded above unless it is identically zero on it.
            bool bounded = true;
            for (int j = 0; j < nv; ++j) {
                const Rat cj = j < p.objective.size() ? p.objective(j) : Rat(0);
                const auto* lb = lower_of(j);
                if (cj > 0 || (cj != 0 && !(lb && *lb))) bounded = false;
            }
            if (!bounded) {
                LPResult u;
                u.status = LPStatus::Unbounded;
                return u;
            }
            r.status = LPStatus::Optimal;
            r.objective_value = p.objective.size() ? p.objective.dot(x) : Rat(0);
        } else {
            r.status = LPStatus::Feasible;
        }
        r.point = x;
        return r;
    }

    // Slacks and artificials.
    for (int i = 0; i < m; ++i)
        if (rows[static_cast<size_t>(i)].rel != Rel::EQ) cols.push_back({Column::Slack, i});
    const int first_art = static_cast<int>(cols.size());
    for (int i = 0; i < m; ++i) cols.push_back({Column::Art, i});
    const int n = static_cast<int>(cols.size());

    Simplex s;
    s.m = m;
    s.n = n;
    s.first_art = first_art;
    s.cols = cols;
    s.t = QMat(m + 2, n + 1);
    s.t.setConstant(Rat(0));
    s.basis.resize(static_cast<size_t>(m));

    std::vector<int> row_sign(static_cast<size_t>(m), 1);
    {
        int slack_cursor = ns;
        for (int i = 0; i < m; ++i) {
            const InternalRow& row = rows[static_cast<size_t>(i)];
            Rat rhs = row.rhs;
            for (int j = 0; j < nv; ++j) {
                Rat a = j < row.coeff.size() ? row.coeff(j) : Rat(0);
                if (a == 0) continue;
                int c = var_col[static_cast<size_t>(j)];
                if (cols[static_cast<size_t>(c)].kind == Column::Shift) {
                    s.t(i, c) = a;
                    rhs -= a * shifted_value(j);
                } else {
                    s.t(i, c) = a;
                    s.t(i, c + 1) = -a;
                }
            }
            if (row.rel != Rel::EQ) {
                s.t(i, slack_cursor) = row.rel == Rel::LE ? Rat(1) : Rat(-1);
                cols[static_cast<size_t>(slack_cursor)].index = i;
                s.cols[static_cast<size_t>(slack_cursor)].index = i;
                ++slack_cursor;
            }
            s.t(i, s.rhs_col()) = rhs;
            if (rhs < 0) {
                row_sign[static_cast<size_t>(i)] = -1;
                s.t.row(i) = -s.t.row(i);
            }
            s.t(i, first_art + i) = 1;
            s.basis[static_cast<size_t>(i)] = first_art + i;
        }
    }

    // Phase-1 reduced costs: cost 1 on artificials, basis = artificials.
    for (int j = 0; j < n; ++j) {
        Rat acc(0);
        for (int i = 0; i < m; ++i) acc += s.t(i, j);
        s.t(s.cost_row(1), j) = (j >= first_art ? Rat(1) : Rat(0)) - acc;
    }
    {
        Rat acc(0);
        for (int i = 0; i < m; ++i) acc += s.t(i, s.rhs_col());
        s.t(s.cost_row(1), s.rhs_col()) = -acc;
    }

    s.run(1);
    Rat phase1_value = -s.t(s.cost_row(1), s.rhs_col());

    if (phase1_value > 0) {
        // Dual multipliers off the artificial columns of the phase-1 cost row.
        LPResult r;
        r.status = LPStatus::Infeasible;
        QVec w = qvec_zero(total_canonical);
        QVec combined = qvec_zero(nv);  // running sum over explicit rows
        for (int i = 0; i < m; ++i) {
            Rat y = Rat(1) - s.t(s.cost_row(1), first_art + i);
            Rat wi = -Rat(row_sign[static_cast<size_t>(i)]) * y;
            w(rows[static_cast<size_t>(i)].canonical) = wi;
            if (wi != 0)
                for (int j = 0; j < nv; ++j)
                    if (j < rows[static_cast<size_t>(i)].coeff.size())
                        combined(j) += wi * rows[static_cast<size_t>(i)].coeff(j);
        }
        // Residual multipliers close the combination on lower-bound rows.
        int canonical = static_cast<int>(p.constraints.size());
        for (int j = 0; j < nv; ++j) {
            const auto* lb = lower_of(j);
            if (!(lb && *lb)) continue;
            w(canonical++) = -combined(j);
        }
        if (!verify_farkas(p, w))
            throw std::logic_error("lp_solve: produced Farkas witness failed self-check");
        r.farkas = w;
        return r;
    }

    // Pivot degenerate artificials out of the basis where possible; rows whose
    // non-artificial entries are all zero are redundant and stay inert.
    for (int i = 0; i < m; ++i) {
        if (s.basis[static_cast<size_t>(i)] < first_art) continue;
        for (int j = 0; j < first_art; ++j) {
            if (s.t(i, j) != 0) {
                s.pivot(i, j);
                break;
            }
        }
    }

    bool trivial_obj = true;
    for (Eigen::Index j = 0; j < p.objective.size(); ++j)
        if (p.objective(j) != 0) trivial_obj = false;

    bool unbounded = false;
    if (!trivial_obj) {
        // Phase-2 reduced costs for minimizing -objective.
        QVec cost = qvec_zero(n);
        for (int c = 0; c < ns; ++c) {
            const Column& col = cols[static_cast<size_t>(c)];
            Rat cj = col.index < p.objective.size() ? p.objective(col.index) : Rat(0);
            if (col.kind == Column::Shift || col.kind == Column::Pos)
                cost(c) = -cj;
            else if (col.kind == Column::Neg)
                cost(c) = cj;
        }
        for (int j = 0; j < n; ++j) {
            Rat acc(0);
            for (int i = 0; i < m; ++i) acc += cost(s.basis[static_cast<size_t>(i)]) * s.t(i, j);
            s.t(s.cost_row(2), j) = cost(j) - acc;
        }
        Rat acc(0);
        for (int i = 0; i < m; ++i) acc += cost(s.basis[static_cast<size_t>(i)]) * s.t(i, s.rhs_col());
        s.t(s.cost_row(2), s.rhs_col()) = -acc;
        unbounded = !s.run(2);
    }

    if (unbounded) {
        LPResult r;
        r.status = LPStatus::Unbounded;
        return r;
    }

    QVec structural = qvec_zero(ns);
    for (int i = 0; i < m; ++i)
        if (s.basis[static_cast<size_t>(i)] < ns)
            structural(s.basis[static_cast<size_t>(i)]) = s.t(i, s.rhs_col());
    QVec x(nv);
    for (int j = 0; j < nv; ++j) {
        int c = var_col[static_cast<size_t>(j)];
        if (cols[static_cast<size_t>(c)].kind == Column::Shift)
            x(j) = shifted_value(j) + structural(c);
        else
            x(j) = structural(c) - structural(c + 1);
    }

    LPResult r;
    r.status = trivial_obj ? LPStatus::Feasible : LPStatus::Optimal;
    r.point = x;
    if (!trivial_obj) r.objective_value = p.objective.dot(x);
    if (!verify_feasible_point(p, x))
        throw std::logic_error("lp_solve: produced point failed self-check");
    return r;
}

}  // namespace gptlab
