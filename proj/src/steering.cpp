#include "gptlab/steering.hpp"

namespace gptlab {

void validate_scenario(const SteeringScenario& sc) {
    if (!is_normalized(sc.sys, sc.rho))
        throw std::invalid_argument("scenario state is not normalized");
    for (const Measurement& m : sc.alice) validate_measurement(sc.sys.A, m);
    switch (sc.ambient) {
        case AmbientKind::Minimal:
            if (!in_minimal(sc.sys, sc.rho))
                throw std::invalid_argument("state lies outside the declared minimal composite");
            break;
        case AmbientKind::Maximal:
            if (!in_maximal(sc.sys, sc.rho))
                throw std::invalid_argument("state lies outside the declared maximal composite");
            break;
        case AmbientKind::Explicit: {
            if (!sc.ambient_body) throw std::invalid_argument("explicit ambient missing its polytope");
            Polytope body = with_vrep(*sc.ambient_body);
            if (!contains(body, flatten(sc.rho)))
                throw std::invalid_argument("state lies outside the declared ambient polytope");
            // Sandwich: every product vertex inside the ambient, every ambient
            // vertex inside the maximal composite.
            for (const QVec& u : sc.sys.A.vertices())
                for (const QVec& v : sc.sys.B.vertices())
                    if (!contains(body, flatten(product_state(sc.sys, u, v))))
                        throw std::invalid_argument("ambient polytope misses a product state");
            const int nb = sc.sys.basis_b.size();
            for (const QVec& w : body.vertices())
                if (!in_maximal(sc.sys, unflatten(w, sc.sys.basis_a.size(), nb)))
                    throw std::invalid_argument("ambient polytope exceeds the maximal composite");
            break;
        }
    }
}

Assemblage assemblage(const SteeringScenario& sc) {
    Assemblage out;
    for (const Measurement& m : sc.alice) {
        std::vector<QVec> row;
        for (const AffineFunctional& f : m.effects)
            row.push_back(partial_apply_effect(sc.sys, sc.rho, f, Side::A));
        out.sigma.push_back(std::move(row));
    }
    return out;
}

namespace {

size_t strategy_count(const Assemblage& asm_) {
    size_t n = 1;
    for (const auto& row : asm_.sigma) n *= row.size();
    return n;
}

std::vector<int> strategy_tuple(const Assemblage& asm_, size_t lambda) {
    std::vector<int> t(asm_.sigma.size());
    for (size_t x = asm_.sigma.size(); x-- > 0;) {
        size_t n = asm_.sigma[x].size();
        t[x] = static_cast<int>(lambda % n);
        lambda /= n;
    }
    return t;
}

}  // namespace

LHSOutcome has_lhs_model(const BipartiteSystem& sys, const Assemblage& asm_) {
    if (asm_.sigma.empty()) throw std::invalid_argument("empty assemblage");
    const size_t L = strategy_count(asm_);
    const auto& verts = sys.B.vertices();
    const size_t nv = verts.size();
    const int mB = sys.basis_b.size();
    const int total = static_cast<int>(L * nv);

    std::vector<QVec> vert_coords;
    for (const QVec& v : verts) vert_coords.push_back(state_coords(sys.basis_b, v));

    LPProblem lp = LPProblem::feasibility(total);
    for (int j = 0; j < total; ++j) lp.set_lower(j, Rat(0));
    auto var = [&](size_t lambda, size_t k) { return static_cast<int>(lambda * nv + k); };

    for (size_t x = 0; x < asm_.sigma.size(); ++x)
        for (size_t a = 0; a < asm_.sigma[x].size(); ++a)
            for (int c = 0; c < mB; ++c) {
                QVec row = qvec_zero(total);
                for (size_t lambda = 0; lambda < L; ++lambda) {
                    if (strategy_tuple(asm_, lambda)[x] != static_cast<int>(a)) continue;
                    for (size_t k = 0; k < nv; ++k) row(var(lambda, k)) = vert_coords[k](c);
                }
                lp.add(std::move(row), Rel::EQ, asm_.sigma[x][a](c));
            }

    LPResult res = lp_solve(lp);
    LHSOutcome out;
    if (res.status == LPStatus::Infeasible) {
        out.has_model = false;
        out.farkas = FarkasCertificate{std::move(lp), *res.farkas};
        return out;
    }
    out.has_model = true;
    LHSModelCert cert;
    cert.weights = qvec_zero(static_cast<Eigen::Index>(L));
    cert.state_witness = QMat(static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(nv));
    cert.state_witness.setConstant(Rat(0));
    for (size_t lambda = 0; lambda < L; ++lambda) {
        cert.strategies.push_back(strategy_tuple(asm_, lambda));
        Rat mass(0);
        for (size_t k = 0; k < nv; ++k) mass += (*res.point)(var(lambda, k));
        cert.weights(static_cast<Eigen::Index>(lambda)) = mass;
        QVec state = qvec_zero(sys.B.ambient_dim());
        if (mass > 0) {
            for (size_t k = 0; k < nv; ++k) {
                Rat w = (*res.point)(var(lambda, k)) / mass;
                cert.state_witness(static_cast<Eigen::Index>(lambda), static_cast<Eigen::Index>(k)) = w;
                state += w * verts[k];
            }
        } else {
            cert.state_witness(static_cast<Eigen::Index>(lambda), 0) = 1;
            state = verts[0];
        }
        cert.states.push_back(std::move(state));
    }
    out.cert = std::move(cert);
    return out;
}

bool verify_lhs_model(const BipartiteSystem& sys, const Assemblage& asm_,
                      const LHSModelCert& cert) {
    const size_t L = strategy_count(asm_);
    if (cert.strategies.size() != L || cert.states.size() != L ||
        cert.weights.size() != static_cast<Eigen::Index>(L))
        return false;
    const auto& verts = sys.B.vertices();
    Rat total(0);
    for (size_t lambda = 0; lambda < L; ++lambda) {
        if (cert.strategies[lambda] != strategy_tuple(asm_, lambda)) return false;
        const Rat& p = cert.weights(static_cast<Eigen::Index>(lambda));
        if (p < 0) return false;
        total += p;
        // Convex-combination witness places sigma_lambda inside K_B.
        Rat wsum(0);
        QVec rebuilt = qvec_zero(sys.B.ambient_dim());
        for (size_t k = 0; k < verts.size(); ++k) {
            const Rat& w = cert.state_witness(static_cast<Eigen::Index>(lambda),
                                              static_cast<Eigen::Index>(k));
            if (w < 0) return false;
            wsum += w;
            rebuilt += w * verts[k];
        }
        if (wsum != 1 || rebuilt != cert.states[lambda]) return false;
    }
    if (total != 1) return false;

    for (size_t x = 0; x < asm_.sigma.size(); ++x)
        for (size_t a = 0; a < asm_.sigma[x].size(); ++a) {
            QVec sum = qvec_zero(sys.basis_b.size());
            for (size_t lambda = 0; lambda < L; ++lambda) {
                if (cert.strategies[lambda][x] != static_cast<int>(a)) continue;
                const Rat& p = cert.weights(static_cast<Eigen::Index>(lambda));
                if (p == 0) continue;
                sum += p * state_coords(sys.basis_b, cert.states[lambda]);
            }
            if (sum != asm_.sigma[x][a]) return false;
        }
    return true;
}

StateSpace conditioned_state_space(const SteeringScenario& sc) {
    std::vector<QVec> states;
    for (const AffineFunctional& g : effects_b(sc.sys).generators) {
        QVec coords = partial_apply_effect(sc.sys, sc.rho, g, Side::B);
        QVec lifted = to_lifted(sc.sys.basis_a, coords);
        const Rat mass = lifted(0);
        if (mass == 0) continue;
        QVec state = lifted.tail(sc.sys.A.ambient_dim()) / mass;
        states.push_back(std::move(state));
    }
    if (states.empty()) throw std::invalid_argument("conditioned state space is empty");
    return StateSpace("conditioned", sc.sys.A.ambient_dim(), std::move(states));
}

namespace {

// Rows: span-basis coordinates of (f x id)(rho) over the given effects.
QMat partial_image(const SteeringScenario& sc, const std::vector<AffineFunctional>& effects) {
    QMat rows(static_cast<Eigen::Index>(effects.size()), sc.sys.basis_b.size());
    for (size_t i = 0; i < effects.size(); ++i)
        rows.row(static_cast<Eigen::Index>(i)) =
            partial_apply_effect(sc.sys, sc.rho, effects[i], Side::A).transpose();
    return rows;
}

}  // namespace

bool is_full_dimensional(const SteeringScenario& sc, FullDimMode mode) {
    std::vector<AffineFunctional> effects;
    if (mode == FullDimMode::AliceEffects) {
        effects = effects_a(sc.sys).generators;
    } else {
        StateSpace k_rho = conditioned_state_space(sc);
        effects = effect_polytope(k_rho).generators;
    }
    return exact_rank(partial_image(sc, effects)) == sc.sys.basis_b.size();
}

std::optional<SteeringScenario> restrict_to_J(const SteeringScenario& sc) {
    if (is_full_dimensional(sc, FullDimMode::ConditionedEffects))
        throw std::invalid_argument("restrict_to_J: scenario is already full-dimensional");

    StateSpace k_rho = conditioned_state_space(sc);
    QMat image = partial_image(sc, effect_polytope(k_rho).generators);
    // Basis of J inside the span coordinates of K_B.
    std::vector<int> pick = independent_columns(image.transpose());
    const int jdim = static_cast<int>(pick.size());
    const int mB = sc.sys.basis_b.size();
    QMat jbasis(mB, jdim);
    for (int k = 0; k < jdim; ++k) jbasis.col(k) = image.row(pick[static_cast<size_t>(k)]).transpose();
    QMat annihilator = kernel_basis(jbasis.transpose());  // columns n with n . J = 0

    // Feasibility of an idempotent affine retraction onto K_B n J: unknowns are
    // the linear map L (by columns) and convex coefficients expressing every
    // vertex image inside K_B.
    const auto& verts = sc.sys.B.vertices();
    const size_t nv = verts.size();
    std::vector<QVec> vert_coords;
    for (const QVec& v : verts) vert_coords.push_back(state_coords(sc.sys.basis_b, v));

    const int l_vars = mB * mB;
    const int c_vars = static_cast<int>(nv * nv);
    LPProblem lp = LPProblem::feasibility(l_vars + c_vars);
    auto lvar = [&](int row, int col) { return row * mB + col; };
    auto cvar = [&](size_t k, size_t j) { return l_vars + static_cast<int>(k * nv + j); };
    for (int j = 0; j < c_vars; ++j) lp.set_lower(l_vars + j, Rat(0));

    for (size_t k = 0; k < nv; ++k) {
        // L w_k = sum_j c_{kj} w_j  (coordinates), sum_j c_{kj} = 1.
        for (int row = 0; row < mB; ++row) {
            QVec eq = qvec_zero(l_vars + c_vars);
            for (int col = 0; col < mB; ++col) eq(lvar(row, col)) = vert_coords[k](col);
            for (size_t j = 0; j < nv; ++j) eq(cvar(k, j)) = -vert_coords[j](row);
            lp.add(std::move(eq), Rel::EQ, Rat(0));
        }
        QVec ones = qvec_zero(l_vars + c_vars);
        for (size_t j = 0; j < nv; ++j) ones(cvar(k, j)) = 1;
        lp.add(std::move(ones), Rel::EQ, Rat(1));
        // Image lands inside J.
        for (Eigen::Index n = 0; n < annihilator.cols(); ++n) {
            QVec eq = qvec_zero(l_vars + c_vars);
            for (int row = 0; row < mB; ++row)
                for (int col = 0; col < mB; ++col)
                    eq(lvar(row, col)) += annihilator(row, n) * vert_coords[k](col);
            lp.add(std::move(eq), Rel::EQ, Rat(0));
        }
    }
    // L fixes J.
    for (int jb = 0; jb < jdim; ++jb) {
        for (int row = 0; row < mB; ++row) {
            QVec eq = qvec_zero(l_vars + c_vars);
            for (int col = 0; col < mB; ++col) eq(lvar(row, col)) = jbasis(col, jb);
            lp.add(std::move(eq), Rel::EQ, jbasis(row, jb));
        }
    }

    if (lp_solve(lp).status == LPStatus::Infeasible) return std::nullopt;

    // K_B' = K_B intersected with J, as an explicit polytope.
    std::vector<Halfspace> hs = with_hrep(sc.sys.B.body()).facets();
    const QMat& pinv = sc.sys.basis_b.pinv;
    for (Eigen::Index n = 0; n < annihilator.cols(); ++n) {
        QVec lifted_row = pinv.transpose() * annihilator.col(n);
        QVec normal = lifted_row.tail(sc.sys.B.ambient_dim());
        Rat offset = -lifted_row(0);
        hs.push_back({normal, offset});
        hs.push_back({-normal, -offset});
    }
    Polytope cut = dd_hrep_to_vrep(Polytope::from_halfspaces(sc.sys.B.ambient_dim(), hs));

    SteeringScenario reduced = sc;
    reduced.sys = make_system(sc.sys.A, StateSpace(sc.sys.B.label() + "|J",
                                                   sc.sys.B.ambient_dim(), cut.vertices()));
    // Re-express the tensor over the new B basis.
    QMat new_rho(sc.sys.basis_a.size(), reduced.sys.basis_b.size());
    for (int i = 0; i < sc.sys.basis_a.size(); ++i) {
        QVec lifted = sc.sys.basis_b.basis * sc.rho.row(i).transpose();
        QVec coords = reduced.sys.basis_b.pinv * lifted;
        if (reduced.sys.basis_b.basis * coords != lifted)
            throw GeometryError("restrict_to_J: tensor leaves the reduced span");
        new_rho.row(i) = coords.transpose();
    }
    reduced.rho = std::move(new_rho);
    reduced.ambient = AmbientKind::Maximal;
    reduced.ambient_body.reset();
    return reduced;
}

RestrictedTheory induced_theory(const SteeringScenario& sc) {
    StateSpace k_rho = conditioned_state_space(sc);
    EffectRestriction e_m = generate_effect_algebra(sc.alice);
    return RestrictedTheory{std::move(k_rho), std::move(e_m), sc.alice};
}

CrosscheckReport steering_crosscheck(const SteeringScenario& sc) {
    CrosscheckReport report;
    if (!is_full_dimensional(sc, FullDimMode::ConditionedEffects)) {
        report.applicable = false;
        return report;
    }
    report.applicable = true;
    report.lhs_outcome = has_lhs_model(sc.sys, assemblage(sc));
    report.lhs = report.lhs_outcome.has_model;
    report.prep_outcome = prep_noncontextual(induced_theory(sc));
    report.prep_nc = report.prep_outcome.noncontextual;
    report.agree = (report.lhs == report.prep_nc);
    return report;
}

std::pair<Rat, Rat> bisect_threshold(const std::function<bool(const Rat&)>& predicate, Rat lo,
                                     Rat hi, const Rat& tol) {
    if (!predicate(lo)) throw std::invalid_argument("bisect_threshold: predicate false at lo");
    if (predicate(hi)) throw std::invalid_argument("bisect_threshold: predicate true at hi");
    while (hi - lo > tol) {
        Rat mid = (lo + hi) / 2;
        if (predicate(mid))
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

}  // namespace gptlab
