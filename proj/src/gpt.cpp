#include "gptlab/gpt.hpp"

#include <algorithm>

#include "gptlab/lp.hpp"

namespace gptlab {

AffineFunctional zero_effect(int dim) { return {qvec_zero(dim), Rat(0)}; }
AffineFunctional unit_effect(int dim) { return {qvec_zero(dim), Rat(1)}; }

Measurement make_measurement(std::string label, std::vector<AffineFunctional> effects) {
    Measurement m;
    m.label = std::move(label);
    m.effects = std::move(effects);
    for (size_t i = 0; i < m.effects.size(); ++i) m.outcomes.push_back(std::to_string(i));
    return m;
}

StateSpace::StateSpace(std::string label, int ambient_dim, std::vector<QVec> vertices, bool prune)
    : label_(std::move(label)),
      body_(dd_vrep_to_hrep(Polytope::from_vertices(
          ambient_dim, prune ? prune_to_extreme(vertices) : std::move(vertices)))),
      chart_(body_.vertices()) {}

bool StateSpace::contains_state(const QVec& x) const {
    return contains(body_, x);
}

QVec functional_coeffs(const StateSpace& K, const AffineFunctional& f) {
    const AffineChart& chart = K.chart();
    const int r = chart.dim();
    QVec coeffs(r + 1);
    if (r > 0) coeffs.head(r) = chart.basis().transpose() * f.linear;
    coeffs(r) = f.linear.dot(chart.origin()) + f.constant;
    return coeffs;
}

AffineFunctional functional_from_coeffs(const StateSpace& K, const QVec& coeffs) {
    const AffineChart& chart = K.chart();
    const int r = chart.dim();
    AffineFunctional f;
    f.linear = r > 0 ? QVec(chart.left_inverse().transpose() * coeffs.head(r)) : qvec_zero(K.ambient_dim());
    f.constant = coeffs(r) - f.linear.dot(chart.origin());
    return f;
}

bool same_effect(const StateSpace& K, const AffineFunctional& a, const AffineFunctional& b) {
    return functional_coeffs(K, a) == functional_coeffs(K, b);
}

EffectRestriction effect_polytope(const StateSpace& K) {
    const AffineChart& chart = K.chart();
    const int r = chart.dim();
    // Coefficient-space polytope: 0 <= a·t_k + c <= 1 at every vertex.
    std::vector<Halfspace> rows;
    for (const QVec& v : K.vertices()) {
        QVec lifted(r + 1);
        if (r > 0) lifted.head(r) = chart.to_chart(v);
        lifted(r) = 1;
        rows.push_back({-lifted, Rat(0)});
        rows.push_back({lifted, Rat(1)});
    }
    Polytope verts = dd_hrep_to_vrep(Polytope::from_halfspaces(r + 1, rows));
    EffectRestriction e;
    for (const QVec& coeffs : verts.vertices()) e.generators.push_back(functional_from_coeffs(K, coeffs));
    return e;
}

DualStateSpace dual_state_space(const StateSpace& K, const EffectRestriction& E) {
    const int r = K.aff_dim();
    std::vector<QVec> coeff_list;
    coeff_list.reserve(E.generators.size());
    for (const AffineFunctional& g : E.generators) coeff_list.push_back(functional_coeffs(K, g));

    // Basis of span(E): unit effect first, then greedy over the generators.
    QMat candidates(r + 1, static_cast<Eigen::Index>(coeff_list.size()) + 1);
    candidates.col(0) = functional_coeffs(K, unit_effect(K.ambient_dim()));
    for (size_t j = 0; j < coeff_list.size(); ++j) candidates.col(static_cast<Eigen::Index>(j) + 1) = coeff_list[j];
    std::vector<int> picked = independent_columns(candidates);

    DualStateSpace dual;
    QMat basis_mat(r + 1, static_cast<Eigen::Index>(picked.size()));
    for (size_t k = 0; k < picked.size(); ++k) {
        basis_mat.col(static_cast<Eigen::Index>(k)) = candidates.col(picked[k]);
        dual.basis.push_back(picked[k] == 0 ? unit_effect(K.ambient_dim())
                                            : E.generators[static_cast<size_t>(picked[k] - 1)]);
    }
    const int m = static_cast<int>(picked.size());

    std::vector<Halfspace> rows;
    for (const QVec& coeffs : coeff_list) {
        auto beta = solve_linear(basis_mat, coeffs);
        if (!beta) throw GeometryError("dual_state_space: generator outside chosen span");
        QVec row = -*beta;
        rows.push_back({std::move(row), Rat(0)});
    }
    QVec e1 = qvec_zero(m);
    e1(0) = 1;
    rows.push_back({e1, Rat(1)});
    rows.push_back({-e1, Rat(-1)});
    dual.body = dd_hrep_to_vrep(Polytope::from_halfspaces(m, rows));
    return dual;
}

QVec evaluation_channel(const StateSpace& K, const DualStateSpace& dual, const QVec& rho) {
    if (!K.contains_state(rho)) throw std::invalid_argument("evaluation_channel: state outside K");
    QVec xi(static_cast<Eigen::Index>(dual.basis.size()));
    for (size_t k = 0; k < dual.basis.size(); ++k)
        xi(static_cast<Eigen::Index>(k)) = dual.basis[k].value(rho);
    return xi;
}

QVec effect_in_dual_basis(const StateSpace& K, const DualStateSpace& dual,
                          const AffineFunctional& f) {
    const int r = K.aff_dim();
    QMat basis_mat(r + 1, static_cast<Eigen::Index>(dual.basis.size()));
    for (size_t k = 0; k < dual.basis.size(); ++k)
        basis_mat.col(static_cast<Eigen::Index>(k)) = functional_coeffs(K, dual.basis[k]);
    auto beta = solve_linear(basis_mat, functional_coeffs(K, f));
    if (!beta) throw std::invalid_argument("effect outside span(E)");
    return *beta;
}

EffectRestriction generate_effect_algebra(const std::vector<Measurement>& ms) {
    if (ms.empty()) throw std::invalid_argument("generate_effect_algebra: empty measurement list");
    const int dim = static_cast<int>(ms[0].effects.at(0).linear.size());

    std::vector<AffineFunctional> gens;
    auto push_unique = [&](AffineFunctional f) {
        for (const AffineFunctional& g : gens)
            if (g.linear == f.linear && g.constant == f.constant) return;
        gens.push_back(std::move(f));
    };
    push_unique(zero_effect(dim));
    push_unique(unit_effect(dim));
    for (const Measurement& m : ms) {
        const size_t n = m.effects.size();
        if (n > 20) throw std::invalid_argument("generate_effect_algebra: too many outcomes");
        for (size_t mask = 1; mask + 1 < (size_t{1} << n); ++mask) {
            AffineFunctional sum = zero_effect(dim);
            for (size_t i = 0; i < n; ++i)
                if (mask & (size_t{1} << i)) {
                    sum.linear += m.effects[i].linear;
                    sum.constant += m.effects[i].constant;
                }
            push_unique(std::move(sum));
        }
    }
    return {std::move(gens)};
}

Measurement apply_postprocessing(const Measurement& m, const PostProcessing& nu) {
    const Eigen::Index in = nu.matrix.rows(), out = nu.matrix.cols();
    if (static_cast<size_t>(in) != m.effects.size())
        throw std::invalid_argument("apply_postprocessing: outcome count mismatch");
    for (Eigen::Index i = 0; i < in; ++i) {
        Rat row_sum(0);
        for (Eigen::Index j = 0; j < out; ++j) {
            if (nu.matrix(i, j) < 0) throw std::invalid_argument("post-processing matrix has a negative entry");
            row_sum += nu.matrix(i, j);
        }
        if (row_sum != 1) throw std::invalid_argument("post-processing matrix row does not sum to one");
    }
    const int dim = static_cast<int>(m.effects[0].linear.size());
    Measurement result;
    result.label = m.label.empty() ? std::string("post-processed") : m.label + "'";
    for (Eigen::Index j = 0; j < out; ++j) {
        AffineFunctional g = zero_effect(dim);
        for (Eigen::Index i = 0; i < in; ++i) {
            g.linear += nu.matrix(i, j) * m.effects[static_cast<size_t>(i)].linear;
            g.constant += nu.matrix(i, j) * m.effects[static_cast<size_t>(i)].constant;
        }
        result.effects.push_back(std::move(g));
        result.outcomes.push_back(std::to_string(j));
    }
    return result;
}

bool is_tomographically_complete(const StateSpace& K, const EffectRestriction& E) {
    const int r = K.aff_dim();
    if (r == 0) return true;
    QMat linears(static_cast<Eigen::Index>(E.generators.size()), r);
    for (size_t j = 0; j < E.generators.size(); ++j)
        linears.row(static_cast<Eigen::Index>(j)) =
            functional_coeffs(K, E.generators[j]).head(r).transpose();
    return exact_rank(linears) == r;
}

std::optional<QVec> effect_membership_witness(const StateSpace& K, const EffectRestriction& E,
                                              const AffineFunctional& f) {
    const int n = static_cast<int>(E.generators.size());
    const QVec target = functional_coeffs(K, f);
    LPProblem lp = LPProblem::feasibility(n);
    for (int j = 0; j < n; ++j) lp.set_lower(j, Rat(0));
    for (Eigen::Index row = 0; row < target.size(); ++row) {
        QVec coeff(n);
        for (int j = 0; j < n; ++j) coeff(j) = functional_coeffs(K, E.generators[static_cast<size_t>(j)])(row);
        lp.add(std::move(coeff), Rel::EQ, target(row));
    }
    QVec ones(n);
    for (int j = 0; j < n; ++j) ones(j) = 1;
    lp.add(std::move(ones), Rel::EQ, Rat(1));
    LPResult r = lp_solve(lp);
    if (r.status == LPStatus::Infeasible) return std::nullopt;
    return r.point;
}

void validate_measurement(const StateSpace& K, const Measurement& m) {
    if (m.effects.empty()) throw std::invalid_argument("measurement with no effects");
    AffineFunctional sum = zero_effect(K.ambient_dim());
    for (const AffineFunctional& f : m.effects) {
        for (const QVec& v : K.vertices()) {
            Rat val = f.value(v);
            if (val < 0 || val > 1)
                throw std::invalid_argument("measurement effect leaves [0,1] on K");
        }
        sum.linear += f.linear;
        sum.constant += f.constant;
    }
    if (!same_effect(K, sum, unit_effect(K.ambient_dim())))
        throw std::invalid_argument("measurement effects do not sum to the unit effect");
}

void validate_effect_restriction(const StateSpace& K, const EffectRestriction& E) {
    bool has_zero = false, has_unit = false;
    const AffineFunctional zero = zero_effect(K.ambient_dim());
    const AffineFunctional unit = unit_effect(K.ambient_dim());
    for (const AffineFunctional& g : E.generators) {
        for (const QVec& v : K.vertices()) {
            Rat val = g.value(v);
            if (val < 0 || val > 1)
                throw std::invalid_argument("effect generator leaves [0,1] on K");
        }
        if (same_effect(K, g, zero)) has_zero = true;
        if (same_effect(K, g, unit)) has_unit = true;
    }
    if (!has_zero || !has_unit)
        throw std::invalid_argument("effect restriction lacks the zero or unit effect");
}

void validate_theory(const RestrictedTheory& T) {
    validate_effect_restriction(T.K, T.E);
    if (!T.M) return;
    for (const Measurement& m : *T.M) {
        validate_measurement(T.K, m);
        for (const AffineFunctional& f : m.effects)
            if (!effect_membership_witness(T.K, T.E, f))
                throw std::invalid_argument("measurement effect outside the effect restriction");
    }
}

}  // namespace gptlab
