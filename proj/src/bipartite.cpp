#include "gptlab/bipartite.hpp"

namespace gptlab {

SpanBasis span_basis(const StateSpace& K) {
    const auto& vs = K.vertices();
    const Eigen::Index d = K.ambient_dim();
    QMat lifted(d + 1, static_cast<Eigen::Index>(vs.size()));
    for (size_t i = 0; i < vs.size(); ++i) {
        lifted(0, static_cast<Eigen::Index>(i)) = 1;
        lifted.block(1, static_cast<Eigen::Index>(i), d, 1) = vs[i];
    }
    SpanBasis sb;
    sb.vertex_indices = independent_columns(lifted);
    sb.basis = QMat(d + 1, static_cast<Eigen::Index>(sb.vertex_indices.size()));
    for (size_t k = 0; k < sb.vertex_indices.size(); ++k)
        sb.basis.col(static_cast<Eigen::Index>(k)) = lifted.col(sb.vertex_indices[k]);
    sb.pinv = left_pseudo_inverse(sb.basis);
    return sb;
}

QVec state_coords(const SpanBasis& sb, const QVec& state) {
    QVec lifted(state.size() + 1);
    lifted(0) = 1;
    lifted.tail(state.size()) = state;
    QVec coords = sb.pinv * lifted;
    if (sb.basis * coords != lifted)
        throw std::invalid_argument("state_coords: point outside span(K)");
    return coords;
}

QVec effect_coords(const SpanBasis& sb, const StateSpace& K, const AffineFunctional& f) {
    QVec coords(static_cast<Eigen::Index>(sb.vertex_indices.size()));
    for (size_t k = 0; k < sb.vertex_indices.size(); ++k)
        coords(static_cast<Eigen::Index>(k)) =
            f.value(K.vertices()[static_cast<size_t>(sb.vertex_indices[k])]);
    return coords;
}

QVec to_lifted(const SpanBasis& sb, const QVec& coords) { return sb.basis * coords; }

BipartiteSystem make_system(StateSpace a, StateSpace b, WithEffects effects) {
    BipartiteSystem sys{std::move(a), std::move(b), {}, {}, std::nullopt, std::nullopt};
    sys.basis_a = span_basis(sys.A);
    sys.basis_b = span_basis(sys.B);
    if (effects.side_a) sys.vertex_effects_a = effect_polytope(sys.A);
    if (effects.side_b) sys.vertex_effects_b = effect_polytope(sys.B);
    return sys;
}

const EffectRestriction& effects_a(const BipartiteSystem& sys) {
    if (!sys.vertex_effects_a)
        throw std::logic_error("bipartite system was built without side-A effects");
    return *sys.vertex_effects_a;
}

const EffectRestriction& effects_b(const BipartiteSystem& sys) {
    if (!sys.vertex_effects_b)
        throw std::logic_error("bipartite system was built without side-B effects");
    return *sys.vertex_effects_b;
}

QVec flatten(const QMat& tensor) {
    QVec flat(tensor.rows() * tensor.cols());
    for (Eigen::Index i = 0; i < tensor.rows(); ++i)
        for (Eigen::Index j = 0; j < tensor.cols(); ++j) flat(i * tensor.cols() + j) = tensor(i, j);
    return flat;
}

QMat unflatten(const QVec& flat, int rows, int cols) {
    QMat t(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t(i, j) = flat(i * cols + j);
    return t;
}

TensorProductSpace minimal_tensor(const BipartiteSystem& sys) {
    std::vector<QVec> verts;
    for (const QVec& u : sys.A.vertices())
        for (const QVec& v : sys.B.vertices()) {
            QVec cu = state_coords(sys.basis_a, u);
            QVec cv = state_coords(sys.basis_b, v);
            verts.push_back(flatten(cu * cv.transpose()));
        }
    return {TensorKind::Minimal,
            Polytope::from_vertices(sys.basis_a.size() * sys.basis_b.size(), std::move(verts))};
}

TensorProductSpace maximal_tensor(const BipartiteSystem& sys) {
    const int na = sys.basis_a.size(), nb = sys.basis_b.size();
    std::vector<Halfspace> rows;
    for (const AffineFunctional& f : effects_a(sys).generators)
        for (const AffineFunctional& g : effects_b(sys).generators) {
            QVec fc = effect_coords(sys.basis_a, sys.A, f);
            QVec gc = effect_coords(sys.basis_b, sys.B, g);
            QVec row = flatten(fc * gc.transpose());
            bool zero = true;
            for (Eigen::Index i = 0; i < row.size(); ++i)
                if (row(i) != 0) zero = false;
            if (zero) continue;
            rows.push_back({-row, Rat(0)});
        }
    QVec unit_a = effect_coords(sys.basis_a, sys.A, unit_effect(sys.A.ambient_dim()));
    QVec unit_b = effect_coords(sys.basis_b, sys.B, unit_effect(sys.B.ambient_dim()));
    QVec norm_row = flatten(unit_a * unit_b.transpose());
    rows.push_back({norm_row, Rat(1)});
    rows.push_back({-norm_row, Rat(-1)});
    return {TensorKind::Maximal, Polytope::from_halfspaces(na * nb, std::move(rows))};
}

QMat product_state(const BipartiteSystem& sys, const QVec& rho_a, const QVec& rho_b) {
    QVec ca = state_coords(sys.basis_a, rho_a);
    QVec cb = state_coords(sys.basis_b, rho_b);
    return ca * cb.transpose();
}

Rat pair_value(const BipartiteSystem& sys, const QMat& tensor, const AffineFunctional& f,
               const AffineFunctional& g) {
    QVec fc = effect_coords(sys.basis_a, sys.A, f);
    QVec gc = effect_coords(sys.basis_b, sys.B, g);
    return fc.dot(tensor * gc);
}

QVec partial_apply_effect(const BipartiteSystem& sys, const QMat& tensor,
                          const AffineFunctional& f, Side side) {
    if (side == Side::A) {
        if (f.linear.size() != sys.A.ambient_dim())
            throw std::invalid_argument("partial_apply_effect: functional sized for the wrong side");
        QVec fc = effect_coords(sys.basis_a, sys.A, f);
        return tensor.transpose() * fc;
    }
    if (f.linear.size() != sys.B.ambient_dim())
        throw std::invalid_argument("partial_apply_effect: functional sized for the wrong side");
    QVec gc = effect_coords(sys.basis_b, sys.B, f);
    return tensor * gc;
}

bool in_minimal(const BipartiteSystem& sys, const QMat& tensor) {
    std::vector<QVec> verts;
    for (const QVec& u : sys.A.vertices())
        for (const QVec& v : sys.B.vertices())
            verts.push_back(flatten(state_coords(sys.basis_a, u) * state_coords(sys.basis_b, v).transpose()));
    return in_convex_hull(verts, flatten(tensor));
}

namespace {

// sigma must lie in the cone over the lifted factor: nonnegative mass, and the
// normalized state inside the factor when the mass is positive.
bool in_state_cone(const SpanBasis& sb, const StateSpace& K, const QVec& coords) {
    QVec lifted = to_lifted(sb, coords);
    const Rat& mass = lifted(0);
    if (mass < 0) return false;
    if (mass == 0) {
        for (Eigen::Index i = 0; i < lifted.size(); ++i)
            if (lifted(i) != 0) return false;
        return true;
    }
    QVec state = lifted.tail(K.ambient_dim()) / mass;
    return contains(K.body(), state);
}

}  // namespace

bool in_maximal(const BipartiteSystem& sys, const QMat& tensor) {
    if (!is_normalized(sys, tensor)) return false;
    if (sys.vertex_effects_a) {
        for (const AffineFunctional& f : sys.vertex_effects_a->generators) {
            QVec sigma = tensor.transpose() * effect_coords(sys.basis_a, sys.A, f);
            if (!in_state_cone(sys.basis_b, sys.B, sigma)) return false;
        }
        return true;
    }
    if (sys.vertex_effects_b) {
        for (const AffineFunctional& g : sys.vertex_effects_b->generators) {
            QVec sigma = tensor * effect_coords(sys.basis_b, sys.B, g);
            if (!in_state_cone(sys.basis_a, sys.A, sigma)) return false;
        }
        return true;
    }
    throw std::logic_error("in_maximal needs the effect enumeration of at least one side");
}

bool is_normalized(const BipartiteSystem& sys, const QMat& tensor) {
    return pair_value(sys, tensor, unit_effect(sys.A.ambient_dim()),
                      unit_effect(sys.B.ambient_dim())) == 1;
}

Rat chsh_value(const BipartiteSystem& sys, const QMat& tensor, const Measurement& a1,
               const Measurement& a2, const Measurement& b1, const Measurement& b2) {
    for (const Measurement* m : {&a1, &a2, &b1, &b2})
        if (m->effects.size() != 2)
            throw std::invalid_argument("chsh_value: all four measurements must be binary");
    auto correlator = [&](const Measurement& ma, const Measurement& mb) {
        Rat e(0);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                Rat v = pair_value(sys, tensor, ma.effects[static_cast<size_t>(a)],
                                   mb.effects[static_cast<size_t>(b)]);
                e += ((a == b) ? v : -v);
            }
        return e;
    };
    return correlator(a1, b1) + correlator(a1, b2) + correlator(a2, b1) - correlator(a2, b2);
}

}  // namespace gptlab
