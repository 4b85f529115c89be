#include "gptlab/contextuality.hpp"

namespace gptlab {

EmbedOutcome simplex_embeddable(const StateSpace& K, const EffectRestriction& E) {
    validate_effect_restriction(K, E);
    DualStateSpace dual = dual_state_space(K, E);
    const std::vector<QVec>& psis = dual.body.vertices();
    const size_t L = psis.size();
    const int r = K.aff_dim();
    const int width = r + 1;
    const int nv = static_cast<int>(L) * width;

    std::vector<QVec> lifted_verts;
    for (const QVec& v : K.vertices()) {
        QVec lifted(width);
        if (r > 0) lifted.head(r) = K.chart().to_chart(v);
        lifted(r) = 1;
        lifted_verts.push_back(std::move(lifted));
    }

    // psi_lambda(f) for every generator f, fixed numbers once the basis
    // expansion of f is known.
    std::vector<QVec> beta;
    for (const AffineFunctional& g : E.generators) beta.push_back(effect_in_dual_basis(K, dual, g));

    LPProblem lp = LPProblem::feasibility(nv);
    auto var = [&](size_t lambda, int k) { return static_cast<int>(lambda) * width + k; };

    for (size_t lambda = 0; lambda < L; ++lambda)
        for (const QVec& lv : lifted_verts) {
            QVec row = qvec_zero(nv);
            for (int k = 0; k < width; ++k) row(var(lambda, k)) = lv(k);
            lp.add(std::move(row), Rel::GE, Rat(0));
        }
    // Unit decomposition: sum_lambda h_lambda = 1_K.
    for (int k = 0; k < width; ++k) {
        QVec row = qvec_zero(nv);
        for (size_t lambda = 0; lambda < L; ++lambda) row(var(lambda, k)) = 1;
        lp.add(std::move(row), Rel::EQ, k == r ? Rat(1) : Rat(0));
    }
    // Reproduction: sum_lambda h_lambda(rho) psi_lambda(f) = f(rho) at every
    // (generator, vertex) pair; affinity in rho extends this to all of K.
    for (size_t gi = 0; gi < E.generators.size(); ++gi) {
        for (size_t vi = 0; vi < K.vertices().size(); ++vi) {
            QVec row = qvec_zero(nv);
            for (size_t lambda = 0; lambda < L; ++lambda) {
                Rat psi_f = psis[lambda].dot(beta[gi]);
                if (psi_f == 0) continue;
                for (int k = 0; k < width; ++k) row(var(lambda, k)) += psi_f * lifted_verts[vi](k);
            }
            lp.add(std::move(row), Rel::EQ, E.generators[gi].value(K.vertices()[vi]));
        }
    }

    LPResult res = lp_solve(lp);
    EmbedOutcome out;
    if (res.status == LPStatus::Infeasible) {
        out.embeddable = false;
        out.farkas = FarkasCertificate{std::move(lp), *res.farkas};
        return out;
    }
    out.embeddable = true;
    SimplexEmbeddingCert cert;
    for (size_t lambda = 0; lambda < L; ++lambda) {
        QVec coeffs(width);
        for (int k = 0; k < width; ++k) coeffs(k) = (*res.point)(var(lambda, k));
        cert.h.push_back(functional_from_coeffs(K, coeffs));
        cert.psi.push_back(psis[lambda]);
    }
    out.cert = std::move(cert);
    return out;
}

bool verify_embedding(const StateSpace& K, const EffectRestriction& E,
                      const SimplexEmbeddingCert& cert) {
    if (cert.h.size() != cert.psi.size() || cert.h.empty()) return false;
    DualStateSpace dual = dual_state_space(K, E);
    const Eigen::Index m = static_cast<Eigen::Index>(dual.basis.size());

    for (const AffineFunctional& h : cert.h)
        for (const QVec& v : K.vertices())
            if (h.value(v) < 0) return false;

    AffineFunctional total = zero_effect(K.ambient_dim());
    for (const AffineFunctional& h : cert.h) {
        total.linear += h.linear;
        total.constant += h.constant;
    }
    if (!same_effect(K, total, unit_effect(K.ambient_dim()))) return false;

    std::vector<QVec> beta;
    for (const AffineFunctional& g : E.generators) beta.push_back(effect_in_dual_basis(K, dual, g));

    // Each psi is a normalized positive functional on span(E): the defining
    // halfspaces of S(E), checked directly.
    for (const QVec& psi : cert.psi) {
        if (psi.size() != m) return false;
        if (psi(0) != 1) return false;  // basis starts with the unit effect
        for (const QVec& b : beta)
            if (psi.dot(b) < 0) return false;
    }

    for (size_t gi = 0; gi < E.generators.size(); ++gi)
        for (const QVec& rho : K.vertices()) {
            Rat lhs(0);
            for (size_t lambda = 0; lambda < cert.h.size(); ++lambda)
                lhs += cert.h[lambda].value(rho) * cert.psi[lambda].dot(beta[gi]);
            if (lhs != E.generators[gi].value(rho)) return false;
        }
    return true;
}

PrepNCOutcome prep_noncontextual(const RestrictedTheory& T) {
    if (!T.M || T.M->empty())
        throw std::invalid_argument("prep_noncontextual: theory carries no generating measurements");
    CompatOutcome compat = ek_compatible(T.K, *T.M);
    PrepNCOutcome out;
    out.noncontextual = compat.compatible;
    out.model = std::move(compat.cert);
    out.farkas = std::move(compat.farkas);
    return out;
}

bool verify_prep_nc_model(const RestrictedTheory& T, const JointMeasurementCert& model) {
    if (!T.M) return false;
    return verify_joint_measurement(T.K, *T.M, model, nullptr);
}

}  // namespace gptlab
