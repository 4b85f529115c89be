#include "gptlab/compat.hpp"

namespace gptlab {

size_t joint_outcome_count(const std::vector<Measurement>& ms) {
    size_t count = 1;
    for (const Measurement& m : ms) count *= m.effects.size();
    return count;
}

std::vector<int> joint_outcome_tuple(const std::vector<Measurement>& ms, size_t lambda) {
    std::vector<int> tuple(ms.size());
    for (size_t x = ms.size(); x-- > 0;) {
        size_t n = ms[x].effects.size();
        tuple[x] = static_cast<int>(lambda % n);
        lambda /= n;
    }
    return tuple;
}

namespace {

AffineFunctional combine(const std::vector<AffineFunctional>& gens, const QVec& coeffs, int dim) {
    AffineFunctional f = zero_effect(dim);
    for (size_t v = 0; v < gens.size(); ++v) {
        const Rat& c = coeffs(static_cast<Eigen::Index>(v));
        if (c == 0) continue;
        f.linear += c * gens[v].linear;
        f.constant += c * gens[v].constant;
    }
    return f;
}

}  // namespace

CompatOutcome e_compatible(const StateSpace& K, const EffectRestriction& E,
                           const std::vector<Measurement>& ms) {
    if (ms.empty()) throw std::invalid_argument("e_compatible: empty measurement list");
    for (const Measurement& m : ms) {
        validate_measurement(K, m);
        for (const AffineFunctional& f : m.effects)
            if (!effect_membership_witness(K, E, f))
                throw std::invalid_argument("e_compatible: measurement effect is not a member of E");
    }

    const int r = K.aff_dim();
    const size_t L = joint_outcome_count(ms);
    const size_t G = E.generators.size();
    const int nv = static_cast<int>(L * G);
    std::vector<QVec> gen_coeffs;
    for (const AffineFunctional& g : E.generators) gen_coeffs.push_back(functional_coeffs(K, g));

    LPProblem lp = LPProblem::feasibility(nv);
    for (int j = 0; j < nv; ++j) lp.set_lower(j, Rat(0));
    auto var = [&](size_t lambda, size_t v) { return static_cast<int>(lambda * G + v); };

    // Convexity over the generators, per joint outcome.
    for (size_t lambda = 0; lambda < L; ++lambda) {
        QVec row = qvec_zero(nv);
        for (size_t v = 0; v < G; ++v) row(var(lambda, v)) = 1;
        lp.add(std::move(row), Rel::EQ, Rat(1));
    }
    // Marginals reproduce each measurement, as chart coefficients.
    for (size_t x = 0; x < ms.size(); ++x) {
        for (size_t a = 0; a < ms[x].effects.size(); ++a) {
            QVec target = functional_coeffs(K, ms[x].effects[a]);
            for (int k = 0; k <= r; ++k) {
                QVec row = qvec_zero(nv);
                for (size_t lambda = 0; lambda < L; ++lambda) {
                    if (joint_outcome_tuple(ms, lambda)[x] != static_cast<int>(a)) continue;
                    for (size_t v = 0; v < G; ++v) row(var(lambda, v)) += gen_coeffs[v](k);
                }
                lp.add(std::move(row), Rel::EQ, target(k));
            }
        }
    }

    LPResult res = lp_solve(lp);
    CompatOutcome out;
    if (res.status == LPStatus::Infeasible) {
        out.compatible = false;
        out.farkas = FarkasCertificate{std::move(lp), *res.farkas};
        return out;
    }
    out.compatible = true;
    JointMeasurementCert cert;
    QMat membership(static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(G));
    for (size_t lambda = 0; lambda < L; ++lambda) {
        cert.outcomes.push_back(joint_outcome_tuple(ms, lambda));
        QVec coeffs(static_cast<Eigen::Index>(G));
        for (size_t v = 0; v < G; ++v) coeffs(static_cast<Eigen::Index>(v)) = (*res.point)(var(lambda, v));
        membership.row(static_cast<Eigen::Index>(lambda)) = coeffs.transpose();
        cert.joint_effects.push_back(combine(E.generators, coeffs, K.ambient_dim()));
    }
    cert.membership = std::move(membership);
    out.cert = std::move(cert);
    return out;
}

CompatOutcome ek_compatible(const StateSpace& K, const std::vector<Measurement>& ms) {
    if (ms.empty()) throw std::invalid_argument("ek_compatible: empty measurement list");
    for (const Measurement& m : ms) validate_measurement(K, m);

    const int r = K.aff_dim();
    const int width = r + 1;
    const size_t L = joint_outcome_count(ms);
    const int nv = static_cast<int>(L) * width;

    LPProblem lp = LPProblem::feasibility(nv);
    auto var = [&](size_t lambda, int k) { return static_cast<int>(lambda) * width + k; };

    // Nonnegativity of each joint effect at every vertex of K.
    std::vector<QVec> lifted_verts;
    for (const QVec& v : K.vertices()) {
        QVec lifted(width);
        if (r > 0) lifted.head(r) = K.chart().to_chart(v);
        lifted(r) = 1;
        lifted_verts.push_back(std::move(lifted));
    }
    for (size_t lambda = 0; lambda < L; ++lambda) {
        for (const QVec& lv : lifted_verts) {
            QVec row = qvec_zero(nv);
            for (int k = 0; k < width; ++k) row(var(lambda, k)) = lv(k);
            lp.add(std::move(row), Rel::GE, Rat(0));
        }
    }
    // Marginals; summing them over outcomes also forces sum(h) = unit.
    for (size_t x = 0; x < ms.size(); ++x) {
        for (size_t a = 0; a < ms[x].effects.size(); ++a) {
            QVec target = functional_coeffs(K, ms[x].effects[a]);
            for (int k = 0; k < width; ++k) {
                QVec row = qvec_zero(nv);
                for (size_t lambda = 0; lambda < L; ++lambda)
                    if (joint_outcome_tuple(ms, lambda)[x] == static_cast<int>(a))
                        row(var(lambda, k)) = 1;
                lp.add(std::move(row), Rel::EQ, target(k));
            }
        }
    }

    LPResult res = lp_solve(lp);
    CompatOutcome out;
    if (res.status == LPStatus::Infeasible) {
        out.compatible = false;
        out.farkas = FarkasCertificate{std::move(lp), *res.farkas};
        return out;
    }
    out.compatible = true;
    JointMeasurementCert cert;
    for (size_t lambda = 0; lambda < L; ++lambda) {
        cert.outcomes.push_back(joint_outcome_tuple(ms, lambda));
        QVec coeffs(width);
        for (int k = 0; k < width; ++k) coeffs(k) = (*res.point)(var(lambda, k));
        cert.joint_effects.push_back(functional_from_coeffs(K, coeffs));
    }
    out.cert = std::move(cert);
    return out;
}

bool se_is_simplex(const StateSpace& K, const EffectRestriction& E) {
    DualStateSpace dual = dual_state_space(K, E);
    return is_affinely_independent(dual.body.vertices());
}

bool verify_joint_measurement(const StateSpace& K, const std::vector<Measurement>& ms,
                              const JointMeasurementCert& cert, const EffectRestriction* E) {
    const size_t L = joint_outcome_count(ms);
    if (cert.outcomes.size() != L || cert.joint_effects.size() != L) return false;
    for (size_t lambda = 0; lambda < L; ++lambda)
        if (cert.outcomes[lambda] != joint_outcome_tuple(ms, lambda)) return false;

    // Each joint effect nonnegative on K.
    for (const AffineFunctional& h : cert.joint_effects)
        for (const QVec& v : K.vertices())
            if (h.value(v) < 0) return false;

    // Joint effects sum to the unit effect.
    AffineFunctional total = zero_effect(K.ambient_dim());
    for (const AffineFunctional& h : cert.joint_effects) {
        total.linear += h.linear;
        total.constant += h.constant;
    }
    if (!same_effect(K, total, unit_effect(K.ambient_dim()))) return false;

    // Marginals reproduce the inputs exactly.
    for (size_t x = 0; x < ms.size(); ++x) {
        for (size_t a = 0; a < ms[x].effects.size(); ++a) {
            AffineFunctional marg = zero_effect(K.ambient_dim());
            for (size_t lambda = 0; lambda < L; ++lambda) {
                if (cert.outcomes[lambda][x] != static_cast<int>(a)) continue;
                marg.linear += cert.joint_effects[lambda].linear;
                marg.constant += cert.joint_effects[lambda].constant;
            }
            if (!same_effect(K, marg, ms[x].effects[a])) return false;
        }
    }

    // Membership witnesses place every joint effect inside E.
    if (E) {
        if (!cert.membership) return false;
        const QMat& c = *cert.membership;
        if (c.rows() != static_cast<Eigen::Index>(L) ||
            c.cols() != static_cast<Eigen::Index>(E->generators.size()))
            return false;
        for (Eigen::Index lambda = 0; lambda < c.rows(); ++lambda) {
            Rat sum(0);
            AffineFunctional rebuilt = zero_effect(K.ambient_dim());
            for (Eigen::Index v = 0; v < c.cols(); ++v) {
                if (c(lambda, v) < 0) return false;
                sum += c(lambda, v);
                rebuilt.linear += c(lambda, v) * E->generators[static_cast<size_t>(v)].linear;
                rebuilt.constant += c(lambda, v) * E->generators[static_cast<size_t>(v)].constant;
            }
            if (sum != 1) return false;
            if (!same_effect(K, rebuilt, cert.joint_effects[static_cast<size_t>(lambda)])) return false;
        }
    }
    return true;
}

}  // namespace gptlab
