#pragma once

// Joint-measurement decisions for finite measurement collections on a
// restricted theory, in two flavors: joint effects drawn from the allowed set E
// or merely from the full effect algebra E(K). YES answers carry a joint
// measurement certificate, NO answers a Farkas witness; both re-verify without
// the solver.

#include <optional>

#include "gptlab/gpt.hpp"
#include "gptlab/lp.hpp"

namespace gptlab {

// Infeasibility certificate that carries its own LP rows.
struct FarkasCertificate {
    LPProblem problem;
    QVec witness;
};

inline bool verify_farkas_certificate(const FarkasCertificate& c) {
    return verify_farkas(c.problem, c.witness);
}

struct JointMeasurementCert {
    // Row lambda: one outcome index per input measurement (mixed-radix order,
    // first measurement most significant). The implied response table is
    // deterministic: p(a | x, lambda) = [outcomes[lambda][x] == a].
    std::vector<std::vector<int>> outcomes;
    std::vector<AffineFunctional> joint_effects;  // h_lambda
    // E-membership witnesses: convex coefficients over E's generators, one row
    // per lambda. Absent for E(K) certificates.
    std::optional<QMat> membership;
};

struct CompatOutcome {
    bool compatible = false;
    std::optional<JointMeasurementCert> cert;
    std::optional<FarkasCertificate> farkas;
};

// Joint measurement with effects in conv(E.generators). Precondition: every
// effect of every measurement is a member of E (std::invalid_argument
// otherwise; that is an input error, not incompatibility).
CompatOutcome e_compatible(const StateSpace& K, const EffectRestriction& E,
                           const std::vector<Measurement>& ms);

// Joint measurement with effects merely nonnegative on K and summing to the
// unit effect.
CompatOutcome ek_compatible(const StateSpace& K, const std::vector<Measurement>& ms);

// All measurements of (K, E) are jointly measurable within E iff the dual state
// space is a simplex.
bool se_is_simplex(const StateSpace& K, const EffectRestriction& E);

// Independent exact re-check of a joint measurement certificate. Pass E to also
// check the membership witnesses, nullptr for the E(K) variant.
bool verify_joint_measurement(const StateSpace& K, const std::vector<Measurement>& ms,
                              const JointMeasurementCert& cert, const EffectRestriction* E);

// Number of joint outcomes and the outcome tuple for one mixed-radix index.
size_t joint_outcome_count(const std::vector<Measurement>& ms);
std::vector<int> joint_outcome_tuple(const std::vector<Measurement>& ms, size_t lambda);

}  // namespace gptlab
