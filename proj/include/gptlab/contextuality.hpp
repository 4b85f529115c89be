#pragma once

// Simplex embeddability of a restricted theory, decided by one exact LP over
// the vertices of the dual state space, plus the preparation-noncontextual
// model decision, which reduces to joint measurability of the generating set
// within the full effect algebra.

#include "gptlab/compat.hpp"

namespace gptlab {

struct SimplexEmbeddingCert {
    std::vector<AffineFunctional> h;  // effects of the map K -> S_Lambda
    std::vector<QVec> psi;            // images of the simplex vertices inside S(E), dual-basis coords
};

struct EmbedOutcome {
    bool embeddable = false;
    std::optional<SimplexEmbeddingCert> cert;
    std::optional<FarkasCertificate> farkas;
};

// Feasibility search with Lambda fixed to the vertex set of S(E); decomposing
// arbitrary interior images over vertices and absorbing coefficients into the
// h's preserves feasibility, so the restriction loses nothing and bounds
// |Lambda| by the vertex count.
EmbedOutcome simplex_embeddable(const StateSpace& K, const EffectRestriction& E);

// Exact re-check of every certificate invariant, independent of the solver.
bool verify_embedding(const StateSpace& K, const EffectRestriction& E,
                      const SimplexEmbeddingCert& cert);

struct PrepNCOutcome {
    bool noncontextual = false;
    std::optional<JointMeasurementCert> model;  // h_lambda in E(K) + deterministic responses
    std::optional<FarkasCertificate> farkas;
};

// Requires T.M (a finite generating set; closure under post-processing does not
// change the verdict, so deciding on the listed measurements is complete).
PrepNCOutcome prep_noncontextual(const RestrictedTheory& T);

bool verify_prep_nc_model(const RestrictedTheory& T, const JointMeasurementCert& model);

}  // namespace gptlab
