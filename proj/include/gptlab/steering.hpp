#pragma once

// Steering scenarios: assemblages induced by one party's measurements on a
// shared bipartite state, local-hidden-state feasibility, the conditioned
// state space on the measuring side, and the equivalence check between
// unsteerability and the existence of a preparation-noncontextual model for
// the induced restricted theory.

#include <functional>

#include "gptlab/bipartite.hpp"
#include "gptlab/contextuality.hpp"

namespace gptlab {

enum class AmbientKind { Minimal, Maximal, Explicit };

struct SteeringScenario {
    BipartiteSystem sys;
    AmbientKind ambient = AmbientKind::Maximal;
    std::optional<Polytope> ambient_body;  // flattened coords; Explicit only
    QMat rho;                              // tensor over the span bases
    std::vector<Measurement> alice;
};

// Checks normalization, membership of rho in the declared ambient, the
// minimal/maximal sandwich for explicit ambients, and measurement validity.
void validate_scenario(const SteeringScenario& sc);

struct Assemblage {
    // sigma[x][a]: subnormalized post-measurement state of B, span-basis coords.
    std::vector<std::vector<QVec>> sigma;
};

Assemblage assemblage(const SteeringScenario& sc);

struct LHSModelCert {
    std::vector<std::vector<int>> strategies;  // lambda -> outcome per setting
    QVec weights;                              // p(lambda)
    std::vector<QVec> states;                  // sigma_lambda, ambient coordinates
    QMat state_witness;                        // convex coefficients over K_B's vertices
};

struct LHSOutcome {
    bool has_model = false;
    std::optional<LHSModelCert> cert;
    std::optional<FarkasCertificate> farkas;
};

// Local-hidden-state feasibility with one deterministic strategy per hidden
// value; completeness follows from convexity of response tables.
LHSOutcome has_lhs_model(const BipartiteSystem& sys, const Assemblage& asm_);

bool verify_lhs_model(const BipartiteSystem& sys, const Assemblage& asm_, const LHSModelCert& cert);

// Normalized states of A conditioned on extreme effects of B's full effect
// algebra; zero-probability effects are skipped.
StateSpace conditioned_state_space(const SteeringScenario& sc);

enum class FullDimMode { ConditionedEffects, AliceEffects };

// Whether the partially applied effects span all of span(K_B).
// ConditionedEffects ranges over E(K_rho) (the defining criterion);
// AliceEffects over E(K_A) (sufficient, no conditioned space needed).
bool is_full_dimensional(const SteeringScenario& sc, FullDimMode mode);

// Attempts to shrink K_B to its subspace J spanned by the partially applied
// effects, via an idempotent affine retraction fixing J. Requires a scenario
// that is not full-dimensional. Returns nullopt when no retraction exists.
std::optional<SteeringScenario> restrict_to_J(const SteeringScenario& sc);

struct CrosscheckReport {
    bool applicable = false;   // full-dimensionality hypothesis
    bool lhs = false;          // assemblage admits a local hidden state model
    bool prep_nc = false;      // induced theory admits a preparation-NC model
    bool agree = false;
    LHSOutcome lhs_outcome;
    PrepNCOutcome prep_outcome;
};

// Runs both decision procedures on a full-dimensional scenario and reports
// whether the verdicts coincide. Refuses (applicable = false) otherwise.
CrosscheckReport steering_crosscheck(const SteeringScenario& sc);

// The induced restricted theory (conditioned states, effect algebra generated
// by the steering measurements).
RestrictedTheory induced_theory(const SteeringScenario& sc);

// Bisection for a monotone family: predicate(x) true near lo, false near hi.
// Returns the bracketing pair (largest known true, smallest known false) with
// gap <= tol.
std::pair<Rat, Rat> bisect_threshold(const std::function<bool(const Rat&)>& predicate, Rat lo,
                                     Rat hi, const Rat& tol);

}  // namespace gptlab
