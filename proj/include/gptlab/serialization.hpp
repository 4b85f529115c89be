#pragma once

// JSON input/output for every external surface: theories, scenarios,
// bipartite states, LP instances, certificates and verdicts. Rationals travel
// as canonical "p/q" strings (plain "p" for integers); field order is fixed so
// identical inputs serialize byte-identically.

#include <json.hpp>

#include "gptlab/presets.hpp"

namespace gptlab::io {

using Json = nlohmann::ordered_json;

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);
Json vec_to_json(const QVec& v);
QVec vec_from_json(const Json& j);
Json mat_to_json(const QMat& m);
QMat mat_from_json(const Json& j);

Json functional_to_json(const AffineFunctional& f);
AffineFunctional functional_from_json(const Json& j);
Json measurement_to_json(const Measurement& m);
Measurement measurement_from_json(const Json& j);
std::vector<Measurement> measurements_from_json(const Json& j);

Json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const Json& j);

Json theory_to_json(const RestrictedTheory& t);
RestrictedTheory theory_from_json(const Json& j);  // validates invariants

Json scenario_to_json(const SteeringScenario& sc);
SteeringScenario scenario_from_json(const Json& j);  // validates invariants

Json lp_to_json(const LPProblem& p);
LPProblem lp_from_json(const Json& j);
Json farkas_to_json(const FarkasCertificate& c);
FarkasCertificate farkas_from_json(const Json& j);

Json joint_cert_to_json(const JointMeasurementCert& c);
JointMeasurementCert joint_cert_from_json(const Json& j);
Json embed_cert_to_json(const SimplexEmbeddingCert& c);
SimplexEmbeddingCert embed_cert_from_json(const Json& j);
Json lhs_cert_to_json(const LHSModelCert& c);
LHSModelCert lhs_cert_from_json(const Json& j);

// Verdict envelope: self-contained (inputs embedded) so re-verification needs
// nothing but the file.
struct Verdict {
    std::string question;
    bool answer = false;
    Json inputs;       // theory / scenario / measurement JSON, as consumed
    Json certificate;  // empty unless answer
    Json farkas;       // empty unless !answer
};

Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

// FNV-1a 64-bit over the canonical dump, rendered as fixed-width hex.
std::string digest(const Json& j);

// Independent exact re-check of a verdict file; false = certificate broken.
bool verify_verdict(const Json& j);

}  // namespace gptlab::io
