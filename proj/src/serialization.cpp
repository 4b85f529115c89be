#include "gptlab/serialization.hpp"

namespace gptlab::io {

Json rat_to_json(const Rat& r) { return rat_to_string(r); }

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw std::invalid_argument("expected a rational as \"p/q\" string");
}

Json vec_to_json(const QVec& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(rat_to_json(v(i)));
    return arr;
}

QVec vec_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
    QVec v(static_cast<Eigen::Index>(j.size()));
    Eigen::Index i = 0;
    for (const Json& e : j) v(i++) = rat_from_json(e);
    return v;
}

Json mat_to_json(const QMat& m) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) arr.push_back(vec_to_json(m.row(i).transpose()));
    return arr;
}

QMat mat_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a non-empty matrix");
    std::vector<QVec> rows;
    for (const Json& row : j) rows.push_back(vec_from_json(row));
    QMat m(static_cast<Eigen::Index>(rows.size()), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged matrix");
        m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    }
    return m;
}

Json functional_to_json(const AffineFunctional& f) {
    Json j;
    j["linear"] = vec_to_json(f.linear);
    j["constant"] = rat_to_json(f.constant);
    return j;
}

AffineFunctional functional_from_json(const Json& j) {
    return {vec_from_json(j.at("linear")), rat_from_json(j.at("constant"))};
}

Json measurement_to_json(const Measurement& m) {
    Json j;
    j["label"] = m.label;
    j["effects"] = Json::array();
    for (const AffineFunctional& f : m.effects) j["effects"].push_back(functional_to_json(f));
    j["outcomes"] = m.outcomes;
    return j;
}

Measurement measurement_from_json(const Json& j) {
    Measurement m;
    m.label = j.value("label", "");
    for (const Json& e : j.at("effects")) m.effects.push_back(functional_from_json(e));
    if (j.contains("outcomes"))
        m.outcomes = j.at("outcomes").get<std::vector<std::string>>();
    else
        for (size_t i = 0; i < m.effects.size(); ++i) m.outcomes.push_back(std::to_string(i));
    if (m.outcomes.size() != m.effects.size())
        throw std::invalid_argument("measurement outcome labels do not match effect count");
    return m;
}

std::vector<Measurement> measurements_from_json(const Json& j) {
    std::vector<Measurement> ms;
    for (const Json& m : j) ms.push_back(measurement_from_json(m));
    return ms;
}

Json polytope_to_json(const Polytope& p) {
    Json j;
    j["ambient_dim"] = p.ambient_dim();
    if (p.has_vrep()) {
        j["vertices"] = Json::array();
        for (const QVec& v : p.vertices()) j["vertices"].push_back(vec_to_json(v));
    }
    if (p.has_hrep()) {
        j["facets"] = Json::array();
        for (const Halfspace& h : p.facets()) {
            Json f;
            f["normal"] = vec_to_json(h.normal);
            f["offset"] = rat_to_json(h.offset);
            j["facets"].push_back(std::move(f));
        }
    }
    return j;
}

Polytope polytope_from_json(const Json& j) {
    const int dim = j.at("ambient_dim").get<int>();
    if (j.contains("vertices")) {
        std::vector<QVec> vs;
        for (const Json& v : j.at("vertices")) vs.push_back(vec_from_json(v));
        Polytope p = Polytope::from_vertices(dim, std::move(vs));
        if (j.contains("facets")) {
            // Trust vertices as primary; recompute facets rather than trusting both.
            p = dd_vrep_to_hrep(p);
        }
        return p;
    }
    if (j.contains("facets")) {
        std::vector<Halfspace> hs;
        for (const Json& f : j.at("facets"))
            hs.push_back({vec_from_json(f.at("normal")), rat_from_json(f.at("offset"))});
        return Polytope::from_halfspaces(dim, std::move(hs));
    }
    throw std::invalid_argument("polytope JSON needs vertices or facets");
}

Json theory_to_json(const RestrictedTheory& t) {
    Json j;
    Json ss;
    ss["label"] = t.K.label();
    ss["vertices"] = Json::array();
    for (const QVec& v : t.K.vertices()) ss["vertices"].push_back(vec_to_json(v));
    j["state_space"] = std::move(ss);
    Json eff;
    eff["generators"] = Json::array();
    for (const AffineFunctional& g : t.E.generators) eff["generators"].push_back(functional_to_json(g));
    j["effects"] = std::move(eff);
    if (t.M) {
        j["measurements"] = Json::array();
        for (const Measurement& m : *t.M) j["measurements"].push_back(measurement_to_json(m));
    }
    return j;
}

RestrictedTheory theory_from_json(const Json& j) {
    if (j.contains("preset")) return presets::theory_preset(j.at("preset").get<std::string>());
    const Json& ss = j.at("state_space");
    std::vector<QVec> vs;
    for (const Json& v : ss.at("vertices")) vs.push_back(vec_from_json(v));
    if (vs.empty()) throw std::invalid_argument("state space without vertices");
    const int dim = static_cast<int>(vs[0].size());
    StateSpace K(ss.value("label", "state-space"), dim, std::move(vs));
    EffectRestriction E;
    if (j.contains("effects")) {
        for (const Json& g : j.at("effects").at("generators"))
            E.generators.push_back(functional_from_json(g));
    } else {
        E = effect_polytope(K);
    }
    std::optional<std::vector<Measurement>> M;
    if (j.contains("measurements")) M = measurements_from_json(j.at("measurements"));
    RestrictedTheory t{std::move(K), std::move(E), std::move(M)};
    validate_theory(t);
    return t;
}

Json scenario_to_json(const SteeringScenario& sc) {
    Json j;
    j["parents"] = Json::array();
    for (const StateSpace* k : {&sc.sys.A, &sc.sys.B}) {
        Json ss;
        ss["label"] = k->label();
        ss["vertices"] = Json::array();
        for (const QVec& v : k->vertices()) ss["vertices"].push_back(vec_to_json(v));
        Json parent;
        parent["state_space"] = std::move(ss);
        j["parents"].push_back(std::move(parent));
    }
    switch (sc.ambient) {
        case AmbientKind::Minimal: j["ambient"] = "min"; break;
        case AmbientKind::Maximal: j["ambient"] = "max"; break;
        case AmbientKind::Explicit: j["ambient"] = polytope_to_json(*sc.ambient_body); break;
    }
    j["tensor"] = mat_to_json(sc.rho);
    j["measurements"] = Json::array();
    for (const Measurement& m : sc.alice) j["measurements"].push_back(measurement_to_json(m));
    return j;
}

SteeringScenario scenario_from_json(const Json& j) {
    if (j.contains("preset")) return presets::scenario_preset(j.at("preset").get<std::string>());
    const Json& parents = j.at("parents");
    if (!parents.is_array() || parents.size() != 2)
        throw std::invalid_argument("scenario needs exactly two parent theories");
    auto parse_parent = [](const Json& p) -> StateSpace {
        if (p.contains("preset")) return presets::theory_preset(p.at("preset").get<std::string>()).K;
        const Json& ss = p.at("state_space");
        std::vector<QVec> vs;
        for (const Json& v : ss.at("vertices")) vs.push_back(vec_from_json(v));
        if (vs.empty()) throw std::invalid_argument("state space without vertices");
        const int dim = static_cast<int>(vs[0].size());
        return StateSpace(ss.value("label", "state-space"), dim, std::move(vs));
    };
    SteeringScenario sc{make_system(parse_parent(parents[0]), parse_parent(parents[1])),
                        AmbientKind::Maximal,
                        std::nullopt,
                        QMat(),
                        {}};
    const Json& amb = j.at("ambient");
    if (amb.is_string()) {
        std::string kind = amb.get<std::string>();
        if (kind == "min")
            sc.ambient = AmbientKind::Minimal;
        else if (kind == "max")
            sc.ambient = AmbientKind::Maximal;
        else
            throw std::invalid_argument("ambient must be \"min\", \"max\" or a polytope");
    } else {
        sc.ambient = AmbientKind::Explicit;
        sc.ambient_body = polytope_from_json(amb);
    }
    sc.rho = mat_from_json(j.at("tensor"));
    if (sc.rho.rows() != sc.sys.basis_a.size() || sc.rho.cols() != sc.sys.basis_b.size())
        throw std::invalid_argument("tensor shape does not match the parents' span bases");
    sc.alice = measurements_from_json(j.at("measurements"));
    validate_scenario(sc);
    return sc;
}

namespace {

const char* rel_name(Rel r) {
    switch (r) {
        case Rel::LE: return "<=";
        case Rel::EQ: return "=";
        case Rel::GE: return ">=";
    }
    return "?";
}

Rel rel_from_name(const std::string& s) {
    if (s == "<=") return Rel::LE;
    if (s == "=") return Rel::EQ;
    if (s == ">=") return Rel::GE;
    throw std::invalid_argument("unknown relation: " + s);
}

}  // namespace

Json lp_to_json(const LPProblem& p) {
    Json j;
    j["num_vars"] = p.num_vars;
    j["objective"] = vec_to_json(p.objective.size() ? p.objective : qvec_zero(p.num_vars));
    j["constraints"] = Json::array();
    for (const LPConstraint& c : p.constraints) {
        Json row;
        row["row"] = vec_to_json(c.row);
        row["rel"] = rel_name(c.rel);
        row["rhs"] = rat_to_json(c.rhs);
        j["constraints"].push_back(std::move(row));
    }
    auto bounds = [](const std::vector<std::optional<Rat>>& b) {
        Json arr = Json::array();
        for (const auto& e : b) arr.push_back(e ? rat_to_json(*e) : Json());
        return arr;
    };
    if (!p.lower.empty()) j["lower"] = bounds(p.lower);
    if (!p.upper.empty()) j["upper"] = bounds(p.upper);
    return j;
}

LPProblem lp_from_json(const Json& j) {
    LPProblem p;
    p.num_vars = j.at("num_vars").get<int>();
    p.objective = vec_from_json(j.at("objective"));
    for (const Json& c : j.at("constraints"))
        p.add(vec_from_json(c.at("row")), rel_from_name(c.at("rel").get<std::string>()),
              rat_from_json(c.at("rhs")));
    auto bounds = [&](const Json& arr) {
        std::vector<std::optional<Rat>> out(static_cast<size_t>(p.num_vars));
        size_t i = 0;
        for (const Json& e : arr) {
            if (!e.is_null()) out.at(i) = rat_from_json(e);
            ++i;
        }
        return out;
    };
    if (j.contains("lower")) p.lower = bounds(j.at("lower"));
    if (j.contains("upper")) p.upper = bounds(j.at("upper"));
    return p;
}

Json farkas_to_json(const FarkasCertificate& c) {
    Json j;
    j["lp"] = lp_to_json(c.problem);
    j["witness"] = vec_to_json(c.witness);
    return j;
}

FarkasCertificate farkas_from_json(const Json& j) {
    return {lp_from_json(j.at("lp")), vec_from_json(j.at("witness"))};
}

Json joint_cert_to_json(const JointMeasurementCert& c) {
    Json j;
    j["outcomes"] = c.outcomes;
    j["effects"] = Json::array();
    for (const AffineFunctional& h : c.joint_effects) j["effects"].push_back(functional_to_json(h));
    // Deterministic response tables, spelled out for external checkers:
    // response[x][lambda][a] = 1 exactly when outcomes[lambda][x] == a.
    Json response = Json::array();
    if (!c.outcomes.empty()) {
        const size_t settings = c.outcomes[0].size();
        for (size_t x = 0; x < settings; ++x) {
            int max_outcome = 0;
            for (const auto& tuple : c.outcomes) max_outcome = std::max(max_outcome, tuple[x]);
            Json table = Json::array();
            for (const auto& tuple : c.outcomes) {
                Json row = Json::array();
                for (int a = 0; a <= max_outcome; ++a) row.push_back(tuple[x] == a ? "1" : "0");
                table.push_back(std::move(row));
            }
            response.push_back(std::move(table));
        }
    }
    j["response"] = std::move(response);
    if (c.membership) j["membership"] = mat_to_json(*c.membership);
    return j;
}

JointMeasurementCert joint_cert_from_json(const Json& j) {
    JointMeasurementCert c;
    c.outcomes = j.at("outcomes").get<std::vector<std::vector<int>>>();
    for (const Json& e : j.at("effects")) c.joint_effects.push_back(functional_from_json(e));
    if (j.contains("membership")) c.membership = mat_from_json(j.at("membership"));
    return c;
}

Json embed_cert_to_json(const SimplexEmbeddingCert& c) {
    Json j;
    j["h"] = Json::array();
    for (const AffineFunctional& h : c.h) j["h"].push_back(functional_to_json(h));
    j["psi"] = Json::array();
    for (const QVec& p : c.psi) j["psi"].push_back(vec_to_json(p));
    return j;
}

SimplexEmbeddingCert embed_cert_from_json(const Json& j) {
    SimplexEmbeddingCert c;
    for (const Json& h : j.at("h")) c.h.push_back(functional_from_json(h));
    for (const Json& p : j.at("psi")) c.psi.push_back(vec_from_json(p));
    return c;
}

Json lhs_cert_to_json(const LHSModelCert& c) {
    Json j;
    j["strategies"] = c.strategies;
    j["weights"] = vec_to_json(c.weights);
    j["states"] = Json::array();
    for (const QVec& s : c.states) j["states"].push_back(vec_to_json(s));
    j["state_witness"] = mat_to_json(c.state_witness);
    return j;
}

LHSModelCert lhs_cert_from_json(const Json& j) {
    LHSModelCert c;
    c.strategies = j.at("strategies").get<std::vector<std::vector<int>>>();
    c.weights = vec_from_json(j.at("weights"));
    for (const Json& s : j.at("states")) c.states.push_back(vec_from_json(s));
    c.state_witness = mat_from_json(j.at("state_witness"));
    return c;
}

Json verdict_to_json(const Verdict& v) {
    Json j;
    j["question"] = v.question;
    j["answer"] = v.answer;
    j["inputs"] = v.inputs;
    if (v.answer)
        j["certificate"] = v.certificate;
    else
        j["farkas"] = v.farkas;
    j["input_digest"] = digest(v.inputs);
    return j;
}

Verdict verdict_from_json(const Json& j) {
    Verdict v;
    v.question = j.at("question").get<std::string>();
    v.answer = j.at("answer").get<bool>();
    v.inputs = j.at("inputs");
    if (j.contains("certificate")) v.certificate = j.at("certificate");
    if (j.contains("farkas")) v.farkas = j.at("farkas");
    if (j.contains("input_digest") && j.at("input_digest").get<std::string>() != digest(v.inputs))
        throw std::invalid_argument("verdict input digest mismatch");
    return v;
}

std::string digest(const Json& j) {
    const std::string dump = j.dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool verify_verdict(const Json& j) {
    Verdict v = verdict_from_json(j);
    if (!v.answer) {
        if (v.farkas.is_null()) throw std::invalid_argument("negative verdict without a witness");
        return verify_farkas_certificate(farkas_from_json(v.farkas));
    }
    if (v.certificate.is_null()) throw std::invalid_argument("positive verdict without a certificate");

    if (v.question == "E-compat" || v.question == "EK-compat") {
        RestrictedTheory t = theory_from_json(v.inputs);
        if (!t.M) throw std::invalid_argument("verdict inputs carry no measurements");
        JointMeasurementCert cert = joint_cert_from_json(v.certificate);
        const EffectRestriction* e = v.question == "E-compat" ? &t.E : nullptr;
        return verify_joint_measurement(t.K, *t.M, cert, e);
    }
    if (v.question == "embed") {
        RestrictedTheory t = theory_from_json(v.inputs);
        return verify_embedding(t.K, t.E, embed_cert_from_json(v.certificate));
    }
    if (v.question == "prep-nc") {
        RestrictedTheory t = theory_from_json(v.inputs);
        return verify_prep_nc_model(t, joint_cert_from_json(v.certificate));
    }
    if (v.question == "steer") {
        SteeringScenario sc = scenario_from_json(v.inputs);
        return verify_lhs_model(sc.sys, assemblage(sc), lhs_cert_from_json(v.certificate));
    }
    throw std::invalid_argument("unknown verdict question: " + v.question);
}

}  // namespace gptlab::io
