#include "gptlab/presets.hpp"

#include <cmath>

namespace gptlab::presets {

StateSpace square_state_space() {
    return StateSpace("square", 2,
                      {qvec_from({1, 1}), qvec_from({1, -1}), qvec_from({-1, 1}), qvec_from({-1, -1})});
}

StateSpace diamond_state_space() {
    return StateSpace("inner-square", 2,
                      {qvec_from({1, 0}), qvec_from({-1, 0}), qvec_from({0, 1}), qvec_from({0, -1})});
}

StateSpace simplex_state_space(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("simplex preset supports 1..8 outcomes");
    std::vector<QVec> vs;
    for (int i = 0; i < n; ++i) {
        QVec v = qvec_zero(n);
        v(i) = 1;
        vs.push_back(std::move(v));
    }
    return StateSpace("simplex-" + std::to_string(n), n, std::move(vs));
}

namespace {

// Exact point on the unit circle near the given angle: rationalize the
// half-angle tangent, then use the rational parametrization.
QVec circle_point(double theta, long denom = 720) {
    const double pi = 3.14159265358979323846;
    while (theta > pi) theta -= 2 * pi;
    while (theta <= -pi) theta += 2 * pi;
    if (std::abs(std::abs(theta) - pi) < 1e-9) return qvec_from({-1, 0});
    Rat t = make_rat(std::lround(std::tan(theta / 2) * static_cast<double>(denom)), denom);
    Rat d = 1 + t * t;
    QVec p(2);
    p(0) = (1 - t * t) / d;
    p(1) = 2 * t / d;
    return p;
}

// Exact point on the unit sphere near the given direction, via a rationalized
// stereographic preimage.
QVec sphere_point(double x, double y, double z, long denom = 4096) {
    if (z < -0.999) return qvec_from({0, 0, -1});
    Rat u = make_rat(std::lround(x / (1 + z) * static_cast<double>(denom)), denom);
    Rat v = make_rat(std::lround(y / (1 + z) * static_cast<double>(denom)), denom);
    Rat norm = 1 + u * u + v * v;
    QVec p(3);
    p(0) = 2 * u / norm;
    p(1) = 2 * v / norm;
    p(2) = (1 - u * u - v * v) / norm;
    return p;
}

std::vector<QVec> fibonacci_sphere(int n) {
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    const double pi = 3.14159265358979323846;
    std::vector<QVec> pts;
    for (int i = 0; i < n; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / n;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = 2.0 * pi * i / golden;
        pts.push_back(sphere_point(r * std::cos(phi), r * std::sin(phi), z));
    }
    return sorted_vertex_set(pts);
}

}  // namespace

StateSpace ngon_state_space(int n) {
    if (n < 3 || n > 64) throw std::invalid_argument("ngon preset supports 3..64 vertices");
    const double pi = 3.14159265358979323846;
    std::vector<QVec> vs;
    for (int k = 0; k < n; ++k) vs.push_back(circle_point(2 * pi * k / n));
    StateSpace s("ngon-" + std::to_string(n), 2, vs);
    if (s.vertices().size() != static_cast<size_t>(n))
        throw std::invalid_argument("ngon preset produced coincident vertices");
    return s;
}

StateSpace pentagon_state_space() { return ngon_state_space(5); }

StateSpace bloch_inner_polytope(int n) {
    if (n < 4 || n > 600) throw std::invalid_argument("bloch_inner supports 4..600 vertices");
    // Distinct points on the sphere are extreme in any hull containing them.
    return StateSpace("bloch-inner-" + std::to_string(n), 3, fibonacci_sphere(n), false);
}

StateSpace bloch_outer_polytope(int n) {
    if (n < 4 || n > 600) throw std::invalid_argument("bloch_outer supports 4..600 facets");
    std::vector<Halfspace> hs;
    for (const QVec& p : fibonacci_sphere(n)) hs.push_back({p, Rat(1)});  // tangent at p
    Polytope body = dd_hrep_to_vrep(Polytope::from_halfspaces(3, hs));
    return StateSpace("bloch-outer-" + std::to_string(n), 3, body.vertices(), false);
}

std::vector<Measurement> square_face_measurements() {
    std::vector<Measurement> ms;
    for (int axis = 0; axis < 2; ++axis) {
        QVec half = qvec_zero(2);
        half(axis) = make_rat(1, 2);
        ms.push_back(make_measurement(axis == 0 ? "face-x" : "face-y",
                                      {AffineFunctional{half, make_rat(1, 2)},
                                       AffineFunctional{-half, make_rat(1, 2)}}));
    }
    return ms;
}

std::vector<Measurement> axis_measurements_3d() {
    std::vector<Measurement> ms;
    const char* names[3] = {"spin-x", "spin-y", "spin-z"};
    for (int axis = 0; axis < 3; ++axis) {
        QVec half = qvec_zero(3);
        half(axis) = make_rat(1, 2);
        ms.push_back(make_measurement(names[axis], {AffineFunctional{half, make_rat(1, 2)},
                                                    AffineFunctional{-half, make_rat(1, 2)}}));
    }
    return ms;
}

Measurement simplex_basis_measurement(int n) {
    std::vector<AffineFunctional> effects;
    for (int i = 0; i < n; ++i) {
        QVec e = qvec_zero(n);
        e(i) = 1;
        effects.push_back({e, Rat(0)});
    }
    return make_measurement("basis", std::move(effects));
}

RestrictedTheory square_theory() {
    StateSpace k = square_state_space();
    EffectRestriction e = effect_polytope(k);
    return {std::move(k), std::move(e), square_face_measurements()};
}

RestrictedTheory simplex_theory(int n) {
    StateSpace k = simplex_state_space(n);
    EffectRestriction e = effect_polytope(k);
    return {std::move(k), std::move(e), std::vector<Measurement>{simplex_basis_measurement(n)}};
}

RestrictedTheory square_in_square_theory() {
    StateSpace inner = diamond_state_space();
    EffectRestriction e = effect_polytope(square_state_space());
    return {std::move(inner), std::move(e), square_face_measurements()};
}

RestrictedTheory triangle_in_ngon_theory(int n) {
    StateSpace gon = ngon_state_space(n);
    std::vector<QVec> tri = {gon.vertices()[0], gon.vertices()[static_cast<size_t>(n / 3)],
                             gon.vertices()[static_cast<size_t>(2 * n / 3)]};
    StateSpace k("triangle-in-" + gon.label(), 2, tri);
    EffectRestriction e = effect_polytope(gon);
    // Two binary measurements built from extreme allowed effects.
    std::vector<Measurement> ms;
    const AffineFunctional zero = zero_effect(2);
    const AffineFunctional unit = unit_effect(2);
    for (const AffineFunctional& g : e.generators) {
        if (ms.size() == 2) break;
        if (same_effect(k, g, zero) || same_effect(k, g, unit)) continue;
        if (!ms.empty() && same_effect(k, g, AffineFunctional{-ms[0].effects[0].linear,
                                                              1 - ms[0].effects[0].constant}))
            continue;
        AffineFunctional complement{-g.linear, 1 - g.constant};
        ms.push_back(make_measurement("extreme-" + std::to_string(ms.size()), {g, complement}));
    }
    return {std::move(k), std::move(e), std::move(ms)};
}

RestrictedTheory bloch_theory(int n, bool outer) {
    StateSpace k = outer ? bloch_outer_polytope(n) : bloch_inner_polytope(n);
    EffectRestriction e = effect_polytope(k);
    std::optional<std::vector<Measurement>> m;
    if (!outer) m = axis_measurements_3d();  // invalid outside the unit ball
    return {std::move(k), std::move(e), std::move(m)};
}

namespace {

// Correlation tensor in the per-side monomial bases (1, coords...), mapped to
// the system's vertex bases.
QMat tensor_from_monomial(const BipartiteSystem& sys, const QMat& mono) {
    return sys.basis_a.pinv * mono * sys.basis_b.pinv.transpose();
}

QMat pr_box_tensor(const BipartiteSystem& square_square) {
    QMat mono(3, 3);
    mono << Rat(1), Rat(0), Rat(0),
            Rat(0), Rat(1), Rat(1),
            Rat(0), Rat(1), Rat(-1);
    return tensor_from_monomial(square_square, mono);
}

}  // namespace

SteeringScenario square_tetra_pr_scenario(AmbientKind ambient) {
    BipartiteSystem squares = make_system(square_state_space(), square_state_space());
    QMat pr = pr_box_tensor(squares);
    if (ambient == AmbientKind::Maximal) {
        SteeringScenario sc{std::move(squares), AmbientKind::Maximal, std::nullopt, std::move(pr),
                            square_face_measurements()};
        return sc;
    }
    if (ambient != AmbientKind::Minimal)
        throw std::invalid_argument("square_tetra_pr: ambient must be min or max");

    // Embed B's square as the mid-edge section of the tetrahedron and push the
    // tensor through the inclusion.
    StateSpace tetra = simplex_state_space(4);
    BipartiteSystem sys = make_system(square_state_space(), tetra);
    QVec c = qvec_from_rats({make_rat(1, 4), make_rat(1, 4), make_rat(1, 4), make_rat(1, 4)});
    QVec u = qvec_from_rats({make_rat(1, 4), Rat(0), Rat(0), make_rat(-1, 4)});
    QVec v = qvec_from_rats({Rat(0), make_rat(1, 4), make_rat(-1, 4), Rat(0)});
    auto embed = [&](const QVec& s) { return QVec(c + s(0) * u + s(1) * v); };

    const SpanBasis& sq_b = squares.basis_b;
    QMat l(sys.basis_b.size(), sq_b.size());
    for (int j = 0; j < sq_b.size(); ++j) {
        const QVec& w = squares.B.vertices()[static_cast<size_t>(sq_b.vertex_indices[j])];
        l.col(j) = state_coords(sys.basis_b, embed(w));
    }
    QMat pushed = pr * l.transpose();
    SteeringScenario sc{std::move(sys), AmbientKind::Minimal, std::nullopt, std::move(pushed),
                        square_face_measurements()};
    return sc;
}

QMat isotropic_tensor(const BipartiteSystem& sys, const Rat& gamma) {
    QMat mono(4, 4);
    mono.setConstant(Rat(0));
    mono(0, 0) = 1;
    mono(1, 1) = gamma;
    mono(2, 2) = -gamma;
    mono(3, 3) = gamma;
    return tensor_from_monomial(sys, mono);
}

SteeringScenario bloch_isotropic_scenario(const Rat& gamma, bool outer, int n) {
    if (gamma < 0 || gamma > 1) throw std::invalid_argument("gamma must lie in [0,1]");
    StateSpace a = bloch_inner_polytope(n);
    StateSpace b = outer ? bloch_outer_polytope(n) : bloch_inner_polytope(n);
    // Only A's effect enumeration is kept: membership in the maximal composite
    // and the validity sweep both work through (f x id) conditioning, and B's
    // enumeration is the expensive one for circumscribed bodies.
    BipartiteSystem sys = make_system(std::move(a), std::move(b), WithEffects{true, false});
    QMat rho = isotropic_tensor(sys, gamma);
    SteeringScenario sc{std::move(sys), AmbientKind::Maximal, std::nullopt, std::move(rho),
                        axis_measurements_3d()};
    return sc;
}

Rat isotropic_validity_limit(const SteeringScenario& sc) {
    // Facet values of the conditioned B-side vectors are affine in gamma and
    // the white-noise end lies strictly inside, so validity is an interval
    // [0, limit] whose endpoint is the smallest positive root.
    QMat rho0 = isotropic_tensor(sc.sys, Rat(0));
    QMat rho1 = isotropic_tensor(sc.sys, Rat(1));
    const std::vector<Halfspace>& facets = sc.sys.B.body().facets();
    Rat limit(1);
    for (const AffineFunctional& f : effects_a(sc.sys).generators) {
        QVec fc = effect_coords(sc.sys.basis_a, sc.sys.A, f);
        QVec lifted0 = to_lifted(sc.sys.basis_b, QVec(rho0.transpose() * fc));
        QVec lifted1 = to_lifted(sc.sys.basis_b, QVec(rho1.transpose() * fc));
        // Cone membership of (mass, w): mass >= 0 and facet slack
        // offset*mass - normal.w >= 0 for every facet of K_B.
        for (const Halfspace& h : facets) {
            Rat at0 = h.offset * lifted0(0) - h.normal.dot(lifted0.tail(3));
            Rat at1 = h.offset * lifted1(0) - h.normal.dot(lifted1.tail(3));
            Rat slope = at1 - at0;
            if (slope >= 0) continue;
            Rat cap = at0 / -slope;
            if (cap < limit) limit = cap;
        }
        Rat mass_slope = lifted1(0) - lifted0(0);
        if (mass_slope < 0) {
            Rat cap = lifted0(0) / -mass_slope;
            if (cap < limit) limit = cap;
        }
    }
    return limit;
}

namespace {

long draw(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

Rat draw_rat01(std::mt19937_64& rng, long grid = 8) { return make_rat(draw(rng, 0, grid), grid); }

QVec draw_simplex_weights(std::mt19937_64& rng, int n, long grid = 12) {
    std::vector<long> cuts{0, grid};
    for (int i = 0; i < n - 1; ++i) cuts.push_back(draw(rng, 0, grid));
    std::sort(cuts.begin(), cuts.end());
    QVec w(n);
    for (int i = 0; i < n; ++i) w(i) = make_rat(cuts[static_cast<size_t>(i + 1)] - cuts[static_cast<size_t>(i)], grid);
    return w;
}

StateSpace random_polygon(std::mt19937_64& rng, const std::string& label) {
    // At least four extreme points: a triangle factor is a simplex, which
    // collapses the minimal and maximal composites and trivializes steering.
    for (;;) {
        int npts = static_cast<int>(draw(rng, 4, 7));
        std::vector<QVec> pts;
        for (int i = 0; i < npts; ++i) {
            QVec v(2);
            v << Rat(draw(rng, -3, 3)), Rat(draw(rng, -3, 3));
            pts.push_back(std::move(v));
        }
        std::vector<QVec> extreme = prune_to_extreme(pts);
        if (extreme.size() >= 4) return StateSpace(label, 2, std::move(extreme), false);
    }
}

AffineFunctional random_effect(std::mt19937_64& rng, const StateSpace& K,
                               const EffectRestriction& E) {
    // Half the time take an extreme nontrivial effect; sharp effects make the
    // instance pool interesting. Otherwise a random mixture.
    if (draw(rng, 0, 1) == 0) {
        std::vector<const AffineFunctional*> nontrivial;
        for (const AffineFunctional& g : E.generators) {
            if (same_effect(K, g, zero_effect(K.ambient_dim()))) continue;
            if (same_effect(K, g, unit_effect(K.ambient_dim()))) continue;
            nontrivial.push_back(&g);
        }
        if (!nontrivial.empty())
            return *nontrivial[static_cast<size_t>(
                draw(rng, 0, static_cast<long>(nontrivial.size()) - 1))];
    }
    QVec w = draw_simplex_weights(rng, static_cast<int>(E.generators.size()));
    AffineFunctional f = zero_effect(K.ambient_dim());
    for (size_t g = 0; g < E.generators.size(); ++g) {
        f.linear += w(static_cast<Eigen::Index>(g)) * E.generators[g].linear;
        f.constant += w(static_cast<Eigen::Index>(g)) * E.generators[g].constant;
    }
    return f;
}

std::vector<Measurement> random_measurements(std::mt19937_64& rng, const StateSpace& K,
                                             const EffectRestriction& E) {
    std::vector<Measurement> ms;
    const int count = static_cast<int>(draw(rng, 2, 3));
    for (int i = 0; i < count; ++i) {
        bool ternary = draw(rng, 0, 3) == 0;
        if (ternary) {
            // f1 = s*g1, f2 = t*g2 with s+t <= 1 keeps the remainder an effect.
            AffineFunctional g1 = random_effect(rng, K, E);
            AffineFunctional g2 = random_effect(rng, K, E);
            Rat s = draw_rat01(rng), t = draw_rat01(rng);
            Rat total = s + t;
            if (total > 1) {
                s /= total;
                t /= total;
            }
            AffineFunctional f1{s * g1.linear, s * g1.constant};
            AffineFunctional f2{t * g2.linear, t * g2.constant};
            AffineFunctional rest{-f1.linear - f2.linear, Rat(1) - f1.constant - f2.constant};
            ms.push_back(make_measurement("rand-ternary-" + std::to_string(i), {f1, f2, rest}));
        } else {
            AffineFunctional f = random_effect(rng, K, E);
            AffineFunctional complement{-f.linear, Rat(1) - f.constant};
            ms.push_back(make_measurement("rand-binary-" + std::to_string(i), {f, complement}));
        }
    }
    return ms;
}

}  // namespace

RestrictedTheory random_restricted_theory(std::mt19937_64& rng) {
    StateSpace K = random_polygon(rng, "random-polygon");
    EffectRestriction full = effect_polytope(K);
    std::vector<Measurement> ms = random_measurements(rng, K, full);
    EffectRestriction E = generate_effect_algebra(ms);
    return {std::move(K), std::move(E), std::move(ms)};
}

SteeringScenario random_full_dimensional_scenario(std::mt19937_64& rng) {
    for (;;) {
        BipartiteSystem sys = make_system(random_polygon(rng, "alice"), random_polygon(rng, "bob"));
        TensorProductSpace max = maximal_tensor(sys);
        std::vector<QVec> extremal = with_vrep(max.body).vertices();
        std::vector<QVec> products;
        for (const QVec& u : sys.A.vertices())
            for (const QVec& v : sys.B.vertices())
                products.push_back(flatten(product_state(sys, u, v)));

        QVec wp = draw_simplex_weights(rng, static_cast<int>(products.size()));
        QVec wm = draw_simplex_weights(rng, static_cast<int>(extremal.size()));
        // Lean on the extremal composite half the time; near-product states are
        // rarely steerable by anything. Occasionally sit on a single extreme
        // point of the maximal composite.
        Rat mix = draw(rng, 0, 1) == 0 ? Rat(1) - make_rat(draw(rng, 0, 4), 16)
                                       : draw_rat01(rng);
        if (draw(rng, 0, 3) == 0) {
            mix = 1;
            size_t pick = static_cast<size_t>(draw(rng, 0, static_cast<long>(extremal.size()) - 1));
            wm = qvec_zero(static_cast<int>(extremal.size()));
            wm(static_cast<Eigen::Index>(pick)) = 1;
        }
        QVec flat = qvec_zero(static_cast<int>(products[0].size()));
        for (size_t i = 0; i < products.size(); ++i)
            flat += (1 - mix) * wp(static_cast<Eigen::Index>(i)) * products[i];
        for (size_t i = 0; i < extremal.size(); ++i)
            flat += mix * wm(static_cast<Eigen::Index>(i)) * extremal[i];

        std::vector<Measurement> ms =
            random_measurements(rng, sys.A, effects_a(sys));
        SteeringScenario sc{std::move(sys), AmbientKind::Maximal, std::nullopt,
                            unflatten(flat, 0, 0), std::move(ms)};
        sc.rho = unflatten(flat, sc.sys.basis_a.size(), sc.sys.basis_b.size());
        if (!is_full_dimensional(sc, FullDimMode::ConditionedEffects)) continue;
        return sc;
    }
}

ParsedPreset parse_preset_name(const std::string& text) {
    ParsedPreset p;
    auto open = text.find('(');
    if (open == std::string::npos) {
        p.name = text;
        return p;
    }
    if (text.back() != ')') throw std::invalid_argument("malformed preset name: " + text);
    p.name = text.substr(0, open);
    std::string args = text.substr(open + 1, text.size() - open - 2);
    size_t start = 0;
    while (start <= args.size() && !args.empty()) {
        size_t comma = args.find(',', start);
        if (comma == std::string::npos) {
            p.args.push_back(args.substr(start));
            break;
        }
        p.args.push_back(args.substr(start, comma - start));
        start = comma + 1;
    }
    return p;
}

bool is_theory_preset(const std::string& name) {
    return name == "square" || name == "simplex" || name == "square_in_square" ||
           name == "triangle_in_ngon" || name == "bloch_inner" || name == "bloch_outer" ||
           name == "pentagon" || name == "ngon";
}

bool is_scenario_preset(const std::string& name) {
    return name == "square_tetra_pr" || name == "bloch_isotropic";
}

namespace {

int int_arg(const ParsedPreset& p, size_t idx, const char* what) {
    if (idx >= p.args.size()) throw std::invalid_argument(std::string("preset missing argument: ") + what);
    return std::stoi(p.args[idx]);
}

}  // namespace

RestrictedTheory theory_preset(const std::string& text) {
    ParsedPreset p = parse_preset_name(text);
    if (p.name == "square") return square_theory();
    if (p.name == "simplex") return simplex_theory(int_arg(p, 0, "outcome count"));
    if (p.name == "square_in_square") return square_in_square_theory();
    if (p.name == "triangle_in_ngon") return triangle_in_ngon_theory(int_arg(p, 0, "vertex count"));
    if (p.name == "bloch_inner") return bloch_theory(int_arg(p, 0, "vertex count"), false);
    if (p.name == "bloch_outer") return bloch_theory(int_arg(p, 0, "facet count"), true);
    if (p.name == "pentagon") {
        StateSpace k = pentagon_state_space();
        EffectRestriction e = effect_polytope(k);
        return {std::move(k), std::move(e), std::nullopt};
    }
    if (p.name == "ngon") {
        StateSpace k = ngon_state_space(int_arg(p, 0, "vertex count"));
        EffectRestriction e = effect_polytope(k);
        return {std::move(k), std::move(e), std::nullopt};
    }
    throw std::invalid_argument("unknown theory preset: " + text);
}

SteeringScenario scenario_preset(const std::string& text,
                                 std::optional<AmbientKind> ambient_override) {
    ParsedPreset p = parse_preset_name(text);
    if (p.name == "square_tetra_pr") {
        AmbientKind kind = AmbientKind::Maximal;
        if (!p.args.empty()) kind = p.args[0] == "min" ? AmbientKind::Minimal : AmbientKind::Maximal;
        if (ambient_override) kind = *ambient_override;
        return square_tetra_pr_scenario(kind);
    }
    if (p.name == "bloch_isotropic") {
        if (p.args.size() < 3)
            throw std::invalid_argument("bloch_isotropic needs (gamma, inner|outer, n)");
        Rat gamma = rat_from_string(p.args[0]);
        bool outer = p.args[1] == "outer";
        if (!outer && p.args[1] != "inner")
            throw std::invalid_argument("bloch_isotropic side must be inner or outer");
        int n = std::stoi(p.args[2]);
        return bloch_isotropic_scenario(gamma, outer, n);
    }
    throw std::invalid_argument("unknown scenario preset: " + text);
}

}  // namespace gptlab::presets
