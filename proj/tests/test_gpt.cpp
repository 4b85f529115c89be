#include <doctest.h>

#include "gptlab/gpt.hpp"
#include "test_helpers.hpp"

using namespace gptlab;

namespace {

StateSpace segment_space() {
    return StateSpace("segment", 1, {qvec_from({0}), qvec_from({1})});
}

StateSpace square_space() {
    return StateSpace("square", 2,
                      {qvec_from({1, 1}), qvec_from({1, -1}), qvec_from({-1, 1}), qvec_from({-1, -1})});
}

StateSpace diamond_space() {
    return StateSpace("diamond", 2,
                      {qvec_from({1, 0}), qvec_from({-1, 0}), qvec_from({0, 1}), qvec_from({0, -1})});
}

StateSpace simplex_space(int n) {
    std::vector<QVec> vs;
    for (int i = 0; i < n; ++i) {
        QVec v = qvec_zero(n);
        v(i) = 1;
        vs.push_back(std::move(v));
    }
    return StateSpace("simplex", n, std::move(vs));
}

// E = all functionals with values in [0,1] on the outer body, used as the
// restriction on an inner K sharing the same affine hull.
EffectRestriction restriction_from_outer(const StateSpace& outer) {
    return effect_polytope(outer);
}

QVec random_state(testing::Rng& rng, const StateSpace& K) {
    const auto& vs = K.vertices();
    QVec w = rng.simplex_point(static_cast<int>(vs.size()));
    QVec x = qvec_zero(K.ambient_dim());
    for (size_t i = 0; i < vs.size(); ++i) x += w(static_cast<Eigen::Index>(i)) * vs[i];
    return x;
}

AffineFunctional random_effect_in(testing::Rng& rng, const EffectRestriction& E) {
    QVec w = rng.simplex_point(static_cast<int>(E.generators.size()));
    AffineFunctional f = zero_effect(static_cast<int>(E.generators[0].linear.size()));
    for (size_t i = 0; i < E.generators.size(); ++i) {
        f.linear += w(static_cast<Eigen::Index>(i)) * E.generators[i].linear;
        f.constant += w(static_cast<Eigen::Index>(i)) * E.generators[i].constant;
    }
    return f;
}

}  // namespace

TEST_SUITE("gpt") {

TEST_CASE("effect polytope of the classical bit has four extreme effects") {
    EffectRestriction e = effect_polytope(segment_space());
    CHECK(e.generators.size() == 4);  // 0, 1, and the two point indicators
}

TEST_CASE("effect polytope of the square matches brute-force facet enumeration") {
    StateSpace sq = square_space();
    EffectRestriction e = effect_polytope(sq);
    // Oracle: vertices of {(a,b,c) : 0 <= a v_x + b v_y + c <= 1 at 4 corners}
    // enumerated by triples of tight constraints.
    std::vector<QVec> rows;
    std::vector<Rat> rhs;
    for (const QVec& v : sq.vertices()) {
        QVec low(3), high(3);
        low << -v(0), -v(1), Rat(-1);
        high << v(0), v(1), Rat(1);
        rows.push_back(low);
        rhs.push_back(Rat(0));
        rows.push_back(high);
        rhs.push_back(Rat(1));
    }
    std::vector<QVec> oracle;
    const size_t n = rows.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                QMat m(3, 3);
                m.row(0) = rows[i].transpose();
                m.row(1) = rows[j].transpose();
                m.row(2) = rows[k].transpose();
                if (exact_rank(m) < 3) continue;
                QVec b(3);
                b << rhs[i], rhs[j], rhs[k];
                auto x = solve_linear(m, b);
                if (!x) continue;
                bool feasible = true;
                for (size_t t = 0; t < n && feasible; ++t)
                    if (rows[t].dot(*x) > rhs[t]) feasible = false;
                if (feasible) oracle.push_back(*x);
            }
    oracle = sorted_vertex_set(oracle);
    CHECK(e.generators.size() == oracle.size());
    CHECK(oracle.size() == 6);
}

TEST_CASE("triangle effects are exactly the outcome-subset sums") {
    StateSpace tri = simplex_space(3);
    EffectRestriction e = effect_polytope(tri);
    REQUIRE(e.generators.size() == 8);
    // Every generator must take value 0 or 1 on every vertex, and all eight
    // 0/1 patterns must appear.
    std::vector<std::vector<int>> patterns;
    for (const AffineFunctional& g : e.generators) {
        std::vector<int> pat;
        for (const QVec& v : tri.vertices()) {
            Rat val = g.value(v);
            REQUIRE((val == 0 || val == 1));
            pat.push_back(val == 1 ? 1 : 0);
        }
        patterns.push_back(pat);
    }
    std::sort(patterns.begin(), patterns.end());
    CHECK(patterns.size() == 8);
    CHECK(std::unique(patterns.begin(), patterns.end()) == patterns.end());
}

TEST_CASE("dual state space of a full effect algebra reproduces the state space") {
    for (const StateSpace& K : {segment_space(), simplex_space(3), square_space()}) {
        EffectRestriction e = effect_polytope(K);
        DualStateSpace dual = dual_state_space(K, e);
        // The evaluation channel maps vertices bijectively onto the dual body's
        // vertices; affine map + vertex bijection = affine isomorphism.
        std::vector<QVec> images;
        for (const QVec& v : K.vertices()) images.push_back(evaluation_channel(K, dual, v));
        CHECK(sorted_vertex_set(images) == dual.body.vertices());
    }
}

TEST_CASE("dual state space of the inner square restriction is the outer square") {
    StateSpace inner = diamond_space();
    EffectRestriction e = restriction_from_outer(square_space());
    DualStateSpace dual = dual_state_space(inner, e);
    CHECK(dual.body.vertices().size() == 4);
    // Inner vertices land on edge midpoints of the dual square: each image is
    // the average of two dual vertices.
    for (const QVec& v : inner.vertices()) {
        QVec img = evaluation_channel(inner, dual, v);
        bool is_midpoint = false;
        const auto& dv = dual.body.vertices();
        for (size_t i = 0; i < dv.size() && !is_midpoint; ++i)
            for (size_t j = i + 1; j < dv.size() && !is_midpoint; ++j)
                if (QVec((dv[i] + dv[j]) / 2) == img) is_midpoint = true;
        CHECK(is_midpoint);
    }
}

TEST_CASE("trivial restriction collapses the dual to a point") {
    StateSpace sq = square_space();
    EffectRestriction e{{zero_effect(2), unit_effect(2)}};
    DualStateSpace dual = dual_state_space(sq, e);
    CHECK(dual.body.vertices().size() == 1);
}

TEST_CASE("measurement statistics factor through the evaluation channel") {
    testing::Rng rng(301);
    StateSpace inner = diamond_space();
    EffectRestriction e = restriction_from_outer(square_space());
    DualStateSpace dual = dual_state_space(inner, e);
    for (int trial = 0; trial < 50; ++trial) {
        QVec rho = random_state(rng, inner);
        AffineFunctional f = random_effect_in(rng, e);
        QVec beta = effect_in_dual_basis(inner, dual, f);
        QVec xi = evaluation_channel(inner, dual, rho);
        CHECK(beta.dot(xi) == f.value(rho));
    }
}

TEST_CASE("generated effect algebra from measurements") {
    StateSpace sq = square_space();
    AffineFunctional fx{qvec_from_rats({make_rat(1, 2), Rat(0)}), make_rat(1, 2)};
    AffineFunctional fy{qvec_from_rats({Rat(0), make_rat(1, 2)}), make_rat(1, 2)};
    AffineFunctional cfx{-fx.linear, Rat(1) - fx.constant};
    AffineFunctional cfy{-fy.linear, Rat(1) - fy.constant};

    SUBCASE("trivial measurement generates the trivial algebra") {
        Measurement triv = make_measurement("trivial", {unit_effect(2)});
        EffectRestriction e = generate_effect_algebra({triv});
        CHECK(e.generators.size() == 2);
    }
    SUBCASE("one binary measurement generates effect and complement") {
        Measurement mx = make_measurement("x", {fx, cfx});
        EffectRestriction e = generate_effect_algebra({mx});
        CHECK(e.generators.size() == 4);
    }
    SUBCASE("two face measurements generate six effects and a square dual") {
        Measurement mx = make_measurement("x", {fx, cfx});
        Measurement my = make_measurement("y", {fy, cfy});
        EffectRestriction e = generate_effect_algebra({mx, my});
        CHECK(e.generators.size() == 6);
        DualStateSpace dual = dual_state_space(sq, e);
        CHECK(dual.body.vertices().size() == 4);
    }
    SUBCASE("adding a post-processing of a member leaves the algebra unchanged") {
        Measurement mx = make_measurement("x", {fx, cfx});
        Measurement my = make_measurement("y", {fy, cfy});
        PostProcessing flip;
        flip.matrix = QMat(2, 2);
        flip.matrix << Rat(0), Rat(1), Rat(1), Rat(0);
        EffectRestriction a = generate_effect_algebra({mx, my});
        EffectRestriction b = generate_effect_algebra({mx, my, apply_postprocessing(mx, flip)});
        // Same set as convex bodies: compare coefficient vertex sets.
        auto coeff_set = [&](const EffectRestriction& e) {
            std::vector<QVec> cs;
            for (const auto& g : e.generators) cs.push_back(functional_coeffs(sq, g));
            return sorted_vertex_set(cs);
        };
        CHECK(coeff_set(a) == coeff_set(b));
    }
}

TEST_CASE("post-processing identities") {
    AffineFunctional f{qvec_from_rats({make_rat(1, 2), Rat(0)}), make_rat(1, 2)};
    AffineFunctional cf{-f.linear, Rat(1) - f.constant};
    Measurement m = make_measurement("m", {f, cf});

    PostProcessing id;
    id.matrix = QMat(2, 2);
    id.matrix << Rat(1), Rat(0), Rat(0), Rat(1);
    Measurement same = apply_postprocessing(m, id);
    CHECK(same.effects[0].linear == f.linear);
    CHECK(same.effects[0].constant == f.constant);

    PostProcessing coarse;
    coarse.matrix = QMat(2, 1);
    coarse.matrix << Rat(1), Rat(1);
    Measurement triv = apply_postprocessing(m, coarse);
    REQUIRE(triv.effects.size() == 1);
    CHECK(triv.effects[0].value(qvec_from({1, 1})) == 1);

    PostProcessing flip;
    flip.matrix = QMat(2, 2);
    flip.matrix << Rat(0), Rat(1), Rat(1), Rat(0);
    Measurement swapped = apply_postprocessing(m, flip);
    CHECK(swapped.effects[0].linear == cf.linear);
    CHECK(swapped.effects[1].linear == f.linear);

    PostProcessing bad;
    bad.matrix = QMat(2, 2);
    bad.matrix << Rat(2), Rat(-1), Rat(0), Rat(1);
    CHECK_THROWS(apply_postprocessing(m, bad));
}

TEST_CASE("tomographic completeness") {
    StateSpace sq = square_space();
    CHECK(is_tomographically_complete(sq, effect_polytope(sq)));
    EffectRestriction trivial{{zero_effect(2), unit_effect(2)}};
    CHECK(!is_tomographically_complete(sq, trivial));
    CHECK(is_tomographically_complete(diamond_space(), restriction_from_outer(square_space())));
}

TEST_CASE("theory validation catches broken invariants") {
    StateSpace sq = square_space();
    RestrictedTheory ok{sq, effect_polytope(sq), std::nullopt};
    CHECK_NOTHROW(validate_theory(ok));

    AffineFunctional too_big{qvec_from({1, 0}), Rat(1)};  // value 2 at (1,1)
    RestrictedTheory bad{sq, EffectRestriction{{zero_effect(2), unit_effect(2), too_big}}, std::nullopt};
    CHECK_THROWS(validate_theory(bad));

    AffineFunctional fx{qvec_from_rats({make_rat(1, 2), Rat(0)}), make_rat(1, 2)};
    Measurement not_normalized = make_measurement("bad", {fx, fx});
    CHECK_THROWS(validate_measurement(sq, not_normalized));
}

}  // TEST_SUITE
