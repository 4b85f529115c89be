#include <doctest.h>

#include "gptlab/contextuality.hpp"
#include "test_helpers.hpp"

using namespace gptlab;

namespace {

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

StateSpace segment_space() { return StateSpace("segment", 1, {qvec_from({0}), qvec_from({1})}); }

StateSpace pentagon_space() {
    return StateSpace("pentagon", 2,
                      {qvec_from({0, 0}), qvec_from({2, 0}), qvec_from({3, 2}), qvec_from({1, 3}),
                       qvec_from({-1, 2})});
}

Measurement face_measurement(int axis) {
    QVec half = qvec_zero(2);
    half(axis) = make_rat(1, 2);
    return make_measurement(axis == 0 ? "x" : "y",
                            {AffineFunctional{half, make_rat(1, 2)},
                             AffineFunctional{-half, make_rat(1, 2)}});
}

}  // namespace

TEST_SUITE("contextuality") {

TEST_CASE("simplices embed for any restriction") {
    StateSpace tri = simplex_space(3);
    Measurement m = make_measurement("b0", {AffineFunctional{qvec_from({1, 0, 0}), Rat(0)},
                                            AffineFunctional{qvec_from({-1, 0, 0}), Rat(1)}});
    EffectRestriction e = generate_effect_algebra({m});
    EmbedOutcome out = simplex_embeddable(tri, e);
    REQUIRE(out.embeddable);
    CHECK(verify_embedding(tri, e, *out.cert));
}

TEST_CASE("the inner square with the outer square's effects embeds") {
    StateSpace inner = diamond_space();
    EffectRestriction e = effect_polytope(square_space());
    EmbedOutcome out = simplex_embeddable(inner, e);
    REQUIRE(out.embeddable);
    CHECK(verify_embedding(inner, e, *out.cert));
    CHECK(out.cert->h.size() <= 4);  // bounded by the dual vertex count
}

TEST_CASE("unrestricted non-simplices do not embed") {
    for (StateSpace K : {square_space(), pentagon_space()}) {
        EmbedOutcome out = simplex_embeddable(K, effect_polytope(K));
        REQUIRE(!out.embeddable);
        CHECK(verify_farkas_certificate(*out.farkas));
    }
}

TEST_CASE("unrestricted simplices embed") {
    {
        EmbedOutcome out = simplex_embeddable(segment_space(), effect_polytope(segment_space()));
        CHECK(out.embeddable);
    }
    {
        StateSpace tri = simplex_space(3);
        EmbedOutcome out = simplex_embeddable(tri, effect_polytope(tri));
        CHECK(out.embeddable);
    }
    {
        StateSpace tetra = simplex_space(4);
        EmbedOutcome out = simplex_embeddable(tetra, effect_polytope(tetra));
        CHECK(out.embeddable);
    }
}

TEST_CASE("hand-built classical bit certificate verifies") {
    StateSpace seg = segment_space();
    EffectRestriction e = effect_polytope(seg);
    SimplexEmbeddingCert cert;
    // h_0 = 1 - t, h_1 = t; images are the two dual vertices.
    cert.h.push_back(AffineFunctional{qvec_from({-1}), Rat(1)});
    cert.h.push_back(AffineFunctional{qvec_from({1}), Rat(0)});
    DualStateSpace dual = dual_state_space(seg, e);
    REQUIRE(dual.body.vertices().size() == 2);
    cert.psi.push_back(evaluation_channel(seg, dual, qvec_from({0})));
    cert.psi.push_back(evaluation_channel(seg, dual, qvec_from({1})));
    CHECK(verify_embedding(seg, e, cert));

    SimplexEmbeddingCert broken = cert;
    broken.psi[0](1) -= 3;  // pushes the image outside the dual body
    CHECK(!verify_embedding(seg, e, broken));
}

TEST_CASE("interior images are feasible but never necessary") {
    // K = [0,1] inside the longer segment [-1,2]: a valid model may place its
    // simplex images at interior points of the dual body; the vertex-restricted
    // search must then also succeed.
    StateSpace inner = StateSpace("unit", 1, {qvec_from({0}), qvec_from({1})});
    StateSpace outer = StateSpace("long", 1, {qvec_from({-1}), qvec_from({2})});
    EffectRestriction e = effect_polytope(outer);
    DualStateSpace dual = dual_state_space(inner, e);

    SimplexEmbeddingCert hand;
    hand.h.push_back(AffineFunctional{qvec_from({-1}), Rat(1)});
    hand.h.push_back(AffineFunctional{qvec_from({1}), Rat(0)});
    hand.psi.push_back(evaluation_channel(inner, dual, qvec_from({0})));
    hand.psi.push_back(evaluation_channel(inner, dual, qvec_from({1})));
    // The images are interior points of the dual body, not vertices.
    for (const QVec& psi : hand.psi)
        for (const QVec& v : dual.body.vertices()) CHECK(psi != v);
    CHECK(verify_embedding(inner, e, hand));

    EmbedOutcome vertex_restricted = simplex_embeddable(inner, e);
    CHECK(vertex_restricted.embeddable);
}

TEST_CASE("preparation noncontextual models follow the joint-measurability verdict") {
    StateSpace sq = square_space();
    RestrictedTheory contextual{sq, effect_polytope(sq),
                                std::vector<Measurement>{face_measurement(0), face_measurement(1)}};
    PrepNCOutcome no = prep_noncontextual(contextual);
    REQUIRE(!no.noncontextual);
    CHECK(verify_farkas_certificate(*no.farkas));

    StateSpace inner = diamond_space();
    RestrictedTheory fine{inner, effect_polytope(square_space()),
                          std::vector<Measurement>{face_measurement(0), face_measurement(1)}};
    PrepNCOutcome yes = prep_noncontextual(fine);
    REQUIRE(yes.noncontextual);
    CHECK(verify_prep_nc_model(fine, *yes.model));

    RestrictedTheory no_m{sq, effect_polytope(sq), std::nullopt};
    CHECK_THROWS(prep_noncontextual(no_m));
}

TEST_CASE("hierarchy: joint measurability in E implies embeddability implies a model") {
    // The square-in-square theory separates the layers: not E-compatible, yet
    // embeddable and preparation noncontextual.
    StateSpace inner = diamond_space();
    EffectRestriction e = effect_polytope(square_space());
    std::vector<Measurement> ms = {face_measurement(0), face_measurement(1)};

    CompatOutcome in_e = e_compatible(inner, e, ms);
    CHECK(!in_e.compatible);
    EmbedOutcome embed = simplex_embeddable(inner, e);
    CHECK(embed.embeddable);
    RestrictedTheory T{inner, e, ms};
    CHECK(prep_noncontextual(T).noncontextual);

    // And on a simplex all three are positive.
    StateSpace tri = simplex_space(3);
    EffectRestriction e_tri = effect_polytope(tri);
    Measurement b0 = make_measurement("b0", {AffineFunctional{qvec_from({1, 0, 0}), Rat(0)},
                                             AffineFunctional{qvec_from({-1, 0, 0}), Rat(1)}});
    CHECK(e_compatible(tri, e_tri, {b0, b0}).compatible);
    CHECK(simplex_embeddable(tri, e_tri).embeddable);
    RestrictedTheory Ttri{tri, e_tri, std::vector<Measurement>{b0}};
    CHECK(prep_noncontextual(Ttri).noncontextual);
}

}  // TEST_SUITE
