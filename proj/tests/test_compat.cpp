#include <doctest.h>

#include "gptlab/compat.hpp"
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

Measurement face_measurement(int axis) {
    QVec half = qvec_zero(2);
    half(axis) = make_rat(1, 2);
    AffineFunctional plus{half, make_rat(1, 2)};
    AffineFunctional minus{-half, make_rat(1, 2)};
    return make_measurement(axis == 0 ? "x" : "y", {plus, minus});
}

Measurement binary_from(const AffineFunctional& f) {
    AffineFunctional complement{-f.linear, Rat(1) - f.constant};
    return make_measurement("binary", {f, complement});
}

}  // namespace

TEST_SUITE("compat") {

TEST_CASE("a measurement is jointly measurable with itself") {
    StateSpace sq = square_space();
    EffectRestriction e = effect_polytope(sq);
    Measurement mx = face_measurement(0);
    CompatOutcome out = e_compatible(sq, e, {mx, mx});
    REQUIRE(out.compatible);
    CHECK(verify_joint_measurement(sq, {mx, mx}, *out.cert, &e));
}

TEST_CASE("trivial measurements are always compatible") {
    StateSpace sq = square_space();
    EffectRestriction e = effect_polytope(sq);
    AffineFunctional third{qvec_zero(2), make_rat(1, 3)};
    AffineFunctional rest{qvec_zero(2), make_rat(2, 3)};
    Measurement coin = make_measurement("coin", {third, rest});
    Measurement mx = face_measurement(0);
    CompatOutcome out = e_compatible(sq, e, {coin, mx});
    REQUIRE(out.compatible);
    CHECK(verify_joint_measurement(sq, {coin, mx}, *out.cert, &e));
}

TEST_CASE("opposite face measurements on the square restriction are not E-compatible") {
    // Inner square K with the outer square's full effect algebra as E.
    StateSpace inner = diamond_space();
    EffectRestriction e = effect_polytope(square_space());
    CompatOutcome out = e_compatible(inner, e, {face_measurement(0), face_measurement(1)});
    REQUIRE(!out.compatible);
    REQUIRE(out.farkas.has_value());
    CHECK(verify_farkas_certificate(*out.farkas));
}

TEST_CASE("the same pair is jointly measurable within the full algebra of the inner square") {
    StateSpace inner = diamond_space();
    CompatOutcome out = ek_compatible(inner, {face_measurement(0), face_measurement(1)});
    REQUIRE(out.compatible);
    CHECK(verify_joint_measurement(inner, {face_measurement(0), face_measurement(1)}, *out.cert,
                                   nullptr));
}

TEST_CASE("every measurement set on a simplex is jointly measurable") {
    testing::Rng rng(67);
    StateSpace tri = simplex_space(3);
    EffectRestriction e = effect_polytope(tri);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Measurement> ms;
        int count = static_cast<int>(rng.integer(2, 3));
        for (int i = 0; i < count; ++i) {
            QVec w = rng.simplex_point(static_cast<int>(e.generators.size()));
            AffineFunctional f = zero_effect(3);
            for (size_t g = 0; g < e.generators.size(); ++g) {
                f.linear += w(static_cast<Eigen::Index>(g)) * e.generators[g].linear;
                f.constant += w(static_cast<Eigen::Index>(g)) * e.generators[g].constant;
            }
            ms.push_back(binary_from(f));
        }
        CompatOutcome out = ek_compatible(tri, ms);
        REQUIRE(out.compatible);
        CHECK(verify_joint_measurement(tri, ms, *out.cert, nullptr));
    }
}

TEST_CASE("face measurements on the unrestricted square are not jointly measurable") {
    StateSpace sq = square_space();
    CompatOutcome out = ek_compatible(sq, {face_measurement(0), face_measurement(1)});
    REQUIRE(!out.compatible);
    CHECK(verify_farkas_certificate(*out.farkas));
    // Consistent with the simplexness criterion: the square's dual is no simplex.
    CHECK(!se_is_simplex(sq, effect_polytope(sq)));
}

TEST_CASE("dual simplexness matches exhaustive pairwise joint measurability") {
    // Simplex duals: every binary pair built from extreme effects is compatible.
    StateSpace tri = simplex_space(3);
    EffectRestriction e_tri = effect_polytope(tri);
    REQUIRE(se_is_simplex(tri, e_tri));
    for (const AffineFunctional& f : e_tri.generators)
        for (const AffineFunctional& g : e_tri.generators) {
            CompatOutcome out = e_compatible(tri, e_tri, {binary_from(f), binary_from(g)});
            CHECK(out.compatible);
        }

    // Square dual: some pair must fail.
    StateSpace inner = diamond_space();
    EffectRestriction e_sq = effect_polytope(square_space());
    REQUIRE(!se_is_simplex(inner, e_sq));
    bool found_incompatible = false;
    for (const AffineFunctional& f : e_sq.generators)
        for (const AffineFunctional& g : e_sq.generators) {
            CompatOutcome out = e_compatible(inner, e_sq, {binary_from(f), binary_from(g)});
            if (!out.compatible) found_incompatible = true;
        }
    CHECK(found_incompatible);
}

TEST_CASE("E-compatibility implies compatibility within the full algebra") {
    StateSpace inner = diamond_space();
    EffectRestriction e = effect_polytope(square_space());
    Measurement mx = face_measurement(0);
    AffineFunctional noisy{mx.effects[0].linear / 2, mx.effects[0].constant / 2 + make_rat(1, 4)};
    std::vector<Measurement> ms = {mx, binary_from(noisy)};
    CompatOutcome strong = e_compatible(inner, e, ms);
    if (strong.compatible) {
        CompatOutcome weak = ek_compatible(inner, ms);
        CHECK(weak.compatible);
    }
}

TEST_CASE("segment dual of a single binary measurement is a simplex") {
    StateSpace sq = square_space();
    Measurement mx = face_measurement(0);
    EffectRestriction e = generate_effect_algebra({mx});
    CHECK(se_is_simplex(sq, e));
}

TEST_CASE("post-processed duplicates do not change the verdict") {
    StateSpace sq = square_space();
    PostProcessing flip;
    flip.matrix = QMat(2, 2);
    flip.matrix << Rat(0), Rat(1), Rat(1), Rat(0);
    std::vector<Measurement> base = {face_measurement(0), face_measurement(1)};
    std::vector<Measurement> extended = base;
    extended.push_back(apply_postprocessing(base[0], flip));

    CHECK(ek_compatible(sq, base).compatible == ek_compatible(sq, extended).compatible);

    StateSpace tri = simplex_space(3);
    EffectRestriction e_tri = effect_polytope(tri);
    AffineFunctional b0{qvec_from({1, 0, 0}), Rat(0)};
    std::vector<Measurement> tri_ms = {binary_from(b0)};
    std::vector<Measurement> tri_ext = tri_ms;
    tri_ext.push_back(apply_postprocessing(tri_ms[0], flip));
    CHECK(e_compatible(tri, e_tri, tri_ms).compatible ==
          e_compatible(tri, e_tri, tri_ext).compatible);
}

TEST_CASE("effects outside E are a precondition violation, not incompatibility") {
    StateSpace inner = diamond_space();
    // E generated by one face measurement only; the other face is outside.
    EffectRestriction e = generate_effect_algebra({face_measurement(0)});
    CHECK_THROWS_AS(e_compatible(inner, e, {face_measurement(0), face_measurement(1)}),
                    std::invalid_argument);
}

TEST_CASE("tampered joint certificates fail verification") {
    StateSpace inner = diamond_space();
    std::vector<Measurement> ms = {face_measurement(0), face_measurement(1)};
    CompatOutcome out = ek_compatible(inner, ms);
    REQUIRE(out.compatible);
    JointMeasurementCert bad = *out.cert;
    bad.joint_effects[0].constant += make_rat(1, 7);
    CHECK(!verify_joint_measurement(inner, ms, bad, nullptr));
}

}  // TEST_SUITE
