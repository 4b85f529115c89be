#include <doctest.h>

#include "gptlab/bipartite.hpp"
#include "test_helpers.hpp"

using namespace gptlab;

namespace {

StateSpace square_space() {
    return StateSpace("square", 2,
                      {qvec_from({1, 1}), qvec_from({1, -1}), qvec_from({-1, 1}), qvec_from({-1, -1})});
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

// Correlation tensor in the monomial basis (1, x, y) per side, converted into
// the system's vertex bases.
QMat tensor_from_monomial(const BipartiteSystem& sys, const QMat& mono) {
    return sys.basis_a.pinv * mono * sys.basis_b.pinv.transpose();
}

QMat pr_box(const BipartiteSystem& sys) {
    QMat mono(3, 3);
    mono << Rat(1), Rat(0), Rat(0),
            Rat(0), Rat(1), Rat(1),
            Rat(0), Rat(1), Rat(-1);
    return tensor_from_monomial(sys, mono);
}

QMat random_min_state(testing::Rng& rng, const BipartiteSystem& sys) {
    std::vector<QMat> products;
    for (const QVec& u : sys.A.vertices())
        for (const QVec& v : sys.B.vertices()) products.push_back(product_state(sys, u, v));
    QVec w = rng.simplex_point(static_cast<int>(products.size()));
    QMat t = products[0] * Rat(0);
    for (size_t i = 0; i < products.size(); ++i) t += w(static_cast<Eigen::Index>(i)) * products[i];
    return t;
}

}  // namespace

TEST_SUITE("bipartite") {

TEST_CASE("minimal tensor of two classical bits is a tetrahedron") {
    BipartiteSystem sys = make_system(simplex_space(2), simplex_space(2));
    TensorProductSpace min = minimal_tensor(sys);
    REQUIRE(min.body.vertices().size() == 4);
    CHECK(is_affinely_independent(min.body.vertices()));
}

TEST_CASE("minimal tensor vertex counts multiply") {
    BipartiteSystem sys = make_system(square_space(), simplex_space(4));
    CHECK(minimal_tensor(sys).body.vertices().size() == 16);
}

TEST_CASE("classical factors collapse min and max") {
    BipartiteSystem bits = make_system(simplex_space(2), simplex_space(2));
    CHECK(same_polytope(minimal_tensor(bits).body, maximal_tensor(bits).body));

    BipartiteSystem tris = make_system(simplex_space(3), simplex_space(3));
    CHECK(same_polytope(minimal_tensor(tris).body, maximal_tensor(tris).body));
}

TEST_CASE("pr box lies in the maximal but not the minimal square composite") {
    BipartiteSystem sys = make_system(square_space(), square_space());
    QMat pr = pr_box(sys);
    CHECK(is_normalized(sys, pr));
    CHECK(in_maximal(sys, pr));
    CHECK(!in_minimal(sys, pr));
}

TEST_CASE("minimal vertices satisfy the maximal halfspaces") {
    BipartiteSystem sys = make_system(square_space(), simplex_space(3));
    TensorProductSpace min = minimal_tensor(sys);
    TensorProductSpace max = maximal_tensor(sys);
    for (const QVec& v : min.body.vertices()) {
        for (const Halfspace& h : max.body.facets()) CHECK(h.normal.dot(v) <= h.offset);
    }
}

TEST_CASE("partial application factorizes on product states") {
    testing::Rng rng(41);
    BipartiteSystem sys = make_system(square_space(), simplex_space(3));
    QVec rho_a = qvec_from_rats({make_rat(1, 3), make_rat(-1, 5)});
    QVec rho_b = rng.simplex_point(3);
    QMat t = product_state(sys, rho_a, rho_b);

    AffineFunctional f = face_measurement(0).effects[0];
    QVec sigma = partial_apply_effect(sys, t, f, Side::A);
    QVec expected = state_coords(sys.basis_b, rho_b) * f.value(rho_a);
    CHECK(sigma == expected);

    // Unit effect gives the reduced state with weight one.
    QVec reduced = partial_apply_effect(sys, t, unit_effect(2), Side::A);
    CHECK(to_lifted(sys.basis_b, reduced)(0) == 1);
    CHECK(reduced == state_coords(sys.basis_b, rho_b));
}

TEST_CASE("pr box conditions to deterministic corner states") {
    BipartiteSystem sys = make_system(square_space(), square_space());
    QMat pr = pr_box(sys);
    AffineFunctional f_plus = face_measurement(0).effects[0];
    QVec sigma = partial_apply_effect(sys, pr, f_plus, Side::A);
    QVec lifted = to_lifted(sys.basis_b, sigma);
    REQUIRE(lifted(0) == make_rat(1, 2));
    // Conditioned state is the (1,1) corner.
    CHECK(lifted(1) == make_rat(1, 2));
    CHECK(lifted(2) == make_rat(1, 2));
}

TEST_CASE("partial application is bilinear") {
    testing::Rng rng(57);
    BipartiteSystem sys = make_system(square_space(), square_space());
    QMat t1 = random_min_state(rng, sys);
    QMat t2 = random_min_state(rng, sys);
    AffineFunctional f1 = face_measurement(0).effects[0];
    AffineFunctional f2 = face_measurement(1).effects[1];
    Rat a = rng.rational(), b = rng.rational();

    AffineFunctional combo{a * f1.linear + b * f2.linear, a * f1.constant + b * f2.constant};
    QVec lhs = partial_apply_effect(sys, t1, combo, Side::A);
    QVec rhs = a * partial_apply_effect(sys, t1, f1, Side::A) +
               b * partial_apply_effect(sys, t1, f2, Side::A);
    CHECK(lhs == rhs);

    QMat mix = t1 * make_rat(1, 3) + t2 * make_rat(2, 3);
    QVec lhs2 = partial_apply_effect(sys, mix, f1, Side::A);
    QVec rhs2 = partial_apply_effect(sys, t1, f1, Side::A) * make_rat(1, 3) +
                partial_apply_effect(sys, t2, f1, Side::A) * make_rat(2, 3);
    CHECK(lhs2 == rhs2);
}

TEST_CASE("chsh values: pr box saturates four, noise gives zero, min stays local") {
    BipartiteSystem sys = make_system(square_space(), square_space());
    Measurement a1 = face_measurement(0), a2 = face_measurement(1);

    CHECK(chsh_value(sys, pr_box(sys), a1, a2, a1, a2) == 4);

    // Maximally mixed product state: all correlators vanish.
    QVec center = qvec_from({0, 0});
    CHECK(chsh_value(sys, product_state(sys, center, center), a1, a2, a1, a2) == 0);

    testing::Rng rng(91);
    for (int trial = 0; trial < 20; ++trial) {
        Rat v = chsh_value(sys, random_min_state(rng, sys), a1, a2, a1, a2);
        CHECK(rat_abs(v) <= 2);
    }

    Measurement ternary = make_measurement("t", {face_measurement(0).effects[0],
                                                 AffineFunctional{qvec_zero(2), Rat(0)},
                                                 face_measurement(0).effects[1]});
    CHECK_THROWS(chsh_value(sys, pr_box(sys), ternary, a2, a1, a2));
}

}  // TEST_SUITE
