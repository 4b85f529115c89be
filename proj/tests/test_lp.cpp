#include <doctest.h>

#include "gptlab/lp.hpp"
#include "test_helpers.hpp"

using namespace gptlab;

TEST_SUITE("lp") {

TEST_CASE("maximize x on the unit interval") {
    LPProblem p;
    p.num_vars = 1;
    p.objective = qvec_from({1});
    p.add(qvec_from({1}), Rel::LE, Rat(1));
    p.add(qvec_from({1}), Rel::GE, Rat(0));
    LPResult r = lp_solve(p);
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK((*r.point)(0) == 1);
    CHECK(r.objective_value == 1);
}

TEST_CASE("infeasible interval yields a verifying Farkas witness") {
    LPProblem p = LPProblem::feasibility(1);
    p.add(qvec_from({1}), Rel::GE, Rat(1));
    p.add(qvec_from({1}), Rel::LE, Rat(0));
    LPResult r = lp_solve(p);
    REQUIRE(r.status == LPStatus::Infeasible);
    REQUIRE(r.farkas.has_value());
    CHECK(verify_farkas(p, *r.farkas));
    // The canonical witness scales to (1,1): -1*(x>=1) + 1*(x<=0) gives 0 <= -1.
    CHECK((*r.farkas)(0) < 0);
    CHECK((*r.farkas)(1) > 0);
}

TEST_CASE("unbounded objective is reported") {
    LPProblem p;
    p.num_vars = 1;
    p.objective = qvec_from({1});
    p.add(qvec_from({1}), Rel::GE, Rat(0));
    CHECK(lp_solve(p).status == LPStatus::Unbounded);
}

TEST_CASE("degenerate equalities terminate under Bland") {
    LPProblem p;
    p.num_vars = 3;
    p.objective = qvec_from({1, 1, 1});
    p.add(qvec_from({1, 1, 0}), Rel::EQ, Rat(1));
    p.add(qvec_from({0, 1, 1}), Rel::EQ, Rat(1));
    p.add(qvec_from({1, 0, 1}), Rel::EQ, Rat(1));
    for (int j = 0; j < 3; ++j) p.set_lower(j, Rat(0));
    LPResult r = lp_solve(p);
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.objective_value == make_rat(3, 2));
}

TEST_CASE("bounds are honored and appear in witnesses") {
    LPProblem p;
    p.num_vars = 2;
    p.objective = qvec_from({1, 0});
    p.set_lower(0, Rat(2));
    p.set_upper(0, Rat(5));
    p.set_lower(1, Rat(0));
    p.add(qvec_from({1, 1}), Rel::LE, Rat(6));
    LPResult r = lp_solve(p);
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.objective_value == 5);

    LPProblem q = LPProblem::feasibility(1);
    q.set_lower(0, Rat(3));
    q.add(qvec_from({2}), Rel::LE, Rat(4));
    LPResult ri = lp_solve(q);
    REQUIRE(ri.status == LPStatus::Infeasible);
    CHECK(verify_farkas(q, *ri.farkas));
}

TEST_CASE("random feasibility runs verify exactly both ways") {
    testing::Rng rng(23);
    int infeasible_seen = 0, feasible_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int nv = static_cast<int>(rng.integer(1, 4));
        int nc = static_cast<int>(rng.integer(1, 6));
        LPProblem p = LPProblem::feasibility(nv);
        for (int c = 0; c < nc; ++c) {
            QVec row(nv);
            for (int j = 0; j < nv; ++j) row(j) = rng.rational(3, 3);
            Rel rel = static_cast<Rel>(rng.integer(0, 2));
            p.add(std::move(row), rel, rng.rational(4, 2));
        }
        LPResult r = lp_solve(p);
        if (r.status == LPStatus::Infeasible) {
            ++infeasible_seen;
            CHECK(verify_farkas(p, *r.farkas));
        } else {
            ++feasible_seen;
            REQUIRE(r.point.has_value());
            CHECK(verify_feasible_point(p, *r.point));
        }
    }
    CHECK(infeasible_seen > 0);
    CHECK(feasible_seen > 0);
}

TEST_CASE("optimization agrees with vertex enumeration oracle on boxes") {
    // Box [0,1]^2 with objective (a,b): optimum is at a corner; compare with the
    // brute-force corner scan.
    testing::Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        QVec obj(2);
        do {
            obj << rng.rational(3, 2), rng.rational(3, 2);
        } while (obj(0) == 0 && obj(1) == 0);
        LPProblem p;
        p.num_vars = 2;
        p.objective = obj;
        for (int j = 0; j < 2; ++j) {
            p.set_lower(j, Rat(0));
            p.set_upper(j, Rat(1));
        }
        LPResult r = lp_solve(p);
        REQUIRE(r.status == LPStatus::Optimal);
        Rat best(0);
        bool first = true;
        for (int cx = 0; cx <= 1; ++cx)
            for (int cy = 0; cy <= 1; ++cy) {
                Rat v = obj(0) * cx + obj(1) * cy;
                if (first || v > best) best = v;
                first = false;
            }
        CHECK(r.objective_value == best);
    }
}

TEST_CASE("deterministic: identical input gives identical point") {
    LPProblem p;
    p.num_vars = 2;
    p.objective = qvec_from({1, 1});
    p.add(qvec_from({1, 1}), Rel::LE, Rat(1));
    p.add(qvec_from({1, -1}), Rel::LE, Rat(0));
    p.set_lower(0, Rat(0));
    p.set_lower(1, Rat(0));
    LPResult a = lp_solve(p);
    LPResult b = lp_solve(p);
    REQUIRE(a.status == LPStatus::Optimal);
    CHECK(*a.point == *b.point);
}

}  // TEST_SUITE
