#include <doctest.h>

#include "zigzag/bridging.hpp"
#include "zigzag/fixtures.hpp"
#include "zigzag/oracle.hpp"

using namespace zigzag;
using namespace zigzag::fixtures;

/* The frozen three-map fixture. Every structural fact asserted here is part
   of the fixture's contract; the coordinates were chosen so that all of them
   hold simultaneously, and this suite is what freezes them. */

namespace {
PointedPLMap P(const PLMap& m) { return PointedPLMap{m}; }
} // namespace

TEST_CASE("ex4: f1 and f3 are their own radial contour factors") {
    CHECK(radial_contour_factor(P(ex4_f1())) == ex4_f1());
    CHECK(radial_contour_factor(P(ex4_f3())) == ex4_f3());
    // and so the meandering factor of f1 is the identity
    CHECK(meandering_lift(P(ex4_f1())) == id_map());
}

TEST_CASE("ex4: contour factors survive composition on both pairs") {
    CHECK(radial_contour_factor(P(compose(ex4_f1(), ex4_f2()))) == ex4_f1());
    CHECK(radial_contour_factor(P(compose(ex4_f2(), ex4_f3()))) ==
          radial_contour_factor(P(ex4_f2())));
}

TEST_CASE("ex4: contour structure of s1 o f2 = f2") {
    auto cd = contour_points(P(ex4_f2()));

    REQUIRE(cd.n() == 4);
    CHECK(cd.alpha(1).point == Rat(1, 4));       // b5
    CHECK(cd.alpha(1).orient == Orientation::positive);
    CHECK(cd.alpha(2).point == Rat(5, 8));       // b7
    CHECK(cd.alpha(2).orient == Orientation::negative);
    CHECK(cd.alpha(3).point == Rat(13, 16));     // b8
    CHECK(cd.alpha(3).orient == Orientation::positive);
    CHECK(cd.alpha(4).point == Rat(1));
    CHECK(cd.alpha(4).orient == Orientation::negative);

    REQUIRE(cd.m() == 5);
    CHECK(cd.beta(1).point == Rat(-1, 5));       // b4
    CHECK(cd.beta(1).orient == Orientation::negative);
    CHECK(cd.beta(2).point == Rat(-2, 5));       // b3
    CHECK(cd.beta(2).orient == Orientation::positive);
    CHECK(cd.beta(3).point == Rat(-3, 5));       // b2
    CHECK(cd.beta(3).orient == Orientation::negative);
    CHECK(cd.beta(4).point == Rat(-4, 5));       // b1
    CHECK(cd.beta(4).orient == Orientation::positive);
    CHECK(cd.beta(5).point == Rat(-1));
    CHECK(cd.beta(5).orient == Orientation::negative);
}

TEST_CASE("ex4: <b1, b7> is a negative radial departure of f2") {
    CHECK(radial_departure_through(ex4_f2(), Rat(-4, 5), Rat(5, 8)) ==
          Orientation::negative);
}

TEST_CASE("ex4: B1 = {alpha_2}, and alpha_4 = 1 is excluded") {
    auto b1 = compute_B1(P(ex4_f2()));
    REQUIRE(b1.size() == 1);
    CHECK(b1[0].first == 2);
    // the recorded witness x makes <x, alpha_2> a verified negative departure
    CHECK(radial_departure_through(ex4_f2(), b1[0].second, Rat(5, 8)) ==
          Orientation::negative);
}

TEST_CASE("ex4: all negative radial departures of f3 = t3 live in the stated bands") {
    PLMap f3 = ex4_f3();
    for (const auto& w : representative_witnesses(P(f3))) {
        if (w.orient != Orientation::negative) continue;
        Rat v1 = f3(w.x1), v2 = f3(w.x2);
        CHECK(v1 > Rat(1, 4));   // f3(w1) in (b5, b6]
        CHECK(v1 <= Rat(3, 8));
        CHECK(v2 >= Rat(-3, 5)); // f3(w2) in [b2, b4)
        CHECK(v2 < Rat(-1, 5));
    }
    // and there is at least one negative radial departure of f3
    CHECK(radial_departure_exists(P(f3), Orientation::negative).has_value());
}

TEST_CASE("ex4: bridged factor has B1 = {2}, B2 = {3} and certifies") {
    auto bf = build_bridged_s(P(ex4_f1()), P(ex4_f2()), P(ex4_f3()));

    REQUIRE(bf.b1.size() == 1);
    CHECK(bf.b1[0].i == 2);
    CHECK(bf.b1[0].dom_lo == Rat(1, 4));    // [alpha_1, alpha_3]
    CHECK(bf.b1[0].dom_hi == Rat(13, 16));

    REQUIRE(bf.b2.size() == 1);
    CHECK(bf.b2[0].j == 3);
    CHECK(bf.b2[0].dom_lo == Rat(-4, 5));   // [beta_4, beta_2]
    CHECK(bf.b2[0].dom_hi == Rat(-2, 5));
    CHECK(bf.b2[0].partner == 2);

    // the (a)-(e) witnesses land in the designed ranges
    CHECK(bf.b2[0].x1 >= Rat(-3, 5));
    CHECK(bf.b2[0].x1 < Rat(-2, 5));
    CHECK(bf.b2[0].x2 > Rat(1, 4));
    CHECK(bf.b2[0].x2 <= Rat(3, 8));
    CHECK(ex4_f3()(bf.b2[0].w1) == bf.b2[0].x2);
    CHECK(ex4_f3()(bf.b2[0].w2) == bf.b2[0].x1);

    CHECK(bf.report.all_pass());

    PLMap f1f2 = compose(ex4_f1(), ex4_f2());
    CHECK(compose(bf.t1, bf.s_tilde) == f1f2);
    PLMap rew = compose(bf.s_tilde, bf.t3);
    CHECK_FALSE(radial_departure_exists(P(rew), Orientation::negative).has_value());

    // independent grid-oracle agreement on the negative-departure absence
    for (const auto& w : oracle_radial_departures(P(rew), GridSpec{16}))
        CHECK(w.orient == Orientation::positive);
}

TEST_CASE("ex4: mutation — skipping the B1 pass breaks the certificate") {
    PLMap f1 = ex4_f1(), f2 = ex4_f2(), f3 = ex4_f3();
    PLMap t1 = radial_contour_factor(P(f1));
    PLMap t3 = radial_contour_factor(P(f3));
    PLMap s = compose(meandering_lift(P(f1)), f2);
    PLMap f1f2 = compose(f1, f2);

    BridgedFactor mutant;
    mutant.s_tilde = s; // no bridging applied at all
    mutant.base = s;
    mutant.t1 = t1;
    mutant.t3 = t3;
    mutant.contour = contour_points(P(s));

    auto rep = verify_bridged(mutant, t1, f1f2, t3);
    CHECK_FALSE(rep.all_pass());
    bool neg_check_failed = false;
    std::string witness;
    for (const auto& c : rep.checks)
        if (c.name == "s_tilde o t3 has no negative radial departures" && !c.pass) {
            neg_check_failed = true;
            witness = c.detail;
        }
    CHECK(neg_check_failed);
    CHECK_FALSE(witness.empty());
}
