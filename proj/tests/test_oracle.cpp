#include <doctest.h>

#include <random>

#include "zigzag/fixtures.hpp"
#include "zigzag/oracle.hpp"
#include "gen.hpp"

using namespace zigzag;
using namespace zigzag::fixtures;

namespace {
PointedPLMap P(const PLMap& m) { return PointedPLMap{m}; }

bool oracle_has(const std::vector<RadialDepartureWitness>& ws, Orientation o) {
    for (const auto& w : ws)
        if (w.orient == o) return true;
    return false;
}
} // namespace

TEST_CASE("oracle vs decision procedure on fixtures") {
    GridSpec g{16};
    auto wz = oracle_radial_departures(P(z_map()), g);
    CHECK(oracle_has(wz, Orientation::negative));
    CHECK(radial_departure_exists(P(z_map()), Orientation::negative).has_value());

    auto ww = oracle_radial_departures(P(w_map()), g);
    CHECK_FALSE(oracle_has(ww, Orientation::negative));
    CHECK(oracle_has(ww, Orientation::positive));

    auto wi = oracle_radial_departures(P(id_map()), g);
    CHECK(oracle_has(wi, Orientation::positive));
    CHECK_FALSE(oracle_has(wi, Orientation::negative));
}

TEST_CASE("oracle contour points equal contour module output") {
    for (const PLMap& m : {id_map(), w_map(), m_map(), z_map()}) {
        auto a = contour_points(P(m));
        auto b = oracle_contour_points(P(m));
        REQUIRE(a.right.size() == b.right.size());
        REQUIRE(a.left.size() == b.left.size());
        for (std::size_t i = 0; i < a.right.size(); ++i) {
            CHECK(a.right[i].point == b.right[i].point);
            CHECK(a.right[i].value == b.right[i].value);
        }
        for (std::size_t j = 0; j < a.left.size(); ++j) {
            CHECK(a.left[j].point == b.left[j].point);
            CHECK(a.left[j].value == b.left[j].value);
        }
    }
}

TEST_CASE("oracle factorization") {
    CHECK(oracle_factorization(w_map(), meandering_lift(P(m_map())), m_map()));
    CHECK(oracle_factorization(id_map(), w_map(), w_map()));

    // mutate the lift: first disagreement point reported
    PLMap s = meandering_lift(P(m_map()));
    auto pts = s.breakpoints();
    pts[2].y = pts[2].y + Rat(1, 64);
    PLMap bad(pts);
    auto mis = oracle_factorization_mismatch(w_map(), bad, m_map());
    REQUIRE(mis.has_value());
    CHECK(w_map()(bad(*mis)) != m_map()(*mis));
}

TEST_CASE("flat pieces adjacent to zero: no phantom departures") {
    // canonicalization merges the flat pieces across 0 into one segment, so
    // attainment tests must see flat interiors, not just their endpoints
    PLMap m = mk({{Rat(-1), Rat(-1, 2)},
                  {Rat(-1, 2), Rat(0)},
                  {Rat(0), Rat(0)},
                  {Rat(1, 2), Rat(0)},
                  {Rat(1), Rat(1)}});
    PointedPLMap f{m};
    // f(1/2) = 0 is attained throughout [0, 1/2), so 1/2 is not a departure
    CHECK_FALSE(is_departure(f, Rat(1, 2)));
    auto a = contour_points(f);
    auto b = oracle_contour_points(f, GridSpec{8});
    REQUIRE(a.n() == 1);
    CHECK(a.alpha(1).point == Rat(1));
    REQUIRE(b.right.size() == 2);
    CHECK(b.right[1].point == Rat(1));
    REQUIRE(a.m() == 1);
    CHECK(a.beta(1).point == Rat(-1));
    REQUIRE(b.left.size() == 2);
    CHECK(b.left[1].point == Rat(-1));
}

TEST_CASE("oracle/decision agreement on tie-heavy maps") {
    // tiny denominators force repeated values and flat pieces, the regime
    // where strict/non-strict record boundaries earn their keep
    std::mt19937 rng(77);
    auto tie_rat = [&](long maxden) {
        std::uniform_int_distribution<long> den(1, maxden);
        long d = den(rng);
        std::uniform_int_distribution<long> num(-d, d);
        return Rat(num(rng), d);
    };
    int built = 0;
    for (int trial = 0; trial < 600 && built < 250; ++trial) {
        std::vector<Rat> xs = {Rat(-1), Rat(0), Rat(1)};
        std::uniform_int_distribution<int> cnt(1, 4);
        for (int i = 0, k = cnt(rng); i < k; ++i) {
            Rat x = tie_rat(4);
            if (x != Rat(-1) && x != Rat(1) && !x.is_zero()) xs.push_back(x);
        }
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        std::vector<Breakpoint> pts;
        for (const auto& x : xs) pts.push_back({x, x.is_zero() ? Rat(0) : tie_rat(3)});
        PointedPLMap f{PLMap(pts)};
        if (!f.left_nonconstant() || !f.right_nonconstant()) continue;
        ++built;
        auto a = contour_points(f);
        auto b = oracle_contour_points(f, GridSpec{8});
        REQUIRE(a.right.size() == b.right.size());
        REQUIRE(a.left.size() == b.left.size());
        for (std::size_t i = 0; i < a.right.size(); ++i)
            CHECK(a.right[i].point == b.right[i].point);
        for (std::size_t j = 0; j < a.left.size(); ++j)
            CHECK(a.left[j].point == b.left[j].point);
        auto ws = oracle_radial_departures(f, GridSpec{8});
        for (Orientation o : {Orientation::positive, Orientation::negative})
            CHECK(oracle_has(ws, o) == radial_departure_exists(f, o).has_value());
        PLMap t = radial_contour_factor(f);
        PLMap s = meandering_lift(f);
        CHECK(compose(t, s) == f.map());
    }
    CHECK(built >= 250);
}

TEST_CASE("oracle/decision agreement on random maps, two resolutions") {
    testgen::MapGen gen(101);
    for (int trial = 0; trial < 25; ++trial) {
        PointedPLMap f = gen.pointed(4, 16);
        for (long d : {12L, 24L}) {
            auto ws = oracle_radial_departures(f, GridSpec{d});
            for (Orientation o : {Orientation::positive, Orientation::negative})
                CHECK(oracle_has(ws, o) == radial_departure_exists(f, o).has_value());
        }
        auto a = contour_points(f);
        auto b = oracle_contour_points(f);
        REQUIRE(a.right.size() == b.right.size());
        REQUIRE(a.left.size() == b.left.size());
        for (std::size_t i = 0; i < a.right.size(); ++i)
            CHECK(a.right[i].point == b.right[i].point);
        for (std::size_t j = 0; j < a.left.size(); ++j)
            CHECK(a.left[j].point == b.left[j].point);
    }
}
