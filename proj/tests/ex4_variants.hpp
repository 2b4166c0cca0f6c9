#pragma once

#include "zigzag/contour.hpp"
#include "zigzag/fixtures.hpp"
#include "zigzag/plmap.hpp"

namespace zigzag::testgen {

/* Parametrized family around the frozen three-map fixture. Varying the two
   deep right values of the middle map and all the breakpoint positions keeps
   the contour pattern intact for a wide parameter window; every emitted
   triple is re-checked against the contour-survival hypotheses before use,
   so the family is a generator of certified instances, not a proof. */
struct Ex4Params {
    Rat n1 = Rat(-8, 15); // in (-35/54, -1/2), the first negative right value
    Rat n2 = Rat(-3, 5);  // in (-35/54, n1)
    Rat r5 = Rat(1, 4), r7 = Rat(5, 8), r8 = Rat(13, 16); // right positions
    Rat p4 = Rat(-1, 5), p3 = Rat(-2, 5), p2 = Rat(-3, 5), p1 = Rat(-4, 5);
    Rat t_top = Rat(0); // f3 left peak; 0 means "use the zero crossing b6"
};

inline PLMap ex4_variant_f2(const Ex4Params& q) {
    return fixtures::mk({{Rat(-1), Rat(-1)},
                         {q.p1, Rat(11, 12)},
                         {q.p2, Rat(-1, 2)},
                         {q.p3, Rat(1, 3)},
                         {q.p4, Rat(-1, 6)},
                         {Rat(0), Rat(0)},
                         {q.r5, Rat(1, 3)},
                         {q.r7, q.n1},
                         {q.r8, Rat(1)},
                         {Rat(1), q.n2}});
}

inline Rat ex4_variant_b6(const Ex4Params& q) {
    // zero crossing of f2 after its first right peak
    PLMap f2 = ex4_variant_f2(q);
    for (const auto& x : preimages(f2, Rat(0)))
        if (x > q.r5) return x;
    throw InvariantViolation("ex4 variant: no zero crossing after the peak");
}

inline PLMap ex4_variant_f3(const Ex4Params& q) {
    Rat b6 = ex4_variant_b6(q);
    Rat top = q.t_top.is_zero() ? b6 : q.t_top;
    return fixtures::mk({{Rat(-1), Rat(-1)},
                         {Rat(-2, 3), top},
                         {Rat(-1, 3), q.p4},
                         {Rat(0), Rat(0)},
                         {Rat(1, 3), q.r5},
                         {Rat(2, 3), q.p2},
                         {Rat(1), Rat(1)}});
}

struct Ex4Triple {
    PointedPLMap f1, f2, f3;
};

/* Builds the triple and verifies both contour-survival hypotheses exactly;
   returns nothing when a parameter choice breaks them. */
inline std::optional<Ex4Triple> ex4_triple(const Ex4Params& q) {
    try {
        PointedPLMap f1{fixtures::ex4_f1()};
        PointedPLMap f2{ex4_variant_f2(q)};
        PointedPLMap f3{ex4_variant_f3(q)};
        if (!(radial_contour_factor(PointedPLMap{compose(f1.map(), f2.map())}) ==
              radial_contour_factor(f1)))
            return std::nullopt;
        if (!(radial_contour_factor(PointedPLMap{compose(f2.map(), f3.map())}) ==
              radial_contour_factor(f2)))
            return std::nullopt;
        return Ex4Triple{f1, f2, f3};
    } catch (const Error&) {
        return std::nullopt;
    }
}

/* Deterministic grid of certified variants. */
inline std::vector<Ex4Triple> ex4_family(std::size_t want) {
    std::vector<Ex4Triple> out;
    std::vector<Rat> n1s = {Rat(-8, 15), Rat(-13, 25), Rat(-27, 50), Rat(-5, 9),
                            Rat(-14, 25), Rat(-31, 54)};
    std::vector<Rat> n2s = {Rat(-3, 5),  Rat(-31, 50), Rat(-16, 27), Rat(-32, 54),
                            Rat(-29, 50), Rat(-7, 12)};
    std::vector<std::array<Rat, 3>> rights = {
        {Rat(1, 4), Rat(5, 8), Rat(13, 16)},
        {Rat(1, 5), Rat(3, 5), Rat(4, 5)},
        {Rat(3, 10), Rat(13, 20), Rat(17, 20)},
        {Rat(1, 4), Rat(1, 2), Rat(3, 4)},
    };
    std::vector<std::array<Rat, 4>> lefts = {
        {Rat(-1, 5), Rat(-2, 5), Rat(-3, 5), Rat(-4, 5)},
        {Rat(-1, 6), Rat(-1, 3), Rat(-1, 2), Rat(-5, 6)},
        {Rat(-1, 4), Rat(-2, 5), Rat(-11, 20), Rat(-3, 4)},
    };
    for (const auto& n1 : n1s)
        for (const auto& n2 : n2s) {
            if (!(n2 < n1)) continue;
            for (const auto& r : rights)
                for (const auto& l : lefts) {
                    Ex4Params q;
                    q.n1 = n1;
                    q.n2 = n2;
                    q.r5 = r[0];
                    q.r7 = r[1];
                    q.r8 = r[2];
                    q.p4 = l[0];
                    q.p3 = l[1];
                    q.p2 = l[2];
                    q.p1 = l[3];
                    if (auto t = ex4_triple(q)) {
                        out.push_back(*t);
                        if (out.size() >= want) return out;
                    }
                }
        }
    return out;
}

} // namespace zigzag::testgen
