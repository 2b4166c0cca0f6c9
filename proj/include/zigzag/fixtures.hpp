#pragma once

#include "zigzag/plmap.hpp"

namespace zigzag::fixtures {

inline PLMap mk(std::initializer_list<std::pair<Rat, Rat>> pts, Rat clo = Rat(-1),
                Rat chi = Rat(1)) {
    std::vector<Breakpoint> v;
    for (const auto& [x, y] : pts) v.push_back({x, y});
    return PLMap(std::move(v), clo, chi);
}

/* The standing small examples. */
inline PLMap id_map() { return mk({{Rat(-1), Rat(-1)}, {Rat(1), Rat(1)}}); }

inline PLMap w_map() {
    return mk({{Rat(-1), Rat(-1)}, {Rat(0), Rat(0)}, {Rat(1, 2), Rat(1)}, {Rat(1), Rat(-1, 2)}});
}

inline PLMap m_map() {
    return mk({{Rat(-1), Rat(-1)},
               {Rat(0), Rat(0)},
               {Rat(1, 4), Rat(1, 2)},
               {Rat(3, 8), Rat(1, 4)},
               {Rat(1, 2), Rat(1)},
               {Rat(1), Rat(-1, 2)}});
}

inline PLMap z_map() {
    return mk({{Rat(-1), Rat(1)},
               {Rat(-1, 2), Rat(1, 4)},
               {Rat(0), Rat(0)},
               {Rat(1, 4), Rat(-1, 2)},
               {Rat(1), Rat(1)}});
}

inline PLMap tent_map() {
    return mk({{Rat(-1), Rat(-1)}, {Rat(0), Rat(1)}, {Rat(1), Rat(-1)}});
}

/* A frozen three-map instance of the bridged-factor construction with the
   full alpha/beta structure: f1 and f3 are their own radial contour factors,
   the radial contour factors survive composition on both consecutive pairs,
   B1 = {alpha_2} and B2 = {beta_3}. The coordinates were chosen by hand and
   every structural fact about them is re-verified in tests/test_ex4.cpp. */
inline PLMap ex4_f1() {
    return mk({{Rat(-1), Rat(7, 8)},
               {Rat(-5, 6), Rat(-3, 4)},
               {Rat(-2, 3), Rat(5, 8)},
               {Rat(-1, 2), Rat(-1, 2)},
               {Rat(-1, 3), Rat(1, 2)},
               {Rat(-1, 6), Rat(-1, 4)},
               {Rat(1, 3), Rat(1, 2)},
               {Rat(2, 3), Rat(-1, 2)},
               {Rat(1), Rat(1)}});
}

inline PLMap ex4_f2() {
    return mk({{Rat(-1), Rat(-1)},
               {Rat(-4, 5), Rat(11, 12)},
               {Rat(-3, 5), Rat(-1, 2)},
               {Rat(-2, 5), Rat(1, 3)},
               {Rat(-1, 5), Rat(-1, 6)},
               {Rat(0), Rat(0)},
               {Rat(1, 4), Rat(1, 3)},
               {Rat(5, 8), Rat(-8, 15)},
               {Rat(13, 16), Rat(1)},
               {Rat(1), Rat(-3, 5)}});
}

inline PLMap ex4_f3() {
    return mk({{Rat(-1), Rat(-1)},
               {Rat(-2, 3), Rat(3, 8)},
               {Rat(-1, 3), Rat(-1, 5)},
               {Rat(0), Rat(0)},
               {Rat(1, 3), Rat(1, 4)},
               {Rat(2, 3), Rat(-3, 5)},
               {Rat(1), Rat(1)}});
}

} // namespace zigzag::fixtures
