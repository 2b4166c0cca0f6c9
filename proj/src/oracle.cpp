#include "zigzag/oracle.hpp"

#include <algorithm>

namespace zigzag {

std::vector<Rat> make_grid(const PLMap& f, const GridSpec& g, const Rat& lo, const Rat& hi) {
    std::vector<Rat> xs;
    // multiples of 1/resolution
    Rat step(1, g.resolution);
    for (long k = -g.resolution; k <= g.resolution; ++k) {
        Rat x = Rat(k) * step;
        if (lo <= x && x <= hi) xs.push_back(x);
    }
    for (const auto& p : f.breakpoints())
        if (lo <= p.x && p.x <= hi) xs.push_back(p.x);
    // preimages of every breakpoint value: record runs start and stop here
    for (const auto& p : f.breakpoints())
        for (const auto& x : preimages(f, p.y))
            if (lo <= x && x <= hi) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    // midpoints, so every half-open record run holds at least one grid point
    std::vector<Rat> out;
    out.reserve(xs.size() * 2);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out.push_back(midpoint(xs[i - 1], xs[i]));
        out.push_back(xs[i]);
    }
    return out;
}

namespace {

/* Does f attain the value v somewhere on [lo, hi)? Exact piece walk; a flat
   piece at v counts throughout its length, not just at its endpoints. */
bool attained_on(const PLMap& f, const Rat& v, const Rat& lo, const Rat& hi,
                 bool open_left, bool open_right) {
    const auto& pts = f.breakpoints();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Rat a = max(pts[i].x, lo), b = min(pts[i + 1].x, hi);
        if (!(a < b) && !(a == b && !(open_left && a == lo) && !(open_right && b == hi)))
            continue;
        if (a > b) continue;
        Rat va = f(a), vb = f(b);
        if (va == vb) {
            if (v != va) continue;
            // flat at v on [a, b]; any interior point witnesses attainment
            if (a < b) return true;
            if (!(open_left && a == lo) && !(open_right && a == hi)) return true;
            continue;
        }
        if (v < min(va, vb) || v > max(va, vb)) continue;
        Rat t = a + (b - a) * (v - va) / (vb - va);
        if (open_left && t == lo) continue;
        if (open_right && t == hi) continue;
        return true;
    }
    return false;
}

/* Literal definition check with no shared code with the contour module:
   x > 0 is a right departure iff f(x) is not attained on [0,x); mirrored on
   the left. */
bool grid_is_departure(const PLMap& f, const Rat& x) {
    Rat v = f(x);
    if (x > Rat(0)) return !attained_on(f, v, Rat(0), x, false, true);
    if (x < Rat(0)) return !attained_on(f, v, x, Rat(0), true, false);
    return false;
}

} // namespace

std::vector<RadialDepartureWitness> oracle_radial_departures(const PointedPLMap& f,
                                                             const GridSpec& g) {
    const PLMap& m = f.map();
    auto grid = make_grid(m, g, Rat(-1), Rat(1));
    std::vector<Rat> val;
    val.reserve(grid.size());
    for (const auto& x : grid) val.push_back(m(x));

    std::size_t zero_idx = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i].is_zero()) zero_idx = i;

    std::vector<RadialDepartureWitness> out;
    for (std::size_t i = 0; i < zero_idx; ++i) {
        // Interior extremes of the candidate pair, maintained incrementally.
        // f(0) = 0 is interior to every pair that gets checked (x1 < 0 < x2),
        // so seeding with the zero-point value is sound.
        Rat imin = val[zero_idx], imax = val[zero_idx];
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            if (j > i + 1) {
                if (val[j - 1] < imin) imin = val[j - 1];
                if (val[j - 1] > imax) imax = val[j - 1];
            }
            if (grid[j] <= Rat(0)) continue;
            const Rat &v1 = val[i], &v2 = val[j];
            bool interior = j > i + 1;
            if (v1 < v2) {
                bool ok = interior ? (v1 < imin && imax < v2) : true;
                if (ok && v1 != v2) out.push_back({grid[i], grid[j], Orientation::positive});
            } else if (v2 < v1) {
                bool ok = interior ? (v2 < imin && imax < v1) : true;
                if (ok) out.push_back({grid[i], grid[j], Orientation::negative});
            }
        }
    }
    return out;
}

ContourData oracle_contour_points(const PointedPLMap& f, const GridSpec& g) {
    const PLMap& m = f.map();

    auto one_side = [&](Side side) {
        Rat lo = side == Side::right ? Rat(0) : Rat(-1);
        Rat hi = side == Side::right ? Rat(1) : Rat(0);
        auto [ilo, ihi] = image(m, lo, hi);
        if (ilo == ihi)
            throw DegenerateSideError("oracle_contour_points: constant side");
        auto grid = make_grid(m, g, lo, hi);
        struct Dep {
            Rat x;
            Orientation o;
        };
        std::vector<Dep> deps;
        for (const auto& x : grid)
            if (grid_is_departure(m, x))
                deps.push_back({x, m(x) > Rat(0) ? Orientation::positive
                                                 : Orientation::negative});
        // sweep order: away from 0
        if (side == Side::left) std::reverse(deps.begin(), deps.end());

        std::vector<ContourPoint> out;
        for (std::size_t a = 0; a < deps.size(); ++a) {
            bool ok = true;
            for (std::size_t x2 = a + 1; x2 < deps.size() && ok; ++x2) {
                if (deps[x2].o == deps[a].o) {
                    bool opposite_before = false;
                    for (std::size_t y = a + 1; y <= x2 && !opposite_before; ++y)
                        if (deps[y].o != deps[a].o) opposite_before = true;
                    if (!opposite_before) ok = false;
                }
            }
            if (ok) out.push_back({deps[a].x, m(deps[a].x), deps[a].o});
        }
        return out;
    };

    ContourData cd;
    cd.right.push_back({Rat(0), Rat(0), Orientation::positive});
    cd.left.push_back({Rat(0), Rat(0), Orientation::positive});
    for (auto& c : one_side(Side::right)) cd.right.push_back(c);
    for (auto& c : one_side(Side::left)) cd.left.push_back(c);
    return cd;
}

std::optional<Rat> oracle_factorization_mismatch(const PLMap& t, const PLMap& s,
                                                 const PLMap& f) {
    std::vector<Rat> xs;
    for (const auto& p : s.breakpoints()) xs.push_back(p.x);
    for (const auto& p : f.breakpoints()) xs.push_back(p.x);
    for (const auto& bp : t.breakpoints())
        for (const auto& x : preimages(s, bp.x)) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (const auto& x : xs)
        if (t(s(x)) != f(x)) return x;
    return std::nullopt;
}

bool oracle_factorization(const PLMap& t, const PLMap& s, const PLMap& f) {
    return !oracle_factorization_mismatch(t, s, f).has_value();
}

} // namespace zigzag
