#include "zigzag/contour.hpp"

#include <algorithm>
#include <map>

namespace zigzag {

namespace {

/* Record runs of a map g on [0,D] with records measured from g(0), i.e. the
   one-sided departure set {x > 0 : g(x) not in g([0,x))} as maximal
   half-open runs (lo, hi]. On each run g is strictly monotone. */
std::vector<DepartureSegment> record_segments(const PLMap& g) {
    const auto& pts = g.breakpoints();
    Rat runmax = pts.front().y;
    Rat runmin = runmax;
    std::vector<DepartureSegment> segs;

    auto push = [&](Rat lo, Rat hi, Orientation o, Rat lo_v, Rat hi_v) {
        if (!segs.empty() && segs.back().orient == o && segs.back().hi == lo) {
            segs.back().hi = hi;
            segs.back().hi_value = hi_v;
        } else {
            segs.push_back({lo, hi, o, Side::right, lo_v, hi_v});
        }
    };

    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Rat &a = pts[i].x, &b = pts[i + 1].x;
        const Rat &va = pts[i].y, &vb = pts[i + 1].y;
        if (vb > va && vb > runmax) {
            Rat x0 = (va == runmax) ? a : a + (b - a) * (runmax - va) / (vb - va);
            push(x0, b, Orientation::positive, runmax, vb);
        } else if (vb < va && vb < runmin) {
            Rat x0 = (va == runmin) ? a : a + (b - a) * (runmin - va) / (vb - va);
            push(x0, b, Orientation::negative, runmin, vb);
        }
        if (vb > runmax) runmax = vb;
        if (vb < runmin) runmin = vb;
    }
    return segs;
}

std::vector<DepartureSegment> right_segments(const PLMap& f) {
    return record_segments(restrict(f, Rat(0), Rat(1)));
}

/* Left segments in original coordinates: sets [lo, hi) with the record
   extreme attained at lo. Ordered by increasing |position|, i.e. the run
   nearest 0 first, matching the beta enumeration. */
std::vector<DepartureSegment> left_segments(const PLMap& f) {
    PLMap g = reflect(restrict(f, Rat(-1), Rat(0)));
    auto refl = record_segments(g);
    std::vector<DepartureSegment> out;
    out.reserve(refl.size());
    for (const auto& s : refl)
        out.push_back({-s.hi, -s.lo, s.orient, Side::left, s.hi_value, s.lo_value});
    return out;
}

std::vector<DepartureSegment> side_segments(const PLMap& f, Side side) {
    return side == Side::right ? right_segments(f) : left_segments(f);
}

std::vector<DepartureSegment> side_segments_or_empty(const PLMap& f, Side side) {
    auto [lo, hi] =
        side == Side::right ? image(f, Rat(0), Rat(1)) : image(f, Rat(-1), Rat(0));
    if (lo == hi) return {};
    return side_segments(f, side);
}

/* Contour candidates are exactly the record-run extremes; a run extreme is a
   contour point iff every later same-orientation run is preceded by an
   opposite run (checked literally below). Runs here are in sweep order:
   right side by increasing x, left side by the order left_segments returns
   reversed... we keep each side in its own sweep order via this helper. */
std::vector<std::size_t> contour_indices(const std::vector<DepartureSegment>& sweep) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < sweep.size(); ++j) {
        bool ok = true;
        for (std::size_t k = j + 1; k < sweep.size() && ok; ++k) {
            if (sweep[k].orient != sweep[j].orient) continue;
            bool opposite_between = false;
            for (std::size_t o = j + 1; o < k; ++o)
                if (sweep[o].orient != sweep[j].orient) opposite_between = true;
            if (!opposite_between) ok = false;
        }
        if (ok) out.push_back(j);
    }
    return out;
}

Rat seg_solve(const PLMap& f, const DepartureSegment& s, const Rat& value) {
    // unique x in the run with f(x) = value (f is strictly monotone on a run,
    // but a run may span several linear pieces, so solve through preimages)
    for (const auto& x : preimages(f, value))
        if (s.lo <= x && x <= s.hi) return x;
    throw InvariantViolation("seg_solve: value " + value.str() + " not attained in run");
}

} // namespace

std::vector<DepartureSegment> departures(const PointedPLMap& f, Side side) {
    bool nonconst = side == Side::right ? f.right_nonconstant() : f.left_nonconstant();
    if (!nonconst)
        throw DegenerateSideError(std::string("departures: ") + to_string(side) +
                                  " side of map is constant");
    return side_segments(f.map(), side);
}

ContourData contour_points(const PointedPLMap& f) {
    ContourData cd;
    cd.right.push_back({Rat(0), Rat(0), Orientation::positive});
    cd.left.push_back({Rat(0), Rat(0), Orientation::positive});

    auto rs = departures(f, Side::right);
    for (auto j : contour_indices(rs))
        cd.right.push_back({rs[j].extreme_point(), rs[j].extreme_value(), rs[j].orient});

    // left runs are produced nearest-0-first; that IS the beta sweep order
    auto ls = departures(f, Side::left);
    for (auto j : contour_indices(ls))
        cd.left.push_back({ls[j].extreme_point(), ls[j].extreme_value(), ls[j].orient});
    return cd;
}

PLMap radial_contour_factor(const PointedPLMap& f) {
    ContourData cd = contour_points(f);
    std::size_t n = cd.n(), m = cd.m();
    std::vector<Breakpoint> pts;
    for (std::size_t j = m; j >= 1; --j)
        pts.push_back({Rat(-(long)j, (long)m), cd.beta(j).value});
    pts.push_back({Rat(0), Rat(0)});
    for (std::size_t i = 1; i <= n; ++i)
        pts.push_back({Rat((long)i, (long)n), cd.alpha(i).value});
    return canonicalize(PLMap(std::move(pts)));
}

namespace {

/* Minimal lift of f through the one-sided zig-zag t, both on [0,1] with
   value 0 at 0. Branch-walking dynamic program over the partition refined
   by the node values of t; picks the pointwise-lowest co-reachable branch. */
PLMap lift_through(const PLMap& t, const PLMap& f) {
    const auto& nodes = t.breakpoints();
    std::size_t n = nodes.size() - 1; // branch count
    if (n == 0) throw DegenerateSideError("lift_through: contour factor side is a point");

    std::vector<Rat> part;
    for (const auto& p : f.breakpoints()) part.push_back(p.x);
    for (const auto& nd : nodes)
        for (const auto& x : preimages(f, nd.y)) part.push_back(x);
    std::sort(part.begin(), part.end());
    part.erase(std::unique(part.begin(), part.end()), part.end());

    std::size_t steps = part.size() - 1;
    auto branch_lo = [&](std::size_t b) { return min(nodes[b].y, nodes[b + 1].y); };
    auto branch_hi = [&](std::size_t b) { return max(nodes[b].y, nodes[b + 1].y); };

    std::vector<Rat> fv;
    fv.reserve(part.size());
    for (const auto& x : part) fv.push_back(f(x));

    std::vector<std::vector<char>> feas(steps, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < steps; ++i) {
        Rat lo = min(fv[i], fv[i + 1]), hi = max(fv[i], fv[i + 1]);
        for (std::size_t b = 0; b < n; ++b)
            feas[i][b] = (branch_lo(b) <= lo && hi <= branch_hi(b)) ? 1 : 0;
    }

    // transition i -> i+1 from branch b to b'
    auto can_move = [&](std::size_t i, std::size_t b, std::size_t b2) {
        if (b == b2) return true;
        std::size_t shared = std::max(b, b2); // node between the two branches
        return fv[i + 1] == nodes[shared].y;
    };

    std::vector<std::vector<char>> co(steps, std::vector<char>(n, 0));
    for (std::size_t b = 0; b < n; ++b) co[steps - 1][b] = feas[steps - 1][b];
    for (std::size_t i = steps - 1; i-- > 0;) {
        for (std::size_t b = 0; b < n; ++b) {
            if (!feas[i][b]) continue;
            for (std::size_t b2 = (b == 0 ? 0 : b - 1); b2 <= std::min(b + 1, n - 1); ++b2)
                if (co[i + 1][b2] && can_move(i, b, b2)) {
                    co[i][b] = 1;
                    break;
                }
        }
    }

    if (!co[0][0])
        throw InvariantViolation("lift_through: no lift exists; the factor is not a "
                                 "contour factor of the map");

    std::vector<std::size_t> branch(steps);
    branch[0] = 0;
    for (std::size_t i = 0; i + 1 < steps; ++i) {
        std::size_t b = branch[i];
        bool placed = false;
        for (std::size_t b2 = (b == 0 ? 0 : b - 1); b2 <= std::min(b + 1, n - 1); ++b2) {
            if (co[i + 1][b2] && can_move(i, b, b2)) {
                branch[i + 1] = b2;
                placed = true;
                break;
            }
        }
        if (!placed) throw InvariantViolation("lift_through: walk dead-ended");
    }

    auto solve_in_branch = [&](std::size_t b, const Rat& v) {
        const Rat &s0 = nodes[b].x, &s1 = nodes[b + 1].x;
        const Rat &t0 = nodes[b].y, &t1 = nodes[b + 1].y;
        return s0 + (s1 - s0) * (v - t0) / (t1 - t0);
    };

    std::vector<Breakpoint> out;
    out.push_back({part[0], Rat(0)});
    for (std::size_t i = 0; i < steps; ++i) {
        Rat sigma = solve_in_branch(branch[i], fv[i + 1]);
        out.push_back({part[i + 1], sigma});
    }
    PLMap s = canonicalize(PLMap(std::move(out), Rat(0), Rat(1)));
    if (!same_function(compose(t, s), f))
        throw InvariantViolation("lift_through: factorization check failed");
    return s;
}

} // namespace

PLMap meandering_lift(const PointedPLMap& f) {
    if (!f.left_nonconstant() || !f.right_nonconstant())
        throw DegenerateSideError("meandering_lift: constant side");
    PLMap t = radial_contour_factor(f);

    PLMap s_right = lift_through(restrict(t, Rat(0), Rat(1)), restrict(f.map(), Rat(0), Rat(1)));
    PLMap s_left_refl =
        lift_through(reflect(restrict(t, Rat(-1), Rat(0))), reflect(restrict(f.map(), Rat(-1), Rat(0))));

    std::vector<Breakpoint> pts;
    const auto& lb = s_left_refl.breakpoints();
    for (auto it = lb.rbegin(); it != lb.rend(); ++it) pts.push_back({-it->x, -it->y});
    const auto& rb = s_right.breakpoints();
    for (std::size_t i = 1; i < rb.size(); ++i) pts.push_back(rb[i]);
    PLMap s = canonicalize(PLMap(std::move(pts)));

    if (!same_function(compose(t, s), f.map()))
        throw InvariantViolation("meandering_lift: t o s != f");
    return s;
}

std::optional<Orientation> radial_departure_through(const PLMap& f, const Rat& x1,
                                                    const Rat& x2) {
    if (!(Rat(-1) <= x1 && x1 < Rat(0) && Rat(0) < x2 && x2 <= Rat(1)))
        throw DomainError("radial_departure_through: need -1 <= x1 < 0 < x2 <= 1");
    Rat v1 = f(x1), v2 = f(x2);
    if (v1 == v2) return std::nullopt;
    Rat lo = min(v1, v2), hi = max(v1, v2);
    for (const auto& p : f.breakpoints()) {
        if (x1 < p.x && p.x < x2) {
            if (!(lo < p.y && p.y < hi)) return std::nullopt;
        }
    }
    return v1 < v2 ? Orientation::positive : Orientation::negative;
}

namespace {

struct PairScan {
    // feasible witness coordinate intervals for one (SL, SR) pair
    Rat x1_lo, x1_cut; // x1 in [x1_lo, x1_cut)
    Rat x2_pre, x2_hi; // x2 in (x2_pre, x2_hi]
};

/* For one (left run, right run) pair of the given orientation, the exact
   set of witness pairs, or nullopt when the pair is infeasible. For a
   positive departure SL is a negative left run and SR a positive right run;
   mirrored for negative. */
std::optional<PairScan> scan_pair(const PLMap& f, const DepartureSegment& SL,
                                  const DepartureSegment& SR, Orientation want) {
    if (want == Orientation::positive) {
        Rat A = image(f, SL.lo, Rat(0)).second;  // sup f on (x1, 0], constant on SL
        Rat m = image(f, Rat(0), SR.hi).first;   // inf f on [0, x2), constant on SR
        // x1 candidates: f(x1) < m. On SL (neg-left) f increases with x.
        if (!(SL.extreme_value() < m)) return std::nullopt;
        Rat cut = (m >= SL.hi_value) ? SL.hi : seg_solve(f, SL, m);
        // x2 candidates: f(x2) > A. On SR (pos-right) f increases with x.
        if (!(SR.extreme_value() > A)) return std::nullopt;
        Rat pre = (A < SR.lo_value) ? SR.lo : seg_solve(f, SR, A);
        return PairScan{SL.lo, cut, pre, SR.hi};
    }
    // negative: SL positive-left (f decreases with x, extreme at lo),
    // SR negative-right (f decreases with x, extreme at hi)
    Rat A = image(f, SL.lo, Rat(0)).first;   // inf f on (x1, 0]
    Rat M = image(f, Rat(0), SR.hi).second;  // sup f on [0, x2)
    if (!(SL.extreme_value() > M)) return std::nullopt;
    Rat cut = (M <= SL.hi_value) ? SL.hi : seg_solve(f, SL, M);
    if (!(SR.extreme_value() < A)) return std::nullopt;
    Rat pre = (A > SR.lo_value) ? SR.lo : seg_solve(f, SR, A);
    return PairScan{SL.lo, cut, pre, SR.hi};
}

bool left_run_matches(const DepartureSegment& s, Orientation want) {
    // a positive radial departure needs a NEGATIVE left record at x1
    return want == Orientation::positive ? s.orient == Orientation::negative
                                         : s.orient == Orientation::positive;
}
bool right_run_matches(const DepartureSegment& s, Orientation want) {
    return want == Orientation::positive ? s.orient == Orientation::positive
                                         : s.orient == Orientation::negative;
}

} // namespace

std::optional<RadialDepartureWitness> radial_departure_exists(const PointedPLMap& f,
                                                              Orientation want) {
    auto ls = side_segments_or_empty(f.map(), Side::left);
    auto rs = side_segments_or_empty(f.map(), Side::right);
    for (const auto& SL : ls) {
        if (!left_run_matches(SL, want)) continue;
        for (const auto& SR : rs) {
            if (!right_run_matches(SR, want)) continue;
            auto scan = scan_pair(f.map(), SL, SR, want);
            if (!scan) continue;
            RadialDepartureWitness w{scan->x1_lo, scan->x2_hi, want};
            auto cls = radial_departure_through(f.map(), w.x1, w.x2);
            if (!cls || *cls != want)
                throw InvariantViolation("radial_departure_exists: witness (" + w.x1.str() +
                                         "," + w.x2.str() + ") failed pointwise check");
            return w;
        }
    }
    return std::nullopt;
}

std::vector<RadialDepartureWitness> representative_witnesses(const PointedPLMap& f) {
    std::vector<RadialDepartureWitness> out;
    auto ls = side_segments_or_empty(f.map(), Side::left);
    auto rs = side_segments_or_empty(f.map(), Side::right);
    for (Orientation want : {Orientation::positive, Orientation::negative}) {
        for (const auto& SL : ls) {
            if (!left_run_matches(SL, want)) continue;
            for (const auto& SR : rs) {
                if (!right_run_matches(SR, want)) continue;
                auto scan = scan_pair(f.map(), SL, SR, want);
                if (!scan) continue;
                RadialDepartureWitness w{scan->x1_lo, scan->x2_hi, want};
                auto cls = radial_departure_through(f.map(), w.x1, w.x2);
                if (!cls || *cls != want)
                    throw InvariantViolation("representative_witnesses: bad witness");
                out.push_back(w);
            }
        }
    }
    return out;
}

bool exists_departure_beyond(const PLMap& t, const Rat& x1_min, const Rat& x2_min,
                             std::optional<Orientation> want) {
    auto ls = side_segments_or_empty(t, Side::left);
    auto rs = side_segments_or_empty(t, Side::right);
    for (Orientation o : {Orientation::positive, Orientation::negative}) {
        if (want && *want != o) continue;
        for (const auto& SL : ls) {
            if (!left_run_matches(SL, o)) continue;
            for (const auto& SR : rs) {
                if (!right_run_matches(SR, o)) continue;
                auto scan = scan_pair(t, SL, SR, o);
                if (!scan) continue;
                Rat x1_start = max(scan->x1_lo, x1_min);
                Rat x2_start = max(scan->x2_pre, x2_min);
                if (x1_start < scan->x1_cut && x2_start < scan->x2_hi) {
                    // sanity: verify one concrete constrained witness
                    Rat x1 = x1_start;
                    Rat x2 = scan->x2_hi;
                    auto cls = radial_departure_through(t, x1, x2);
                    if (!cls || *cls != o)
                        throw InvariantViolation("exists_departure_beyond: witness check "
                                                 "failed at (" + x1.str() + "," + x2.str() + ")");
                    return true;
                }
            }
        }
    }
    return false;
}

std::optional<std::pair<Rat, Rat>> departure_with_values(const PLMap& f, const Rat& v1,
                                                         const Rat& v2, Orientation want) {
    for (const auto& w1 : preimages(f, v1)) {
        if (!(Rat(-1) <= w1 && w1 < Rat(0))) continue;
        for (const auto& w2 : preimages(f, v2)) {
            if (!(Rat(0) < w2 && w2 <= Rat(1))) continue;
            auto cls = radial_departure_through(f, w1, w2);
            if (cls && *cls == want) return std::make_pair(w1, w2);
        }
    }
    return std::nullopt;
}

Rat L_function(const PLMap& t, const Rat& y) {
    if (!(y < Rat(0))) throw DomainError("L: need y < 0");
    auto [m, M] = image(t, y, Rat(0));
    auto [rm, rM] = image(t, Rat(0), Rat(1));
    if (!(rm <= m && M <= rM))
        throw NotLiftableError("L: right image [" + rm.str() + "," + rM.str() +
                               "] does not cover t([" + y.str() + ",0]) = [" + m.str() +
                               "," + M.str() + "]");

    PLMap r = restrict(t, Rat(0), Rat(1));
    const auto& pts = r.breakpoints();
    Rat runmin = pts.front().y, runmax = runmin;
    std::optional<Rat> x_min_reach, x_max_reach;
    if (runmin <= m) x_min_reach = Rat(0);
    if (runmax >= M) x_max_reach = Rat(0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Rat &a = pts[i].x, &b = pts[i + 1].x;
        const Rat &va = pts[i].y, &vb = pts[i + 1].y;
        if (!x_min_reach && vb <= m) {
            // first crossing of level m inside this piece
            x_min_reach = (va == vb) ? a : a + (b - a) * (m - va) / (vb - va);
        }
        if (!x_max_reach && vb >= M) {
            x_max_reach = (va == vb) ? a : a + (b - a) * (M - va) / (vb - va);
        }
        if (vb < runmin) runmin = vb;
        if (vb > runmax) runmax = vb;
        if (x_min_reach && x_max_reach) break;
    }
    if (!x_min_reach || !x_max_reach)
        throw NotLiftableError("L: coverage walk failed"); // image check makes this unreachable
    Rat L = max(*x_min_reach, *x_max_reach);
    if (!(L > Rat(0))) throw InvariantViolation("L: computed L is not positive");
    if (!is_departure(t, L))
        throw InvariantViolation("L(" + y.str() + ") = " + L.str() +
                                 " is not a right departure of t");
    return L;
}

bool is_departure(const PLMap& f, const Rat& x) {
    if (x > Rat(0)) {
        for (const auto& s : side_segments_or_empty(f, Side::right))
            if (s.lo < x && x <= s.hi) return true;
        return false;
    }
    if (x < Rat(0)) {
        for (const auto& s : side_segments_or_empty(f, Side::left))
            if (s.lo <= x && x < s.hi) return true;
        return false;
    }
    return false;
}

bool is_departure(const PointedPLMap& f, const Rat& x) { return is_departure(f.map(), x); }

bool is_liftable_range(const PLMap& t, const Rat& y_minus, const Rat& y_plus) {
    if (!(y_minus <= Rat(0) && Rat(0) <= y_plus) || y_minus < Rat(-1) || y_plus > Rat(1))
        throw DomainError("is_liftable_range: need 0 in [y-,y+] within [-1,1]");
    if (y_minus < Rat(0)) {
        auto [m, M] = image(t, y_minus, Rat(0));
        auto [rm, rM] = image(t, Rat(0), Rat(1));
        if (!(rm <= m && M <= rM)) return false;
    }
    return !exists_departure_beyond(t, y_minus, y_plus);
}

LiftableCheck liftable_from_departure(const PLMap& t, const PLMap& s, const Rat& x,
                                      const Rat& x_prime) {
    LiftableCheck out;
    if (!(Rat(0) <= x && x < x_prime && x_prime <= Rat(1))) {
        out.failed = "need 0 <= x < x' <= 1";
        return out;
    }
    if (!x.is_zero()) {
        if (!is_departure(s, x) || !(s(x) > Rat(0))) {
            out.failed = "x is neither 0 nor a positive right departure of s";
            return out;
        }
    }
    auto [lo, hi] = image(s, x, x_prime);
    if (s(x) != hi) {
        out.failed = "s(x) is not the maximum of s on [x,x']";
        return out;
    }
    if (!(lo < Rat(0))) {
        out.failed = "s does not go negative on [x,x'] (range degenerate)";
        out.hypotheses_hold = true; // trivially liftable; report separately
        out.y_minus = lo;
        out.y_plus = hi;
        out.conclusion = true;
        return out;
    }
    out.hypotheses_hold = true;
    out.y_minus = lo;
    out.y_plus = hi;
    out.conclusion = is_liftable_range(t, lo, hi);
    return out;
}

} // namespace zigzag
