#include "zigzag/bridging.hpp"

#include <algorithm>

#include "zigzag/oracle.hpp"

namespace zigzag {

namespace {

Rat largest_y_with_value(const PLMap& t, const Rat& lo, const Rat& hi, const Rat& v) {
    // largest y in [lo, hi] with t(y) = v
    std::optional<Rat> best;
    for (const auto& y : preimages(t, v))
        if (lo <= y && y <= hi) best = y;
    if (!best)
        throw InvariantViolation("no y in [" + lo.str() + "," + hi.str() + "] with t(y) = " +
                                 v.str());
    return *best;
}

std::vector<ContourPoint> right_contour_of(const PLMap& t) {
    return contour_points(PointedPLMap{t}).right;
}

/* Points on I where s kinks, where t o s kinks, and where s crosses the
   given value levels; the lift is affine between consecutive ones. */
std::vector<Rat> lift_partition(const PLMap& t, const PLMap& s, const Rat& lo, const Rat& hi,
                                const std::vector<Rat>& levels) {
    std::vector<Rat> xs;
    xs.push_back(lo);
    xs.push_back(hi);
    for (const auto& p : s.breakpoints())
        if (lo < p.x && p.x < hi) xs.push_back(p.x);
    for (const auto& bp : t.breakpoints())
        for (const auto& x : preimages(s, bp.x))
            if (lo < x && x < hi) xs.push_back(x);
    for (const auto& lv : levels)
        for (const auto& x : preimages(s, lv))
            if (lo < x && x < hi) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

struct AffineInverse {
    // inverse of t restricted to one monotone stretch [ylo, yhi]
    Rat ylo, yhi, tlo, thi;
    Rat operator()(const Rat& v) const {
        Rat y = ylo + (yhi - ylo) * (v - tlo) / (thi - tlo);
        if (y < ylo || y > yhi)
            throw InvariantViolation("re-solve landed outside [" + ylo.str() + "," +
                                     yhi.str() + "]");
        return y;
    }
};

AffineInverse branch_inverse(const PLMap& t, const Rat& ylo, const Rat& yhi) {
    // t must be linear and injective on [ylo, yhi]
    for (const auto& p : t.breakpoints())
        if (ylo < p.x && p.x < yhi)
            throw InvariantViolation("branch [" + ylo.str() + "," + yhi.str() +
                                     "] is not a single linear piece of t");
    Rat tlo = t(ylo), thi = t(yhi);
    if (tlo == thi) throw InvariantViolation("branch of t is constant");
    return AffineInverse{ylo, yhi, tlo, thi};
}

} // namespace

PLMap overlay(const PLMap& base, const PLMap& patch) {
    const Rat &lo = patch.domain_lo(), &hi = patch.domain_hi();
    if (base(lo) != patch(lo) || base(hi) != patch(hi))
        throw InvariantViolation("overlay: seam mismatch at [" + lo.str() + "," + hi.str() +
                                 "]");
    std::vector<Breakpoint> pts;
    for (const auto& p : base.breakpoints())
        if (p.x < lo) pts.push_back(p);
    for (const auto& p : patch.breakpoints()) pts.push_back(p);
    for (const auto& p : base.breakpoints())
        if (p.x > hi) pts.push_back(p);
    return canonicalize(PLMap(std::move(pts), base.codomain_lo(), base.codomain_hi()));
}

StayRightLift stay_right_lift(const PLMap& t, const PLMap& f, const PLMap& s, const Rat& a,
                              const Rat& b, const Rat& y_minus, const Rat& y_plus) {
    if (a == b) throw HypothesisError("stay_right: empty interval");
    Rat lo = min(a, b), hi = max(a, b);

    if (s(a) != y_plus)
        throw HypothesisError("stay_right: s(a) = " + s(a).str() + " != y+ = " + y_plus.str());
    auto [smin, smax] = image(s, lo, hi);
    if (smin != y_minus || smax != y_plus)
        throw HypothesisError("stay_right: s(I) = [" + smin.str() + "," + smax.str() +
                              "] != [y-,y+] = [" + y_minus.str() + "," + y_plus.str() + "]");
    if (auto bad = oracle_factorization_mismatch(t, restrict(s, lo, hi), restrict(f, lo, hi)))
        throw HypothesisError("stay_right: f != t o s on I, first mismatch at x = " +
                              bad->str());

    // s nonnegative on I: nothing to lift
    if (y_minus >= Rat(0)) {
        StayRightLift out{restrict(s, lo, hi), {}};
        out.plan.case_id = 0;
        return out;
    }

    if (!is_liftable_range(t, y_minus, y_plus))
        throw HypothesisError("stay_right: [" + y_minus.str() + "," + y_plus.str() +
                              "] is not a liftable range of t");

    Rat L = L_function(t, y_minus);
    auto rc = right_contour_of(t);
    Rat gamma(0);
    for (std::size_t i = 1; i < rc.size(); ++i)
        if (rc[i].point < L) gamma = rc[i].point;

    StayRightPlan plan;
    plan.gamma = gamma;
    plan.L = L;

    // Pieces are emitted in whatever order the construction visits them;
    // sort at the end and insist that duplicated x agree in value.
    std::vector<Breakpoint> out;
    auto emit = [&](const Rat& x, const Rat& y) { out.push_back({x, y}); };
    auto finish = [&]() {
        std::sort(out.begin(), out.end(),
                  [](const Breakpoint& u, const Breakpoint& v) { return u.x < v.x; });
        std::vector<Breakpoint> dedup;
        for (const auto& p : out) {
            if (!dedup.empty() && dedup.back().x == p.x) {
                if (dedup.back().y != p.y)
                    throw InvariantViolation("stay_right: discontinuity at x = " + p.x.str());
                continue;
            }
            dedup.push_back(p);
        }
        return canonicalize(PLMap(std::move(dedup), Rat(0), Rat(1)));
    };

    if (y_plus >= gamma) {
        plan.case_id = 1;
        AffineInverse inv = branch_inverse(t, gamma, L);
        auto part = lift_partition(t, s, lo, hi, {L});
        for (std::size_t k = 0; k + 1 < part.size(); ++k) {
            Rat p = part[k], q = part[k + 1];
            Rat mid = midpoint(p, q);
            if (s(mid) > L) {
                emit(p, s(p));
                emit(q, s(q));
            } else {
                emit(p, inv(t(s(p))));
                emit(q, inv(t(s(q))));
            }
        }
    } else {
        plan.case_id = 2;
        // right contour points of t strictly between y+ and L, then gamma_0
        std::vector<Rat> gs;
        Rat gamma0(0);
        for (std::size_t i = 1; i < rc.size(); ++i) {
            if (y_plus < rc[i].point && rc[i].point < L) gs.push_back(rc[i].point);
        }
        if (gs.empty() || gs.back() != gamma)
            throw InvariantViolation("stay_right case 2: gamma ladder ill-formed");
        for (std::size_t i = 1; i < rc.size(); ++i)
            if (rc[i].point < gs.front()) gamma0 = rc[i].point;
        std::vector<Rat> gammas;
        gammas.push_back(gamma0);
        for (const auto& g : gs) gammas.push_back(g);
        gammas.push_back(L);
        std::size_t k = gs.size();

        // delta ladder, built from delta_{k+1} down to delta_1
        std::vector<Rat> deltas(k + 2, Rat(0)); // index 1..k+1 used
        {
            std::optional<Rat> d;
            for (const auto& y : preimages(t, t(L)))
                if (y_minus <= y && y < Rat(0)) d = y; // max since sorted ascending
            if (!d)
                throw InvariantViolation("stay_right case 2: no delta_{k+1} in [y-,0) with "
                                         "t(delta) = t(L)");
            deltas[k + 1] = *d;
        }
        for (std::size_t idx = k; idx >= 1; --idx) {
            std::optional<Rat> d;
            for (const auto& y : preimages(t, t(gammas[idx])))
                if (deltas[idx + 1] < y && y < Rat(0)) d = y;
            if (!d)
                throw InvariantViolation("stay_right case 2: delta ladder breaks at index " +
                                         std::to_string(idx));
            deltas[idx] = *d;
        }
        for (std::size_t idx = 1; idx <= k + 1; ++idx) {
            if (!is_departure(t, deltas[idx]))
                throw InvariantViolation("stay_right case 2: delta is not a left departure");
            if (t(deltas[idx]) != t(gammas[idx]))
                throw InvariantViolation("stay_right case 2: t(delta_i) != t(gamma_i)");
            auto [dlo, dhi] = image(t, deltas[idx], y_plus);
            auto [glo, ghi] = image(t, gammas[idx - 1], gammas[idx]);
            if (!(glo <= dlo && dhi <= ghi))
                throw InvariantViolation("stay_right case 2: t([delta_i, y+]) escapes "
                                         "t([gamma_{i-1}, gamma_i])");
        }

        // crossings x_i: first point from a toward b with s(x) = delta_i
        int dir = a < b ? 1 : -1;
        std::vector<Rat> xs(k + 2, a);
        for (std::size_t idx = 1; idx <= k + 1; ++idx) {
            std::optional<Rat> first;
            for (const auto& x : preimages(s, deltas[idx])) {
                if (x < lo || x > hi) continue;
                if (!first || (dir > 0 ? x < *first : x > *first)) first = x;
            }
            if (!first)
                throw InvariantViolation("stay_right case 2: s never reaches delta_" +
                                         std::to_string(idx));
            xs[idx] = *first;
            if (dir > 0 ? !(xs[idx - 1] < xs[idx]) : !(xs[idx] < xs[idx - 1]))
                throw InvariantViolation("stay_right case 2: crossing points out of order");
        }

        plan.gammas = gammas;
        plan.deltas = std::vector<Rat>(deltas.begin() + 1, deltas.end());
        plan.crossings = xs;

        // piece [x_{i-1}, x_i] re-solves into [gamma_{i-1}, gamma_i];
        // the remainder [x_{k+1}, b] re-solves into [gamma_k, L]
        auto resolve_piece = [&](const Rat& from, const Rat& to, const Rat& ylo,
                                 const Rat& yhi) {
            AffineInverse inv = branch_inverse(t, ylo, yhi);
            Rat plo = min(from, to), phi = max(from, to);
            auto part = lift_partition(t, s, plo, phi, {});
            for (const auto& x : part) emit(x, inv(t(s(x))));
        };
        for (std::size_t idx = 1; idx <= k + 1; ++idx)
            resolve_piece(xs[idx - 1], xs[idx], gammas[idx - 1], gammas[idx]);
        if (xs[k + 1] != b) resolve_piece(xs[k + 1], b, gammas[k], L);
    }

    PLMap shat = finish();

    // conclusions (1)-(5), verified exactly
    if (auto bad = oracle_factorization_mismatch(t, shat, restrict(f, lo, hi)))
        throw InvariantViolation("stay_right: (1) fails at x = " + bad->str());
    if (shat(a) != y_plus) throw InvariantViolation("stay_right: (2) fails");
    {
        auto xs = common_partition(shat, restrict(s, lo, hi));
        std::optional<Rat> attained, sup;
        for (std::size_t u = 0; u < xs.size(); ++u) {
            if (shat(xs[u]) < s(xs[u])) throw InvariantViolation("stay_right: (3) fails");
            if (shat(xs[u]) != s(xs[u])) {
                if (!attained || shat(xs[u]) > *attained) attained = shat(xs[u]);
            }
            if (u + 1 < xs.size()) {
                Rat mid = midpoint(xs[u], xs[u + 1]);
                if (shat(mid) != s(mid)) {
                    Rat pm = max(shat(xs[u]), shat(xs[u + 1]));
                    if (!sup || pm > *sup) sup = pm;
                }
            }
        }
        if (!attained || *attained != L || !sup || *sup != L)
            throw InvariantViolation("stay_right: (4) fails: max new value " +
                                     (attained ? attained->str() : std::string("none")) +
                                     " vs L = " + L.str());
    }
    if (s(b) <= L) {
        Rat expect = largest_y_with_value(t, Rat(0), L, f(b));
        if (shat(b) != expect)
            throw InvariantViolation("stay_right: (5) fails: shat(b) = " + shat(b).str() +
                                     " vs " + expect.str());
    }

    return StayRightLift{std::move(shat), std::move(plan)};
}

namespace {

ContourData contour_of(const PLMap& s) { return contour_points(PointedPLMap{s}); }

Rat glue_value(const PLMap& t, const PLMap& f, const Rat& at, const Rat& Lv) {
    return largest_y_with_value(t, Rat(0), Lv, f(at));
}

} // namespace

BridgeSiteI bridging_I(const PLMap& t, const PLMap& f, const PLMap& s, std::size_t i) {
    ContourData cd = contour_of(s);
    std::size_t n = cd.n();
    if (i < 1 || i > n) throw HypothesisError("bridging_I: index out of range");
    if (cd.alpha(i).orient != Orientation::negative)
        throw HypothesisError("bridging_I: alpha_" + std::to_string(i) +
                              " is not a negative right contour point");

    Rat A_im1 = cd.alpha(i - 1).point, s_im1 = cd.alpha(i - 1).value;
    Rat A_i = cd.alpha(i).point, s_i = cd.alpha(i).value;
    Rat Lv = L_function(t, s_i);

    BridgeSiteI site;
    site.i = i;
    site.L_value = Lv;
    site.witness_x1 = Rat(0); // filled by compute_B1 when used from there

    PLMap shat = [&]() {
        if (i == n) {
            auto lift = stay_right_lift(t, f, s, A_im1, Rat(1), s_i, s_im1);
            site.dom_lo = A_im1;
            site.dom_hi = Rat(1);
            return lift.shat;
        }
        Rat A_ip1 = cd.alpha(i + 1).point, s_ip1 = cd.alpha(i + 1).value;
        auto liftL = stay_right_lift(t, f, s, A_im1, A_i, s_i, s_im1);
        auto liftR = stay_right_lift(t, f, s, A_ip1, A_i, s_i, s_ip1);
        Rat expect = glue_value(t, f, A_i, Lv);
        if (liftL.shat(A_i) != expect || liftR.shat(A_i) != expect)
            throw InvariantViolation("bridging_I: halves do not agree at alpha_i");
        std::vector<Breakpoint> pts = liftL.shat.breakpoints();
        const auto& rb = liftR.shat.breakpoints();
        for (std::size_t u = 1; u < rb.size(); ++u) pts.push_back(rb[u]);
        PLMap glued = canonicalize(PLMap(std::move(pts), Rat(0), Rat(1)));

        bool last_negative = true; // is alpha_i the last NEGATIVE right contour point?
        for (std::size_t u = i + 1; u <= n; ++u)
            if (cd.alpha(u).orient == Orientation::negative) last_negative = false;
        if (!last_negative || A_ip1 == Rat(1)) {
            site.dom_lo = A_im1;
            site.dom_hi = A_ip1;
            return glued;
        }
        // tail on [alpha_{i+1}, 1]
        site.dom_lo = A_im1;
        site.dom_hi = Rat(1);
        Rat ylo = image(s, A_ip1, Rat(1)).first;
        PLMap tail = (ylo >= Rat(0))
                         ? restrict(s, A_ip1, Rat(1))
                         : stay_right_lift(t, f, s, A_ip1, Rat(1), ylo, s_ip1).shat;
        std::vector<Breakpoint> pts2 = glued.breakpoints();
        const auto& tb = tail.breakpoints();
        if (tb.front().y != pts2.back().y)
            throw InvariantViolation("bridging_I: tail does not agree at alpha_{i+1}");
        for (std::size_t u = 1; u < tb.size(); ++u) pts2.push_back(tb[u]);
        return canonicalize(PLMap(std::move(pts2), Rat(0), Rat(1)));
    }();

    // conclusions (1)-(4)
    if (auto bad = oracle_factorization_mismatch(t, shat, restrict(f, site.dom_lo, site.dom_hi)))
        throw InvariantViolation("bridging_I: (1) fails at x = " + bad->str());
    if (shat(A_im1) != s(A_im1)) throw InvariantViolation("bridging_I: (2) fails at alpha_{i-1}");
    if (i < n && shat(cd.alpha(i + 1).point) != s(cd.alpha(i + 1).point))
        throw InvariantViolation("bridging_I: (2) fails at alpha_{i+1}");
    {
        PLMap s_dom = restrict(s, site.dom_lo, site.dom_hi);
        auto xs = common_partition(shat, s_dom);
        std::optional<Rat> attained, sup, attained_left;
        for (std::size_t u = 0; u < xs.size(); ++u) {
            if (shat(xs[u]) < s(xs[u])) throw InvariantViolation("bridging_I: (3) fails");
            if (shat(xs[u]) != s(xs[u])) {
                if (!attained || shat(xs[u]) > *attained) attained = shat(xs[u]);
                if (A_im1 <= xs[u] && xs[u] <= A_i)
                    if (!attained_left || shat(xs[u]) > *attained_left)
                        attained_left = shat(xs[u]);
            }
            if (u + 1 < xs.size()) {
                Rat mid = midpoint(xs[u], xs[u + 1]);
                if (shat(mid) != s(mid)) {
                    Rat pm = max(shat(xs[u]), shat(xs[u + 1]));
                    if (!sup || pm > *sup) sup = pm;
                }
            }
        }
        if (!attained || *attained != Lv || !sup || *sup != Lv)
            throw InvariantViolation("bridging_I: (4) max-new-value fails");
        if (!attained_left || *attained_left != Lv)
            throw InvariantViolation("bridging_I: (4) L not attained on [alpha_{i-1}, alpha_i]");
    }

    site.shat = std::move(shat);
    return site;
}

BridgeSiteII bridging_II(const PLMap& t, const PLMap& f, const PLMap& s, std::size_t j,
                         std::size_t i_witness) {
    ContourData cd = contour_of(s);
    std::size_t m = cd.m(), n = cd.n();
    if (j < 1 || j > m) throw HypothesisError("bridging_II: index out of range");
    if (cd.beta(j).orient != Orientation::negative)
        throw HypothesisError("bridging_II: beta_" + std::to_string(j) +
                              " is not a negative left contour point");
    if (i_witness < 1 || i_witness > n)
        throw HypothesisError("bridging_II: witness index out of range");
    if (!(cd.alpha(i_witness).value <= cd.beta(j).value))
        throw HypothesisError("bridging_II: (dagger) fails: s(alpha_i) = " +
                              cd.alpha(i_witness).value.str() + " > s(beta_j) = " +
                              cd.beta(j).value.str());
    if (!(cd.alpha(i_witness - 1).value <= cd.beta(j - 1).value))
        throw HypothesisError("bridging_II: (dagger) fails: s(alpha_{i-1}) = " +
                              cd.alpha(i_witness - 1).value.str() + " > s(beta_{j-1}) = " +
                              cd.beta(j - 1).value.str());

    Rat B_jm1 = cd.beta(j - 1).point, s_jm1 = cd.beta(j - 1).value;
    Rat B_j = cd.beta(j).point, s_j = cd.beta(j).value;
    Rat Lv = L_function(t, s_j);

    BridgeSiteII site;
    site.j = j;
    site.partner = i_witness;
    site.L_value = Lv;

    PLMap shat = [&]() {
        if (j == m) {
            auto lift = stay_right_lift(t, f, s, B_jm1, Rat(-1), s_j, s_jm1);
            site.dom_lo = Rat(-1);
            site.dom_hi = B_jm1;
            return lift.shat;
        }
        Rat B_jp1 = cd.beta(j + 1).point, s_jp1 = cd.beta(j + 1).value;
        auto liftL = stay_right_lift(t, f, s, B_jm1, B_j, s_j, s_jm1);
        auto liftR = stay_right_lift(t, f, s, B_jp1, B_j, s_j, s_jp1);
        Rat expect = glue_value(t, f, B_j, Lv);
        if (liftL.shat(B_j) != expect || liftR.shat(B_j) != expect)
            throw InvariantViolation("bridging_II: halves do not agree at beta_j");
        std::vector<Breakpoint> pts = liftR.shat.breakpoints();
        const auto& lb = liftL.shat.breakpoints();
        for (std::size_t u = 1; u < lb.size(); ++u) pts.push_back(lb[u]);
        PLMap glued = canonicalize(PLMap(std::move(pts), Rat(0), Rat(1)));

        bool last_negative = true;
        for (std::size_t u = j + 1; u <= m; ++u)
            if (cd.beta(u).orient == Orientation::negative) last_negative = false;
        if (!last_negative || B_jp1 == Rat(-1)) {
            site.dom_lo = B_jp1;
            site.dom_hi = B_jm1;
            return glued;
        }
        site.dom_lo = Rat(-1);
        site.dom_hi = B_jm1;
        Rat ylo = image(s, Rat(-1), B_jp1).first;
        PLMap tail = (ylo >= Rat(0))
                         ? restrict(s, Rat(-1), B_jp1)
                         : stay_right_lift(t, f, s, B_jp1, Rat(-1), ylo, s_jp1).shat;
        std::vector<Breakpoint> pts2 = tail.breakpoints();
        const auto& gb = glued.breakpoints();
        if (pts2.back().y != gb.front().y)
            throw InvariantViolation("bridging_II: tail does not agree at beta_{j+1}");
        for (std::size_t u = 1; u < gb.size(); ++u) pts2.push_back(gb[u]);
        return canonicalize(PLMap(std::move(pts2), Rat(0), Rat(1)));
    }();

    if (auto bad = oracle_factorization_mismatch(t, shat, restrict(f, site.dom_lo, site.dom_hi)))
        throw InvariantViolation("bridging_II: (1) fails at x = " + bad->str());
    if (shat(B_jm1) != s(B_jm1)) throw InvariantViolation("bridging_II: (2) fails at beta_{j-1}");
    if (j < m && shat(cd.beta(j + 1).point) != s(cd.beta(j + 1).point))
        throw InvariantViolation("bridging_II: (2) fails at beta_{j+1}");
    {
        PLMap s_dom = restrict(s, site.dom_lo, site.dom_hi);
        auto xs = common_partition(shat, s_dom);
        std::optional<Rat> attained, sup, attained_core;
        for (std::size_t u = 0; u < xs.size(); ++u) {
            if (shat(xs[u]) < s(xs[u])) throw InvariantViolation("bridging_II: (3) fails");
            if (shat(xs[u]) != s(xs[u])) {
                if (!attained || shat(xs[u]) > *attained) attained = shat(xs[u]);
                if (B_j <= xs[u] && xs[u] <= B_jm1)
                    if (!attained_core || shat(xs[u]) > *attained_core)
                        attained_core = shat(xs[u]);
            }
            if (u + 1 < xs.size()) {
                Rat mid = midpoint(xs[u], xs[u + 1]);
                if (shat(mid) != s(mid)) {
                    Rat pm = max(shat(xs[u]), shat(xs[u + 1]));
                    if (!sup || pm > *sup) sup = pm;
                }
            }
        }
        if (!attained || *attained != Lv || !sup || *sup != Lv)
            throw InvariantViolation("bridging_II: (4) max-new-value fails");
        if (!attained_core || *attained_core != Lv)
            throw InvariantViolation("bridging_II: (4) L not attained on [beta_j, beta_{j-1}]");
    }

    site.shat = std::move(shat);
    return site;
}

std::vector<std::pair<std::size_t, Rat>> compute_B1(const PointedPLMap& s) {
    ContourData cd = contour_points(s);
    std::vector<DepartureSegment> ls;
    try {
        ls = departures(s, Side::left);
    } catch (const DegenerateSideError&) {
        return {};
    }
    std::vector<std::pair<std::size_t, Rat>> out;
    for (std::size_t i = 1; i <= cd.n(); ++i) {
        if (cd.alpha(i).orient != Orientation::negative) continue;
        Rat M_i = image(s.map(), Rat(0), cd.alpha(i).point).second;
        for (const auto& SL : ls) {
            if (SL.orient != Orientation::positive) continue;
            Rat m_neg = image(s.map(), SL.lo, Rat(0)).first;
            if (SL.extreme_value() > M_i && cd.alpha(i).value < m_neg) {
                Rat x = SL.lo;
                auto cls = radial_departure_through(s.map(), x, cd.alpha(i).point);
                if (!cls || *cls != Orientation::negative)
                    throw InvariantViolation("compute_B1: witness failed pointwise check");
                out.emplace_back(i, x);
                break;
            }
        }
    }
    return out;
}

namespace {

struct ValueBox {
    // realizable (x1, x2) values from one (SLp, SRn) pair of t3
    Rat x1_lo;            // closed
    Rat x1_hi;            // open
    Rat x2_lo;            // open
    Rat x2_hi;            // closed
    const DepartureSegment* SLp;
    const DepartureSegment* SRn;
};

std::vector<Rat> add_midpoints(std::vector<Rat> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Rat> out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out.push_back(midpoint(xs[i - 1], xs[i]));
        out.push_back(xs[i]);
    }
    return out;
}

} // namespace

std::vector<B2Candidate> compute_B2(const PointedPLMap& s, const PLMap& s_tilde,
                                    const PLMap& t3, int refine_level) {
    ContourData cd = contour_points(s);
    auto t3_left = [&]() {
        try {
            return departures(PointedPLMap{t3}, Side::left);
        } catch (const DegenerateSideError&) {
            return std::vector<DepartureSegment>{};
        }
    }();
    auto t3_right = [&]() {
        try {
            return departures(PointedPLMap{t3}, Side::right);
        } catch (const DegenerateSideError&) {
            return std::vector<DepartureSegment>{};
        }
    }();

    std::vector<ValueBox> boxes;
    for (const auto& SLp : t3_left) {
        if (SLp.orient != Orientation::positive) continue;
        for (const auto& SRn : t3_right) {
            if (SRn.orient != Orientation::negative) continue;
            Rat A_neg = image(t3, SLp.lo, Rat(0)).first;  // inf t3 on (w1, 0]
            Rat M_neg = image(t3, Rat(0), SRn.hi).second; // sup t3 on [0, w2)
            if (!(SRn.extreme_value() < A_neg)) continue;
            if (!(SLp.extreme_value() > M_neg)) continue;
            ValueBox box;
            box.x1_lo = SRn.extreme_value();
            box.x1_hi = min(A_neg, SRn.lo_value);
            box.x2_lo = max(M_neg, SLp.hi_value);
            box.x2_hi = SLp.extreme_value();
            box.SLp = &SLp;
            box.SRn = &SRn;
            boxes.push_back(box);
        }
    }

    std::vector<Rat> thresholds;
    for (const auto& p : s.map().breakpoints()) thresholds.push_back(p.y);
    for (const auto& p : s_tilde.breakpoints()) thresholds.push_back(p.y);
    if (refine_level > 0) {
        for (const auto& p : t3.breakpoints()) {
            thresholds.push_back(p.y);
            thresholds.push_back(p.x);
        }
        for (std::size_t i = 0; i <= cd.n(); ++i) thresholds.push_back(cd.alpha(i).value);
        for (std::size_t j = 0; j <= cd.m(); ++j) thresholds.push_back(cd.beta(j).value);
    }

    auto stilde_pos_right = [&]() {
        std::vector<DepartureSegment> out;
        for (const auto& seg : departures(PointedPLMap{s_tilde}, Side::right))
            if (seg.orient == Orientation::positive) out.push_back(seg);
        return out;
    }();

    auto b1 = compute_B1(s);

    std::vector<B2Candidate> out;
    for (std::size_t j = 1; j <= cd.m(); ++j) {
        if (cd.beta(j).orient != Orientation::negative) continue;
        Rat Wlo = cd.beta(j).point;       // closed
        Rat Whi = cd.beta(j - 1).point;   // open
        bool found = false;
        for (const auto& box : boxes) {
            if (found) break;
            // (d): x1 in [beta_j, beta_{j-1}) intersected with the box
            Rat x1lo = max(box.x1_lo, Wlo);
            Rat x1hi = min(box.x1_hi, Whi);
            if (!(x1lo < x1hi)) continue;

            std::vector<Rat> x1cands;
            x1cands.push_back(x1lo);
            x1cands.push_back(midpoint(x1lo, x1hi));
            for (const auto& p : s.map().breakpoints())
                if (x1lo < p.x && p.x < x1hi) x1cands.push_back(p.x);
            for (const auto& v : thresholds)
                for (const auto& x : preimages(s.map(), v))
                    if (x1lo < x && x < x1hi) x1cands.push_back(x);
            x1cands = add_midpoints(std::move(x1cands));
            // drop anything outside the half-open window
            std::vector<Rat> x1ok;
            for (const auto& x : x1cands)
                if (x1lo <= x && x < x1hi) x1ok.push_back(x);

            for (const auto& S : stilde_pos_right) {
                if (found) break;
                Rat Jlo = max(S.lo, box.x2_lo);  // open
                Rat Jhi = min(S.hi, box.x2_hi);  // closed
                if (!(Jlo < Jhi)) continue;

                std::vector<Rat> x2cands;
                x2cands.push_back(Jhi);
                x2cands.push_back(midpoint(Jlo, Jhi));
                for (const auto& p : s_tilde.breakpoints())
                    if (Jlo < p.x && p.x < Jhi) x2cands.push_back(p.x);
                for (const auto& v : thresholds)
                    for (const auto& x : preimages(s_tilde, v))
                        if (Jlo < x && x < Jhi) x2cands.push_back(x);
                x2cands = add_midpoints(std::move(x2cands));
                std::vector<Rat> x2ok;
                for (const auto& x : x2cands)
                    if (Jlo < x && x <= Jhi) x2ok.push_back(x);

                for (const auto& x2 : x2ok) {
                    if (found) break;
                    // (b): x2 a positive right departure of s_tilde, literally
                    Rat v2 = s_tilde(x2);
                    if (!(v2 > Rat(0))) continue;
                    bool fresh = true;
                    for (const auto& p : preimages(s_tilde, v2))
                        if (Rat(0) <= p && p < x2) fresh = false;
                    if (!fresh) continue;
                    Rat min_st = image(s_tilde, Rat(0), x2).first; // for (e)
                    for (const auto& x1 : x1ok) {
                        // (c)
                        if (!(v2 > image(s.map(), x1, Rat(0)).second)) continue;
                        // (e)
                        if (!(s.map()(x1) < min_st)) continue;
                        // (a): realize the t3 departure with these exact values
                        std::optional<Rat> w1, w2;
                        for (const auto& w : preimages(t3, x2))
                            if (box.SLp->lo <= w && w <= box.SLp->hi) w1 = w;
                        for (const auto& w : preimages(t3, x1))
                            if (box.SRn->lo <= w && w <= box.SRn->hi) w2 = w;
                        if (!w1 || !w2) continue;
                        auto cls = radial_departure_through(t3, *w1, *w2);
                        if (!cls || *cls != Orientation::negative) continue;

                        B2Candidate cand;
                        cand.j = j;
                        cand.x1 = x1;
                        cand.x2 = x2;
                        cand.w1 = *w1;
                        cand.w2 = *w2;
                        // partner k' with the (dagger) inequalities
                        std::optional<std::size_t> partner;
                        for (const auto& [k, wx] : b1) {
                            if (cd.alpha(k).value <= cd.beta(j).value &&
                                cd.alpha(k - 1).value <= cd.beta(j - 1).value) {
                                partner = k;
                                break;
                            }
                        }
                        if (!partner)
                            throw InvariantViolation(
                                "compute_B2: no B1 partner satisfies (dagger) for beta_" +
                                std::to_string(j));
                        cand.partner = *partner;
                        out.push_back(cand);
                        found = true;
                        break;
                    }
                }
            }
        }
    }
    return out;
}

BridgedFactor build_bridged_s(const PointedPLMap& f1, const PointedPLMap& f2,
                              const PointedPLMap& f3) {
    PLMap t1 = radial_contour_factor(f1);
    PLMap t12 = radial_contour_factor(PointedPLMap{compose(f1.map(), f2.map())});
    if (!(t1 == t12))
        throw HypothesisError("build_bridged_s: t_{f1} != t_{f1 o f2}");
    PLMap t2 = radial_contour_factor(f2);
    PLMap t23 = radial_contour_factor(PointedPLMap{compose(f2.map(), f3.map())});
    if (!(t2 == t23))
        throw HypothesisError("build_bridged_s: t_{f2} != t_{f2 o f3}");
    PLMap t3 = radial_contour_factor(f3);

    PLMap s1 = meandering_lift(f1);
    PLMap s = compose(s1, f2.map());
    PLMap f = compose(f1.map(), f2.map());
    if (!(compose(t1, s) == f))
        throw InvariantViolation("build_bridged_s: t1 o (s1 o f2) != f1 o f2");

    PointedPLMap sp{s};
    ContourData cd = contour_points(sp);

    auto assemble = [&](int refine_level, std::vector<BridgeSiteI>& sitesI,
                        std::vector<B2Candidate>& candsII,
                        std::vector<BridgeSiteII>& sitesII) {
        PLMap acc = s;
        sitesI.clear();
        for (const auto& [i, wx] : compute_B1(sp)) {
            BridgeSiteI site = bridging_I(t1, f, s, i);
            site.witness_x1 = wx;
            acc = overlay(acc, site.shat);
            sitesI.push_back(std::move(site));
        }
        candsII = compute_B2(sp, acc, t3, refine_level);
        sitesII.clear();
        for (const auto& c : candsII) {
            BridgeSiteII site = bridging_II(t1, f, s, c.j, c.partner);
            site.x1 = c.x1;
            site.x2 = c.x2;
            site.w1 = c.w1;
            site.w2 = c.w2;
            acc = overlay(acc, site.shat);
            sitesII.push_back(std::move(site));
        }
        return acc;
    };

    BridgedFactor bf;
    bf.base = s;
    bf.t1 = t1;
    bf.t3 = t3;
    bf.contour = cd;

    for (int attempt = 0; attempt < 2; ++attempt) {
        std::vector<BridgeSiteI> sitesI;
        std::vector<B2Candidate> candsII;
        std::vector<BridgeSiteII> sitesII;
        PLMap acc = assemble(attempt, sitesI, candsII, sitesII);

        bf.s_tilde = acc;
        bf.b1 = std::move(sitesI);
        bf.b2 = std::move(sitesII);

        // provenance by interval
        bf.provenance.clear();
        {
            std::vector<std::pair<Rat, Rat>> covered;
            for (const auto& siteII : bf.b2)
                bf.provenance.push_back(
                    {siteII.dom_lo, siteII.dom_hi, "bridged-II(" + std::to_string(siteII.j) + ")"});
            for (const auto& siteI : bf.b1)
                bf.provenance.push_back(
                    {siteI.dom_lo, siteI.dom_hi, "bridged-I(" + std::to_string(siteI.i) + ")"});
        }

        bf.report = verify_bridged(bf, t1, f, t3);
        if (bf.report.all_pass()) return bf;
        if (attempt == 1) {
            std::string why;
            for (const auto& c : bf.report.checks)
                if (!c.pass) why += c.name + ": " + c.detail + "; ";
            throw InvariantViolation("build_bridged_s: verification failed after refinement: " +
                                     why);
        }
    }
    return bf; // unreachable
}

VerifyReport verify_bridged(const BridgedFactor& bf, const PLMap& t1, const PLMap& f1f2,
                            const PLMap& t3) {
    VerifyReport rep;
    const PLMap& st = bf.s_tilde;
    const PLMap& s = bf.base;
    const ContourData& cd = bf.contour;

    {
        bool ok = compose(t1, st) == f1f2;
        rep.checks.push_back({"t1 o s_tilde = f1 o f2", ok, ok ? "" : "exact equality fails"});
    }
    {
        bool ok = true;
        std::string detail;
        auto xs = common_partition(st, s);
        for (const auto& x : xs)
            if (st(x) < s(x)) {
                ok = false;
                detail = "s_tilde < base at x = " + x.str();
                break;
            }
        rep.checks.push_back({"s_tilde >= s1 o f2 pointwise", ok, detail});
    }
    {
        PLMap rew = compose(st, t3);
        auto w = radial_departure_exists(PointedPLMap{rew}, Orientation::negative);
        rep.checks.push_back({"s_tilde o t3 has no negative radial departures", !w.has_value(),
                              w ? "witness (" + w->x1.str() + "," + w->x2.str() + ")" : ""});
    }

    // locational facts about the departures of s_tilde
    auto window_of = [&](const Rat& x, bool right_side, bool bridged) -> bool {
        if (right_side) {
            for (std::size_t i = 1; i <= cd.n(); ++i) {
                if (cd.alpha(i).orient != Orientation::negative) continue;
                bool in_set = false;
                for (const auto& sI : bf.b1) in_set = in_set || sI.i == i;
                if (in_set != bridged) continue;
                if (cd.alpha(i - 1).point < x && x <= cd.alpha(i).point) return true;
            }
            return false;
        }
        for (std::size_t j = 1; j <= cd.m(); ++j) {
            if (cd.beta(j).orient != Orientation::negative) continue;
            bool in_set = false;
            for (const auto& sII : bf.b2) in_set = in_set || sII.j == j;
            if (in_set != bridged) continue;
            if (cd.beta(j).point <= x && x < cd.beta(j - 1).point) return true;
        }
        return false;
    };

    auto check_side = [&](Side side, std::string* detail) {
        bool ok = true;
        std::vector<Rat> part = common_partition(st, s);
        for (std::size_t i = 0; i <= cd.n(); ++i) part.push_back(cd.alpha(i).point);
        for (std::size_t j = 0; j <= cd.m(); ++j) part.push_back(cd.beta(j).point);
        auto segs = departures(PointedPLMap{st}, side);
        for (const auto& seg : segs) part.push_back(seg.lo), part.push_back(seg.hi);
        std::sort(part.begin(), part.end());
        part.erase(std::unique(part.begin(), part.end()), part.end());

        auto sample = [&](const Rat& x, Orientation o) {
            bool equal = st(x) == s(x);
            bool in_window_bridged = window_of(x, side == Side::right, true);
            bool in_window_unbridged = window_of(x, side == Side::right, false);
            bool located_ok;
            if (o == Orientation::positive) {
                // positive departures: equal-to-base (hence a departure of the
                // base) or inside a bridged window
                located_ok = equal || in_window_bridged;
            } else {
                // negative departures: inside an unbridged negative window
                located_ok = in_window_unbridged;
            }
            if (!located_ok && ok) {
                ok = false;
                *detail = std::string(to_string(o)) + " departure at x = " + x.str() +
                          " lies outside every admissible window";
            }
        };

        for (const auto& seg : segs) {
            for (std::size_t u = 0; u + 1 < part.size(); ++u) {
                Rat p = part[u], q = part[u + 1];
                // overlap of [p,q] with the run (half-open per side)
                Rat lo = max(p, seg.lo), hi = min(q, seg.hi);
                if (!(lo < hi)) continue;
                sample(midpoint(lo, hi), seg.orient);
            }
            sample(seg.extreme_point(), seg.orient);
        }
        return ok;
    };

    {
        std::string d1, d2;
        bool ok_r = check_side(Side::right, &d1);
        rep.checks.push_back({"right departures of s_tilde located in admissible windows", ok_r, d1});
        bool ok_l = check_side(Side::left, &d2);
        rep.checks.push_back({"left departures of s_tilde located in admissible windows", ok_l, d2});
    }

    return rep;
}

} // namespace zigzag
