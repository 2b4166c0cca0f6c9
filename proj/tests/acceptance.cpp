// Acceptance suite: one line per criterion, exact (tolerance-zero) checks.
// Exit status 0 iff every criterion passes.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "zigzag/bridging.hpp"
#include "zigzag/fixtures.hpp"
#include "zigzag/io.hpp"
#include "zigzag/oracle.hpp"
#include "zigzag/simplicial.hpp"
#include "ex4_variants.hpp"
#include "gen.hpp"

using namespace zigzag;
using namespace zigzag::fixtures;

namespace {

PointedPLMap P(const PLMap& m) { return PointedPLMap{m}; }

int failures = 0;

void criterion(int number, const std::string& name, const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
        body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (error.empty()) {
        std::cout << "PASS criterion " << number << ": " << name << " (" << ms << " ms)\n";
    } else {
        std::cout << "FAIL criterion " << number << ": " << name << " (" << ms
                  << " ms): " << error << "\n";
        ++failures;
    }
    std::cout.flush();
}

void require(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
}

std::vector<PointedPLMap> random_maps(std::size_t count) {
    testgen::MapGen gen(20260808);
    std::vector<PointedPLMap> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(gen.pointed(4, 64));
    return out;
}

} // namespace

int main() {
    auto maps = random_maps(500);

    criterion(1, "factorization suite: f = t_f o s exactly, sign-preserving lift, t idempotent",
              [&]() {
                  for (const auto& f : maps) {
                      PLMap t = radial_contour_factor(f);
                      PLMap s = meandering_lift(f);
                      require(compose(t, s) == f.map(), "t o s != f");
                      for (const auto& p : s.breakpoints())
                          require(p.x * p.y >= Rat(0), "lift not sign-preserving");
                      require(radial_contour_factor(P(t)) == t, "t_{t_f} != t_f");
                  }
              });

    criterion(2, "definitional oracle agreement: contour points and departure verdicts, two grids",
              [&]() {
                  for (const auto& f : maps) {
                      auto a = contour_points(f);
                      auto b = oracle_contour_points(f, GridSpec{12});
                      require(a.right.size() == b.right.size() &&
                                  a.left.size() == b.left.size(),
                              "contour count mismatch");
                      for (std::size_t i = 0; i < a.right.size(); ++i)
                          require(a.right[i].point == b.right[i].point &&
                                      a.right[i].value == b.right[i].value,
                                  "right contour mismatch");
                      for (std::size_t j = 0; j < a.left.size(); ++j)
                          require(a.left[j].point == b.left[j].point &&
                                      a.left[j].value == b.left[j].value,
                                  "left contour mismatch");
                      for (long d : {12L, 24L}) {
                          auto ws = oracle_radial_departures(f, GridSpec{d});
                          bool opos = false, oneg = false;
                          for (const auto& w : ws) {
                              opos = opos || w.orient == Orientation::positive;
                              oneg = oneg || w.orient == Orientation::negative;
                          }
                          require(opos == radial_departure_exists(f, Orientation::positive)
                                              .has_value(),
                                  "positive verdict disagrees at d=" + std::to_string(d));
                          require(oneg == radial_departure_exists(f, Orientation::negative)
                                              .has_value(),
                                  "negative verdict disagrees at d=" + std::to_string(d));
                      }
                  }
              });

    criterion(3, "stay-right golden instance with properties (1)-(5) exact", [&]() {
        PLMap t = w_map();
        PLMap s = mk({{Rat(0), Rat(1, 2)}, {Rat(1, 2), Rat(-1, 4)}, {Rat(1), Rat(0)}});
        PLMap f = compose(t, s);
        auto lift = stay_right_lift(t, f, s, Rat(0), Rat(1), Rat(-1, 4), Rat(1, 2));
        const PLMap& sh = lift.shat;
        // the three stated golden points
        require(sh(Rat(0)) == Rat(1, 2), "shat(0)");
        require(sh(Rat(1, 2)) == Rat(11, 12), "shat(1/2)");
        require(sh(Rat(1)) == Rat(5, 6), "shat(1)");
        // full canonical form, frozen (the stated 3-point list cannot satisfy
        // property (1): f kinks at 1/3, forcing the breakpoint (1/3, 5/6))
        PLMap frozen = mk({{Rat(0), Rat(1, 2)},
                           {Rat(1, 3), Rat(5, 6)},
                           {Rat(1, 2), Rat(11, 12)},
                           {Rat(1), Rat(5, 6)}},
                          Rat(0), Rat(1));
        require(sh == frozen, "canonical breakpoint list");
        // (1)
        require(oracle_factorization(t, sh, f), "(1) t o shat = f");
        // (2)
        require(sh(Rat(0)) == Rat(1, 2), "(2) shat(a) = y+");
        // (3)
        for (const auto& x : common_partition(sh, s))
            require(sh(x) >= s(x), "(3) shat >= s");
        // (4)
        Rat maxnew(-1);
        for (const auto& x : common_partition(sh, s))
            if (sh(x) != s(x) && sh(x) > maxnew) maxnew = sh(x);
        require(maxnew == Rat(11, 12) && maxnew == L_function(t, Rat(-1, 4)),
                "(4) max new value = L(y-)");
        // (5): largest y in [0, L] with t(y) = f(b)
        Rat best(-1);
        for (const auto& y : preimages(t, f(Rat(1))))
            if (Rat(0) <= y && y <= Rat(11, 12) && y > best) best = y;
        require(sh(Rat(1)) == best, "(5) shat(b)");
    });

    criterion(4, "bridged factor: W chain and frozen fixture reproduce the structure", [&]() {
        auto bw = build_bridged_s(P(w_map()), P(w_map()), P(w_map()));
        require(bw.s_tilde == w_map(), "W chain: s~ = W");
        require(bw.b1.empty() && bw.b2.empty(), "W chain: B1 = B2 = empty");
        require(compose(bw.t1, bw.s_tilde) == compose(w_map(), w_map()),
                "W chain: factorization");
        require(!radial_departure_exists(P(compose(bw.s_tilde, bw.t3)), Orientation::negative)
                     .has_value(),
                "W chain: no negative departures of s~ o t3");

        auto bf = build_bridged_s(P(ex4_f1()), P(ex4_f2()), P(ex4_f3()));
        require(compose(bf.t1, bf.s_tilde) == compose(ex4_f1(), ex4_f2()),
                "fixture: t1 o s~ = f1 o f2");
        require(!radial_departure_exists(P(compose(bf.s_tilde, bf.t3)), Orientation::negative)
                     .has_value(),
                "fixture: no negative departures of s~ o t3");
        require(bf.b1.size() == 1 && bf.b1[0].i == 2, "fixture: B1 = {alpha_2}");
        require(bf.b2.size() == 1 && bf.b2[0].j == 3, "fixture: B2 = {beta_3}");
        // beta_1 and beta_5 are negative left contour points NOT in B2
        require(bf.contour.beta(1).orient == Orientation::negative &&
                    bf.contour.beta(5).orient == Orientation::negative,
                "fixture: beta_1, beta_5 negative");
        require(bf.report.all_pass(), "fixture: verification report");
    });

    criterion(5, "mutation sensitivity: skipping the B1 pass fails verification", [&]() {
        PLMap f1 = ex4_f1(), f2 = ex4_f2(), f3 = ex4_f3();
        PLMap t1 = radial_contour_factor(P(f1));
        PLMap t3 = radial_contour_factor(P(f3));
        PLMap s = compose(meandering_lift(P(f1)), f2);
        BridgedFactor mutant;
        mutant.s_tilde = s;
        mutant.base = s;
        mutant.t1 = t1;
        mutant.t3 = t3;
        mutant.contour = contour_points(P(s));
        auto rep = verify_bridged(mutant, t1, compose(f1, f2), t3);
        require(!rep.all_pass(), "mutant must fail");
        bool with_witness = false;
        for (const auto& c : rep.checks)
            if (!c.pass && c.name.find("negative radial departures") != std::string::npos &&
                !c.detail.empty())
                with_witness = true;
        require(with_witness, "mutant failure must carry a witness");
    });

    criterion(6, "rewire correctness on [W]*5 with the coordinate homeomorphism", [&]() {
        SystemPrefix p;
        for (int i = 0; i < 5; ++i) p.maps.emplace_back(w_map());
        RewireResult r = rewire(p);
        require(r.certificates.certificate, "certificates");
        for (const auto& rep : r.certificates.per_map)
            require(std::string(rep.verdict()) == "positive-only", "positive-only");

        std::vector<Rat> zeros(5, Rat(0));
        auto hz = coordinate_map_h(r, zeros);
        for (const auto& v : hz) require(v == Rat(0), "zero thread maps to zero thread");

        PLMap w = w_map();
        std::vector<Rat> th(5, Rat(0));
        th[4] = Rat(1, 3);
        for (int n = 3; n >= 0; --n) th[n] = w(th[n + 1]);
        auto h = coordinate_map_h(r, th); // verifies the image thread internally
        require(h.size() == 2, "image length");
        require(r.rewired[0](h[1]) == h[0], "image is a thread of the rewired system");
    });

    criterion(7, "simplicial pipeline: tent refinement at the 1/3 thread, budget 8", [&]() {
        auto sys = markov_refine(tent_map(), {Rat(-1), Rat(0), Rat(1)}, 12);
        require(check_simplicial(sys).ok, "markov refinement is simplicial");
        std::vector<Rat> th(13, Rat(1, 3));
        PipelineOutcome out = pipeline(sys, th, 8);
        require(!out.verdict.has_value(), "no degeneracy verdict expected");
        require(out.normalized.has_value(), "normalization present");
        require(check_simplicial(out.normalized->sys).ok, "normalized system simplicial");
        for (const auto& m : out.normalized->sys.maps)
            require(m(Rat(0)) == Rat(0), "zero thread after normalization");
        require(out.schedule.has_value() && out.schedule->indices.size() >= 4, "schedule");
        // schedule invariant, re-verified here at the composed level
        const auto& sp = *out.scheduled;
        for (std::size_t k = 0; k + 1 < sp.size(); ++k) {
            PLMap Fk = sp.maps[k].map();
            PLMap Fkk = compose(Fk, sp.maps[k + 1].map());
            require(radial_contour_factor(P(Fk)) == radial_contour_factor(P(Fkk)),
                    "schedule invariant at k=" + std::to_string(k + 1));
        }
        require(out.rewired.has_value() && out.rewired->certificates.certificate,
                "rewire certificates");
    });

    criterion(8, "property suites: nesting, product rule, lift transfer, separation", [&]() {
        testgen::MapGen gen(424242);

        // nesting of opposite-orientation witnesses
        int instances = 0;
        while (instances < 200) {
            PointedPLMap f = gen.pointed();
            auto ws = representative_witnesses(f);
            bool used = false;
            for (std::size_t a = 0; a < ws.size(); ++a)
                for (std::size_t b = a + 1; b < ws.size(); ++b) {
                    if (ws[a].orient == ws[b].orient) continue;
                    bool nested = (ws[a].x1 < ws[b].x1 && ws[b].x2 < ws[a].x2) ||
                                  (ws[b].x1 < ws[a].x1 && ws[a].x2 < ws[b].x2);
                    require(nested, "nesting violated");
                    used = true;
                }
            if (used) ++instances;
        }

        // composite product rule
        instances = 0;
        while (instances < 200) {
            PointedPLMap f = gen.pointed(4, 16);
            PointedPLMap g = gen.pointed(4, 16);
            PLMap fg = compose(f.map(), g.map());
            auto ws = representative_witnesses(P(fg));
            if (ws.empty()) continue;
            for (const auto& w : ws) {
                auto cls_g = radial_departure_through(g.map(), w.x1, w.x2);
                require(cls_g.has_value(), "composite witness not a g-departure");
                if (*cls_g == Orientation::positive) {
                    auto cls_f = radial_departure_through(f.map(), g(w.x1), g(w.x2));
                    require(cls_f && *cls_f == w.orient, "product rule (positive case)");
                } else {
                    auto cls_f = radial_departure_through(f.map(), g(w.x2), g(w.x1));
                    require(cls_f && *cls_f == opposite(w.orient),
                            "product rule (negative case)");
                }
            }
            ++instances;
        }

        // witness transfer through the lift
        instances = 0;
        while (instances < 200) {
            PointedPLMap f = gen.pointed();
            auto ws = representative_witnesses(f);
            if (ws.empty()) continue;
            PLMap t = radial_contour_factor(f);
            PLMap s = meandering_lift(f);
            for (const auto& w : ws) {
                auto cls_s = radial_departure_through(s, w.x1, w.x2);
                require(cls_s && *cls_s == Orientation::positive, "lift transfer: s");
                require(radial_departure_through(t, s(w.x1), s(w.x2)).has_value(),
                        "lift transfer: t");
            }
            ++instances;
        }

        // separation under contour-preserving composition, over the certified
        // fixture family (hypothesis machine-checked per instance)
        auto family = testgen::ex4_family(100);
        require(family.size() >= 50, "certified family too small");
        int checked = 0;
        auto run_pair = [&](const PLMap& a, const PLMap& b) {
            auto wa = representative_witnesses(P(a));
            for (const auto& wb : representative_witnesses(P(b))) {
                if (wb.orient != Orientation::negative) continue;
                for (const auto& ya : wa) {
                    Rat v2 = b(wb.x2), v1 = b(wb.x1);
                    bool inner = v2 < ya.x1 && ya.x2 < v1;
                    bool outer = ya.x1 < v2 && v2 < Rat(0) && Rat(0) < v1 && v1 < ya.x2;
                    require(inner || outer, "separation violated");
                    ++checked;
                }
            }
        };
        for (const auto& t : family) {
            run_pair(t.f1.map(), t.f2.map());
            run_pair(t.f2.map(), t.f3.map());
        }
        require(checked >= 200, "separation: not enough checked pairs");
    });

    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed\n"
                                : "ACCEPTANCE: " + std::to_string(failures) +
                                      " criterion(s) FAILED\n");
    return failures == 0 ? 0 : 1;
}
