#pragma once

#include <string>

#include "zigzag/contour.hpp"

namespace zigzag {

/* Construction record of one stay-right lift. Case 1 re-solves into the
   single branch [gamma, L]; case 2 walks the gamma/delta ladders. */
struct StayRightPlan {
    int case_id = 0; // 0: s already nonnegative, 1, 2
    Rat gamma;
    Rat L;
    std::vector<Rat> gammas;    // case 2: gamma_0 .. gamma_{k+1} = L
    std::vector<Rat> deltas;    // case 2: delta_1 .. delta_{k+1}
    std::vector<Rat> crossings; // case 2: x_0 = a .. x_{k+1}
};

namespace detail {
inline PLMap placeholder_map() { return PLMap({Breakpoint{Rat(0), Rat(0)}}); }
} // namespace detail

struct StayRightLift {
    PLMap shat; // on I, into [0,1]
    StayRightPlan plan;
};

/* Rebuild s on I as a map into [0,1] with the same composition against t,
   anchored at s(a) = y+. I is the closed interval with endpoints a and b
   (either order); hypotheses are checked and named on failure. */
StayRightLift stay_right_lift(const PLMap& t, const PLMap& f, const PLMap& s, const Rat& a,
                              const Rat& b, const Rat& y_minus, const Rat& y_plus);

struct BridgeSiteI {
    std::size_t i;
    Rat dom_lo, dom_hi;
    PLMap shat = detail::placeholder_map();
    Rat L_value;        // L(s(alpha_i))
    Rat witness_x1;     // the x < 0 making <x, alpha_i> a negative radial departure
};

struct BridgeSiteII {
    std::size_t j;
    Rat x1, x2;      // the witnesses of conditions (a)-(e)
    Rat w1, w2;      // the t3 departure realizing (a)
    std::size_t partner; // i with (+) inequalities
    Rat dom_lo, dom_hi;
    PLMap shat = detail::placeholder_map();
    Rat L_value; // L(s(beta_j))
};

/* Bridging at a negative right contour point alpha_i of s. */
BridgeSiteI bridging_I(const PLMap& t, const PLMap& f, const PLMap& s, std::size_t i);

/* Bridging at a negative left contour point beta_j of s; i_witness must
   satisfy s(alpha_i) <= s(beta_j) and s(alpha_{i-1}) <= s(beta_{j-1}). */
BridgeSiteII bridging_II(const PLMap& t, const PLMap& f, const PLMap& s, std::size_t j,
                         std::size_t i_witness);

/* Indices i with alpha_i a negative right contour point of s admitting a
   negative radial departure <x, alpha_i>; each membership verified pointwise.
   Returns (index, witness x) pairs. */
std::vector<std::pair<std::size_t, Rat>> compute_B1(const PointedPLMap& s);

struct B2Candidate {
    std::size_t j;
    Rat x1, x2, w1, w2;
    std::size_t partner;
};

/* Indices j whose beta_j admits the (a)-(e) witnesses against the already
   right-bridged s_tilde; refine_level widens the finite candidate search. */
std::vector<B2Candidate> compute_B2(const PointedPLMap& s, const PLMap& s_tilde,
                                    const PLMap& t3, int refine_level = 0);

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct ProvenanceEntry {
    Rat lo, hi;
    std::string tag; // "original" | "bridged-I(i)" | "bridged-II(j)"
};

struct BridgedFactor {
    PLMap s_tilde = detail::placeholder_map();
    PLMap base = detail::placeholder_map(); // s1 o f2 before bridging
    PLMap t1 = detail::placeholder_map(), t3 = detail::placeholder_map();
    ContourData contour; // of base
    std::vector<BridgeSiteI> b1;
    std::vector<BridgeSiteII> b2;
    std::vector<ProvenanceEntry> provenance;
    VerifyReport report;
};

/* The bridged factor of a three-map chain. Checks the contour-equality
   hypotheses, builds s = meandering_lift(f1) o f2, bridges B1 on the right
   and B2 on the left, and verifies every conclusion before returning. */
BridgedFactor build_bridged_s(const PointedPLMap& f1, const PointedPLMap& f2,
                              const PointedPLMap& f3);

/* Independent re-check of a bridged factor: exact factorization, absence of
   negative radial departures of s_tilde o t3, and the four locational facts
   about the departures of s_tilde. */
VerifyReport verify_bridged(const BridgedFactor& bf, const PLMap& t1, const PLMap& f1f2,
                            const PLMap& t3);

/* Splice patch over base on the patch's domain (values must agree at the
   seam). Shared by the bridging passes and the rewiring demo tooling. */
PLMap overlay(const PLMap& base, const PLMap& patch);

} // namespace zigzag
