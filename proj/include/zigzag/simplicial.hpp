#pragma once

#include <optional>

#include "zigzag/systems.hpp"

namespace zigzag {

/* An inverse-system prefix with finite vertex sets: f_n(S_{n+1}) inside S_n,
   and on each component of the complement of S_{n+1} the map is constant or
   linear with image avoiding S_n. Maps need not fix 0. */
struct SimplicialSystem {
    std::vector<PLMap> maps;          // maps[n-1] = f_n, one fewer than sets
    std::vector<std::vector<Rat>> S;  // S[n-1] = S_n, sorted, contains -1 and 1
};

struct SimplicialCheck {
    bool ok = true;
    std::vector<std::string> failures; // level, component and violated clause
};

SimplicialCheck check_simplicial(const SimplicialSystem& sys);

/* Single-bonding-map entry path: S_{n+1} = f^{-1}(S_n) together with the
   breakpoints of f and the endpoints. S1 must contain the endpoints and all
   breakpoint images of f. depth = number of bonding maps. */
SimplicialSystem markov_refine(const PLMap& f, std::vector<Rat> S1, std::size_t depth);

enum class DegeneracyVerdict {
    endpoint,       // some thread coordinate is an endpoint of the arc
    arc_or_point,   // every vertex set is {-1, 1}
    trivially_flat, // a scheduled composite has a constant side: no radial departures
};
const char* to_string(DegeneracyVerdict v);

struct Normalization {
    SimplicialSystem sys;   // conjugated system, thread moved to zero
    std::vector<PLMap> h;   // the per-level homeomorphisms
};

struct NormalizeResult {
    std::optional<DegeneracyVerdict> verdict;
    std::optional<Normalization> normalized;
};

/* Conjugate the system by PL homeomorphisms with h_n(x_n) = 0, linear on
   every component of the complement of S_n, vertex images spread evenly.
   Degeneracies short-circuit with a verdict. */
NormalizeResult normalize_point(const SimplicialSystem& sys, const std::vector<Rat>& thread);

struct Schedule {
    std::vector<std::size_t> indices; // n_1 = 1 < n_2 < ... < n_K
    std::vector<std::string> keys;    // canonical contour-factor key per stage
};

/* Greedy pigeonhole over radial-contour-factor classes of the composites
   f^m_{n_k}; each stage works inside the previous stage's matched class, so
   the schedule invariant holds by construction (and is re-verified).
   Throws BudgetError with the key census when the depth budget runs out,
   DegenerateSideError when a composite has a constant side. */
Schedule find_schedule(const SimplicialSystem& sys, std::size_t depth_budget);

struct PipelineOutcome {
    std::optional<DegeneracyVerdict> verdict;
    std::optional<Normalization> normalized;
    std::optional<Schedule> schedule;
    std::optional<SystemPrefix> scheduled;
    std::optional<RewireResult> rewired;
};

/* check_simplicial -> normalize_point -> find_schedule -> compose_schedule
   -> rewire, with verdicts short-circuiting. */
PipelineOutcome pipeline(const SimplicialSystem& sys, const std::vector<Rat>& thread,
                         std::size_t depth_budget);

} // namespace zigzag
