#pragma once

#include "zigzag/contour.hpp"

namespace zigzag {

/* Resolution for the brute-force validators: the grid holds every multiple
   of 1/resolution in the interval, every breakpoint of every involved map,
   and every preimage of a breakpoint value. PL extremes live on that grid,
   so the "brute force" checks below are exact, not approximate. */
struct GridSpec {
    long resolution = 16;
};

std::vector<Rat> make_grid(const PLMap& f, const GridSpec& g, const Rat& lo, const Rat& hi);

/* Exhaustive pair test of the pointwise radial-departure definition over the
   grid. Slow by design; used to cross-check the decision procedures. */
std::vector<RadialDepartureWitness> oracle_radial_departures(const PointedPLMap& f,
                                                             const GridSpec& g);

/* Recompute contour points by evaluating the defining quantifier directly
   over the grid departures. Must agree with contour_points(). */
ContourData oracle_contour_points(const PointedPLMap& f, const GridSpec& g = GridSpec{});

/* Exact compose-and-compare on the common refinement. */
bool oracle_factorization(const PLMap& t, const PLMap& s, const PLMap& f);
std::optional<Rat> oracle_factorization_mismatch(const PLMap& t, const PLMap& s,
                                                 const PLMap& f);

} // namespace zigzag
