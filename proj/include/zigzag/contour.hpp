#pragma once

#include <optional>
#include <vector>

#include "zigzag/plmap.hpp"

namespace zigzag {

enum class Side { left, right };
inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

/* One maximal run of record-setting points on one side of a pointed map.
   Right-side runs are the half-open interval (lo, hi]; left-side runs are
   [lo, hi). On a right run f is strictly monotone with the extreme value at
   hi; on a left run the extreme value sits at lo. */
struct DepartureSegment {
    Rat lo, hi;
    Orientation orient;
    Side side;
    Rat lo_value, hi_value; // f at lo and hi (the open end value is a limit)

    /* The record value the run reaches, attained at the closed end. */
    const Rat& extreme_value() const { return side == Side::right ? hi_value : lo_value; }
    const Rat& extreme_point() const { return side == Side::right ? hi : lo; }
};

struct ContourPoint {
    Rat point, value;
    Orientation orient;
};

/* Contour points of both sides, index-aligned with the convention that
   entry 0 is the origin sentinel (point 0, value 0). right[i] is alpha_i,
   left[j] is beta_j. */
struct ContourData {
    std::vector<ContourPoint> right, left;

    std::size_t n() const { return right.size() - 1; }
    std::size_t m() const { return left.size() - 1; }
    const ContourPoint& alpha(std::size_t i) const { return right.at(i); }
    const ContourPoint& beta(std::size_t j) const { return left.at(j); }
};

/* A pair x1 < 0 < x2 whose open interval maps exactly onto the open interval
   between its endpoint values. */
struct RadialDepartureWitness {
    Rat x1, x2;
    Orientation orient;
};

/* Maximal departure runs of one side, in increasing position order.
   The left side is computed through reflect() and mapped back. */
std::vector<DepartureSegment> departures(const PointedPLMap& f, Side side);

/* Contour points of both sides, each verified against the definition. */
ContourData contour_points(const PointedPLMap& f);

/* The zig-zag through the contour values: node i/n -> f(alpha_i) on the
   right, -j/m -> f(beta_j) on the left, linear between, canonical. */
PLMap radial_contour_factor(const PointedPLMap& f);

/* The canonical (pointwise minimal in |s|) sign-preserving s with
   compose(radial_contour_factor(f), s) = f exactly. */
PLMap meandering_lift(const PointedPLMap& f);

/* Decision procedure for existence of a radial departure of the given
   orientation; any returned witness has been re-verified pointwise. */
std::optional<RadialDepartureWitness> radial_departure_exists(const PointedPLMap& f,
                                                              Orientation want);

/* Classify one specific pair against the pointwise definition. */
std::optional<Orientation> radial_departure_through(const PLMap& f, const Rat& x1,
                                                    const Rat& x2);

/* Does f admit a radial departure <w1,w2> of the given orientation with
   f(w1) = v1 and f(w2) = v2? Returns the verified pair if so. Used for the
   value-targeted searches of the bridging machinery. */
std::optional<std::pair<Rat, Rat>> departure_with_values(const PLMap& f, const Rat& v1,
                                                         const Rat& v2, Orientation want);

/* Existence of a radial departure (either orientation unless fixed) with
   x1 >= x1_min and x2 > x2_min. This is the quantifier of the liftable-range
   definition. */
bool exists_departure_beyond(const PLMap& t, const Rat& x1_min, const Rat& x2_min,
                             std::optional<Orientation> want = std::nullopt);

/* Minimal L > 0 with image(t,[0,L]) covering image(t,[y,0]); a right
   departure of t. Throws NotLiftableError when no L works. */
Rat L_function(const PLMap& t, const Rat& y);

/* Definition check: [y-,y+] is a liftable range of t. */
bool is_liftable_range(const PLMap& t, const Rat& y_minus, const Rat& y_plus);

struct LiftableCheck {
    bool hypotheses_hold = false;
    std::string failed; // names the failed hypothesis when !hypotheses_hold
    Rat y_minus, y_plus;
    bool conclusion = false; // is_liftable_range(t, y_minus, y_plus), when applicable
};

/* Hypothesis check for the departure-generated liftable ranges: x a positive
   right departure of s (or 0) with s(x) = y+, s([x,x']) = [y-,y+]. When the
   hypotheses hold the conclusion is asserted via is_liftable_range. */
LiftableCheck liftable_from_departure(const PLMap& t, const PLMap& s, const Rat& x,
                                      const Rat& x_prime);

/* Is x a departure of f on its side (pointwise definition, exact)? */
bool is_departure(const PointedPLMap& f, const Rat& x);
bool is_departure(const PLMap& f, const Rat& x); // pointed data not required

/* Enumerate representative verified witnesses (one per feasible segment
   pair), used by the property suites. */
std::vector<RadialDepartureWitness> representative_witnesses(const PointedPLMap& f);

} // namespace zigzag
