#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zigzag/rat.hpp"

namespace zigzag {

enum class Orientation { positive, negative };

inline Orientation opposite(Orientation o) {
    return o == Orientation::positive ? Orientation::negative : Orientation::positive;
}
inline const char* to_string(Orientation o) {
    return o == Orientation::positive ? "positive" : "negative";
}

struct Breakpoint {
    Rat x, y;
    bool operator==(const Breakpoint&) const = default;
};

/* A piecewise-linear map, given by its breakpoints in strictly increasing x.
   Domain is [first x, last x]. The codomain is a declared closed interval
   containing every y; it is metadata checked at construction, never inferred.
   Values are immutable after construction. */
class PLMap {
    std::vector<Breakpoint> pts_;
    Rat cod_lo_, cod_hi_;

public:
    PLMap(std::vector<Breakpoint> pts, Rat cod_lo = Rat(-1), Rat cod_hi = Rat(1));

    const std::vector<Breakpoint>& breakpoints() const { return pts_; }
    std::size_t size() const { return pts_.size(); }

    const Rat& domain_lo() const { return pts_.front().x; }
    const Rat& domain_hi() const { return pts_.back().x; }
    const Rat& codomain_lo() const { return cod_lo_; }
    const Rat& codomain_hi() const { return cod_hi_; }

    bool in_domain(const Rat& x) const { return domain_lo() <= x && x <= domain_hi(); }

    /* Exact linear interpolation. Throws DomainError outside the domain. */
    Rat operator()(const Rat& x) const;

    /* Canonicalized breakpoint-list equality (codomain metadata ignored). */
    bool operator==(const PLMap& o) const;
};

/* f after g, i.e. x -> f(g(x)). Requires image of g inside domain of f. */
PLMap compose(const PLMap& f, const PLMap& g);

/* f(-x): domain negated and reversed. Transports a left side to the right. */
PLMap reflect(const PLMap& f);

/* Clip to [a,b] with interpolated endpoints. */
PLMap restrict(const PLMap& f, const Rat& a, const Rat& b);

/* Drop interior breakpoints collinear with their neighbours. */
PLMap canonicalize(const PLMap& f);

/* Exact min and max of f over [a,b]. */
std::pair<Rat, Rat> image(const PLMap& f, const Rat& a, const Rat& b);

/* Sorted x with f(x) = y. A segment lying entirely at value y contributes
   its clipped endpoints. */
std::vector<Rat> preimages(const PLMap& f, const Rat& y);

/* Inverse of a strictly monotone map (throws DomainError otherwise). */
PLMap invert(const PLMap& f);

/* All breakpoint x-values of f and g merged (common refinement). Domains
   must agree. */
std::vector<Rat> common_partition(const PLMap& f, const PLMap& g);

/* Exact equality as functions on a shared domain. */
bool same_function(const PLMap& f, const PLMap& g);

/* A map of [-1,1] onto itself fixing 0, the ambient object of the whole
   library. Records whether each side is non-constant (the standing
   assumption behind departures and contour factors). */
class PointedPLMap {
    PLMap map_;
    bool left_nonconstant_, right_nonconstant_;

public:
    explicit PointedPLMap(PLMap m);

    const PLMap& map() const { return map_; }
    bool left_nonconstant() const { return left_nonconstant_; }
    bool right_nonconstant() const { return right_nonconstant_; }

    Rat operator()(const Rat& x) const { return map_(x); }
    bool operator==(const PointedPLMap& o) const { return map_ == o.map_; }
};

} // namespace zigzag
