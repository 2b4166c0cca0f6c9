#pragma once

#include "zigzag/bridging.hpp"

namespace zigzag {

/* A finite prefix of an inverse system on [-1,1]: maps[k] is the bonding map
   from level k+2 down to level k+1 (1-based levels in messages). */
struct SystemPrefix {
    std::vector<PointedPLMap> maps;

    std::size_t size() const { return maps.size(); }
};

/* Per-map orientation census for the zig-zag-free certificate. */
struct OrientationReport {
    bool has_positive = false;
    bool has_negative = false;
    const char* verdict() const {
        if (has_positive && has_negative) return "both";
        if (has_positive) return "positive-only";
        if (has_negative) return "negative-only";
        return "none";
    }
};

struct ZigzagFreeReport {
    std::vector<OrientationReport> per_map;
    bool certificate = true; // no map exhibits both orientations
};

struct RewireResult {
    SystemPrefix original;
    std::vector<PLMap> rewired;                  // s~_n o t_{n+2} for odd n
    std::vector<std::pair<PLMap, PLMap>> factors; // (t_n, s~_n) per odd n
    std::vector<BridgedFactor> bridged;          // full construction records
    ZigzagFreeReport certificates;
    std::vector<std::size_t> trailing_levels;    // levels not consumed by the pass
};

/* Composite prefix along the cut indices: bonding maps f^{n_{i+1}}_{n_i}. */
SystemPrefix compose_schedule(const SystemPrefix& p, const std::vector<std::size_t>& cuts);

/* Drop every level below n0. */
SystemPrefix drop_prefix(const SystemPrefix& p, std::size_t n0);

struct ChainCheck {
    bool ok = true;
    std::size_t first_failure = 0; // 1-based index n with t_{f_n} != t_{f_n o f_{n+1}}
};

/* Exact test of the same-contour hypothesis along the prefix. */
ChainCheck check_same_contour_chain(const SystemPrefix& p);

/* For each odd n with n+2 <= size: build the bridged factor of
   (f_n, f_{n+1}, f_{n+2}) and the rewired bonding map s~_n o t_{n+2},
   certifying the absence of negative radial departures. */
RewireResult rewire(const SystemPrefix& p);

/* The coordinate homeomorphism onto the rewired system: index k picks
   s~_{2k-1} applied to the (2k+1)-st coordinate. Verifies that the input is
   a thread and that the image is a thread of the rewired prefix. */
std::vector<Rat> coordinate_map_h(const RewireResult& r, const std::vector<Rat>& thread);

ZigzagFreeReport check_zigzag_free(const std::vector<PLMap>& maps);

} // namespace zigzag
