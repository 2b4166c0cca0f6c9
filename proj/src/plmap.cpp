#include "zigzag/plmap.hpp"

#include <algorithm>

namespace zigzag {

PLMap::PLMap(std::vector<Breakpoint> pts, Rat cod_lo, Rat cod_hi)
    : pts_(std::move(pts)), cod_lo_(std::move(cod_lo)), cod_hi_(std::move(cod_hi)) {
    if (pts_.empty()) throw DomainError("PLMap needs at least one breakpoint");
    for (std::size_t i = 1; i < pts_.size(); ++i)
        if (!(pts_[i - 1].x < pts_[i].x))
            throw DomainError("PLMap breakpoints must have strictly increasing x");
    if (!(cod_lo_ <= cod_hi_)) throw DomainError("PLMap codomain interval is empty");
    for (const auto& p : pts_)
        if (p.y < cod_lo_ || p.y > cod_hi_)
            throw DomainError("PLMap breakpoint value " + p.y.str() +
                              " outside declared codomain [" + cod_lo_.str() + "," +
                              cod_hi_.str() + "]");
}

Rat PLMap::operator()(const Rat& x) const {
    if (!in_domain(x))
        throw DomainError("evaluate: " + x.str() + " outside domain [" +
                          domain_lo().str() + "," + domain_hi().str() + "]");
    // first breakpoint with pts_[i].x >= x
    auto it = std::lower_bound(pts_.begin(), pts_.end(), x,
                               [](const Breakpoint& b, const Rat& v) { return b.x < v; });
    if (it->x == x) return it->y;
    const Breakpoint& hi = *it;
    const Breakpoint& lo = *(it - 1);
    return lo.y + (hi.y - lo.y) * (x - lo.x) / (hi.x - lo.x);
}

bool PLMap::operator==(const PLMap& o) const {
    return canonicalize(*this).breakpoints() == canonicalize(o).breakpoints();
}

PLMap canonicalize(const PLMap& f) {
    const auto& in = f.breakpoints();
    std::vector<Breakpoint> out;
    out.reserve(in.size());
    for (const auto& p : in) {
        while (out.size() >= 2) {
            const Breakpoint& a = out[out.size() - 2];
            const Breakpoint& b = out[out.size() - 1];
            // b collinear with a and p?
            if ((b.y - a.y) * (p.x - b.x) == (p.y - b.y) * (b.x - a.x))
                out.pop_back();
            else
                break;
        }
        out.push_back(p);
    }
    return PLMap(std::move(out), f.codomain_lo(), f.codomain_hi());
}

PLMap compose(const PLMap& f, const PLMap& g) {
    auto [g_min, g_max] = image(g, g.domain_lo(), g.domain_hi());
    if (g_min < f.domain_lo() || g_max > f.domain_hi())
        throw CompositionError("compose: image of inner map [" + g_min.str() + "," +
                               g_max.str() + "] escapes domain of outer map [" +
                               f.domain_lo().str() + "," + f.domain_hi().str() + "]");

    std::vector<Rat> xs;
    for (const auto& p : g.breakpoints()) xs.push_back(p.x);
    // preimages under g of the outer map's breakpoint x-coordinates
    const auto& gb = g.breakpoints();
    for (std::size_t i = 0; i + 1 < gb.size(); ++i) {
        const Rat& y0 = gb[i].y;
        const Rat& y1 = gb[i + 1].y;
        if (y0 == y1) continue;
        for (const auto& fb : f.breakpoints()) {
            const Rat& c = fb.x;
            if ((y0 < c && c < y1) || (y1 < c && c < y0)) {
                Rat x = gb[i].x + (gb[i + 1].x - gb[i].x) * (c - y0) / (y1 - y0);
                xs.push_back(x);
            }
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<Breakpoint> pts;
    pts.reserve(xs.size());
    for (const auto& x : xs) pts.push_back({x, f(g(x))});
    return canonicalize(PLMap(std::move(pts), f.codomain_lo(), f.codomain_hi()));
}

PLMap reflect(const PLMap& f) {
    std::vector<Breakpoint> pts;
    pts.reserve(f.size());
    const auto& in = f.breakpoints();
    for (auto it = in.rbegin(); it != in.rend(); ++it) pts.push_back({-it->x, it->y});
    return PLMap(std::move(pts), f.codomain_lo(), f.codomain_hi());
}

PLMap restrict(const PLMap& f, const Rat& a, const Rat& b) {
    if (!(a < b) || !f.in_domain(a) || !f.in_domain(b))
        throw DomainError("restrict: bad interval [" + a.str() + "," + b.str() + "]");
    std::vector<Breakpoint> pts;
    pts.push_back({a, f(a)});
    for (const auto& p : f.breakpoints())
        if (a < p.x && p.x < b) pts.push_back(p);
    pts.push_back({b, f(b)});
    return PLMap(std::move(pts), f.codomain_lo(), f.codomain_hi());
}

std::pair<Rat, Rat> image(const PLMap& f, const Rat& a, const Rat& b) {
    if (!(a <= b) || !f.in_domain(a) || !f.in_domain(b))
        throw DomainError("image: bad interval [" + a.str() + "," + b.str() + "]");
    Rat lo = f(a), hi = lo;
    auto take = [&](const Rat& v) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
    };
    take(f(b));
    for (const auto& p : f.breakpoints())
        if (a < p.x && p.x < b) take(p.y);
    return {lo, hi};
}

std::vector<Rat> preimages(const PLMap& f, const Rat& y) {
    std::vector<Rat> out;
    const auto& pts = f.breakpoints();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Rat& x0 = pts[i].x;
        const Rat& x1 = pts[i + 1].x;
        const Rat& y0 = pts[i].y;
        const Rat& y1 = pts[i + 1].y;
        if (y0 == y1) {
            if (y0 == y) {
                out.push_back(x0);
                out.push_back(x1);
            }
            continue;
        }
        if ((y0 <= y && y <= y1) || (y1 <= y && y <= y0))
            out.push_back(x0 + (x1 - x0) * (y - y0) / (y1 - y0));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PLMap invert(const PLMap& f) {
    const auto& pts = f.breakpoints();
    if (pts.size() < 2) throw DomainError("invert: degenerate map");
    bool inc = pts.front().y < pts.back().y;
    std::vector<Breakpoint> out;
    if (inc) {
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (!(pts[i - 1].y < pts[i].y)) throw DomainError("invert: map not strictly monotone");
        for (const auto& p : pts) out.push_back({p.y, p.x});
    } else {
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (!(pts[i - 1].y > pts[i].y)) throw DomainError("invert: map not strictly monotone");
        for (auto it = pts.rbegin(); it != pts.rend(); ++it) out.push_back({it->y, it->x});
    }
    return PLMap(std::move(out), f.domain_lo(), f.domain_hi());
}

std::vector<Rat> common_partition(const PLMap& f, const PLMap& g) {
    if (f.domain_lo() != g.domain_lo() || f.domain_hi() != g.domain_hi())
        throw DomainError("common_partition: domains differ");
    std::vector<Rat> xs;
    for (const auto& p : f.breakpoints()) xs.push_back(p.x);
    for (const auto& p : g.breakpoints()) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

bool same_function(const PLMap& f, const PLMap& g) {
    if (f.domain_lo() != g.domain_lo() || f.domain_hi() != g.domain_hi()) return false;
    for (const auto& x : common_partition(f, g))
        if (f(x) != g(x)) return false;
    return true;
}

PointedPLMap::PointedPLMap(PLMap m) : map_(canonicalize(m)) {
    if (map_.domain_lo() != Rat(-1) || map_.domain_hi() != Rat(1))
        throw DomainError("pointed map must have domain [-1,1]");
    if (map_.codomain_lo() < Rat(-1) || map_.codomain_hi() > Rat(1))
        throw DomainError("pointed map must land in [-1,1]");
    if (!map_(Rat(0)).is_zero())
        throw DomainError("pointed map must fix 0, got f(0) = " + map_(Rat(0)).str());
    auto [llo, lhi] = image(map_, Rat(-1), Rat(0));
    auto [rlo, rhi] = image(map_, Rat(0), Rat(1));
    left_nonconstant_ = llo != lhi;
    right_nonconstant_ = rlo != rhi;
}

} // namespace zigzag
