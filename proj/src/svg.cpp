#include "zigzag/svg.hpp"

#include <sstream>

namespace zigzag {

namespace {

std::string px(const Rat& v, int scale) {
    // map [-1,1] to [0, 2*scale]; SVG y-axis grows downward, handled by caller
    return (Rat(scale) * (v + Rat(1))).decimal(6);
}

std::string py(const Rat& v, int scale) { return (Rat(scale) * (Rat(1) - v)).decimal(6); }

} // namespace

std::string plot_svg(const std::vector<std::pair<PLMap, PlotRole>>& maps,
                     const PlotStyle& style) {
    int s = style.scale;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << 2 * s
       << "\" height=\"" << 2 * s << "\" viewBox=\"0 0 " << 2 * s << " " << 2 * s << "\">\n";
    os << "<!-- unit square [-1,1]^2 at " << s << " px per unit, exact rational "
       << "coordinates truncated to 6 decimals -->\n";

    // axes
    os << "<line x1=\"" << px(Rat(-1), s) << "\" y1=\"" << py(Rat(0), s) << "\" x2=\""
       << px(Rat(1), s) << "\" y2=\"" << py(Rat(0), s) << "\" stroke=\"" << style.axis_stroke
       << "\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << px(Rat(0), s) << "\" y1=\"" << py(Rat(-1), s) << "\" x2=\""
       << px(Rat(0), s) << "\" y2=\"" << py(Rat(1), s) << "\" stroke=\"" << style.axis_stroke
       << "\" stroke-width=\"1\"/>\n";
    os << "<rect x=\"" << px(Rat(-1), s) << "\" y=\"" << py(Rat(1), s) << "\" width=\""
       << 2 * s << "\" height=\"" << 2 * s << "\" fill=\"none\" stroke=\""
       << style.axis_stroke << "\" stroke-width=\"1\"/>\n";

    auto polyline = [&](const PLMap& m, const std::string& stroke, int width) {
        os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width
           << "\" points=\"";
        bool first = true;
        for (const auto& p : m.breakpoints()) {
            if (!first) os << " ";
            first = false;
            os << px(p.x, s) << "," << py(p.y, s);
        }
        os << "\"/>\n";
    };

    // base curves below, overlays above
    for (const auto& [m, role] : maps)
        if (role == PlotRole::base) polyline(m, style.base_stroke, 2);

    // contour markers on base curves that qualify as pointed maps
    for (const auto& [m, role] : maps) {
        if (role != PlotRole::base) continue;
        if (m.domain_lo() != Rat(-1) || m.domain_hi() != Rat(1)) continue;
        try {
            ContourData cd = contour_points(PointedPLMap{m});
            for (std::size_t i = 1; i <= cd.n(); ++i)
                os << "<circle cx=\"" << px(cd.alpha(i).point, s) << "\" cy=\""
                   << py(cd.alpha(i).value, s) << "\" r=\"3\" fill=\"" << style.marker_fill
                   << "\"/>\n";
            for (std::size_t j = 1; j <= cd.m(); ++j)
                os << "<circle cx=\"" << px(cd.beta(j).point, s) << "\" cy=\""
                   << py(cd.beta(j).value, s) << "\" r=\"3\" fill=\"" << style.marker_fill
                   << "\"/>\n";
        } catch (const Error&) {
            // not a pointed map (or degenerate side): draw without markers
        }
    }

    for (const auto& [m, role] : maps)
        if (role == PlotRole::overlay) polyline(m, style.overlay_stroke, 2);

    os << "</svg>\n";
    return os.str();
}

} // namespace zigzag
