#pragma once

#include <string>
#include <vector>

#include "zigzag/contour.hpp"

namespace zigzag {

enum class PlotRole { base, overlay };

struct PlotStyle {
    std::string base_stroke = "#222222";
    std::string overlay_stroke = "#cc0000"; // the s-hat / s-tilde curve
    std::string axis_stroke = "#bbbbbb";
    std::string marker_fill = "#222222";
    int scale = 240; // pixels per unit; coordinates emitted at 6 decimals
};

/* Deterministic SVG of the given curves over [-1,1]^2: axes, base curves,
   overlays drawn above them, contour points marked on base curves.
   Byte-identical output for identical input. */
std::string plot_svg(const std::vector<std::pair<PLMap, PlotRole>>& maps,
                     const PlotStyle& style = PlotStyle{});

} // namespace zigzag
