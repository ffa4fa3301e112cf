#pragma once

#include <string>

#include "profilekit/diagram.hpp"

namespace profilekit {

struct SvgOptions {
    double width = 640.0;
    double margin = 24.0;
    double stroke_width = 2.0;
    /// Edge length of cusp glyphs, in stroke widths.
    double cusp_size = 5.0;
};

/// SVG 1.1 drawing of a diagram: under-strands are broken around each crossing by a gap of
/// twice the stroke width, cusps are filled triangles pointing into the zero-angle side.
std::string render_svg(const PlanarDiagram& d, const SvgOptions& options = {});

}  // namespace profilekit
