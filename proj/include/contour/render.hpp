#pragma once

#include <string>

#include "contour/diagram.hpp"

namespace contour {

struct RenderOptions {
    double size = 480;   // canvas width and height in px
    bool labels = true;  // region ids with circle counts
    int subdivisions = 6;
};

/// Schematic SVG of a diagram. Every connected piece of the singular graph is
/// laid out by a barycentric embedding inside a disk, nested pieces sit in the
/// face that contains them, and closed loops are drawn as circles. Definite
/// folds are solid, indefinite folds dotted, oriented arcs carry an arrowhead
/// and regions or crossings with shaded fibres are filled grey.
std::string render_svg(const SingularDiagram& d, const RenderOptions& opts = {});

}  // namespace contour
