#pragma once

#include <string>

#include "auxetica/framework.hpp"

namespace auxetica {

/// SVG 1.1 drawing of a planar framework: a background rect, the unit cell
/// outline, then one <g> per translate (copies x copies of them) holding the
/// bar segments and the vertex disks colored by orbit. Coordinates use six
/// decimals. Throws DimensionError for d != 2.
std::string render_svg(const PeriodicFramework& f, int copies = 2);

/// OBJ-style line set: "v x y z" records for every drawn vertex and bar
/// endpoint of copies^d translates, "l i j" records for the bars. Works for
/// d = 2 (z = 0) and d = 3.
std::string render_obj(const PeriodicFramework& f, int copies = 1);

}  // namespace auxetica
