#pragma once

#include <ostream>
#include <vector>

#include "crunchfx/simulation.hpp"

namespace crunchfx {

/// CSV with header "t,<label1>,<label2>,...", one row per grid point,
/// values at 10 significant digits, LF line endings. All trajectories
/// must share one grid.
void write_trajectories_csv(const std::vector<Trajectory>& trajectories,
                            std::ostream& sink);

/// Standalone 800x500 SVG, one polyline per series, linear axes scaled
/// to the data extrema with min/max tick labels and a legend. Output is
/// byte-identical for identical input. A flat extent is padded by +/-1.
void render_svg_chart(const std::vector<Trajectory>& trajectories,
                      std::ostream& sink);

}  // namespace crunchfx
