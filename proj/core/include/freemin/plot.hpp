#pragma once

#include <string>

#include "freemin/descent.hpp"

namespace freemin {

enum class PlotKind { energy, error };

/// Render a trace series as a self-contained SVG line chart. Energy plots
/// use a linear vertical axis; error plots use log10 with nonpositive
/// values clamped to 1e-16 for display only. Throws IoError when the path
/// cannot be written and std::invalid_argument for an empty trace.
void emit_svg_plot(const EnergyTrace& trace, PlotKind kind, const std::string& path);

/// The chart markup itself, for callers that do their own I/O.
std::string render_svg_plot(const EnergyTrace& trace, PlotKind kind);

}  // namespace freemin
