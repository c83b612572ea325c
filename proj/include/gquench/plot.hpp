#pragma once

#include <filesystem>
#include <string>

namespace gquench {

struct RunTable;

struct PlotOptions {
    std::string title;
    bool fit_overlay = false;  ///< add a second panel with the fitted log curve
    double fit_t_min = 1.0;    ///< fit window used for the overlay
    int width = 960;           ///< panel width in px
    int height = 540;          ///< panel height in px
};

/// Renders both entropy trajectories (and optionally the fitted growth curve
/// on a second panel) as a self-contained SVG document. Throws ConfigError
/// when the table is empty.
std::string render_svg(const RunTable& table, const PlotOptions& options = {});

/// Reads a run CSV and writes the rendered SVG atomically.
void emit_plot(const std::filesystem::path& csv, const std::filesystem::path& out,
               const PlotOptions& options = {});

} // namespace gquench
