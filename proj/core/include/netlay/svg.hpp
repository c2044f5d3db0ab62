#pragma once

#include <string>
#include <utility>
#include <vector>

#include "netlay/io.hpp"

namespace netlay {

struct RenderOptions {
    std::string plane = "xy";   // projection plane for 3D layouts: xy, xz, yz
    std::string highlight;      // community path to draw in black; empty = none
    bool draw_edges = false;
    double dot_size = 0.0;      // circle radius in layout units; 0 = auto
    double canvas = 800.0;      // pixel width of the emitted document
};

/// Renders a community-colored dot plot of the layout as an SVG 1.1 document:
/// one circle per node, highlighted community in black, every other node in
/// gray, viewBox fitted to the projected data with a 5% margin. Edges are
/// drawn only when requested (they dominate file size on dense graphs).
///
/// The community table must cover exactly the layout's labels; mismatches
/// raise ConfigError naming up to 10 offending labels. A highlight id that
/// matches no community also raises ConfigError. A node matches the highlight
/// when its path equals it or is nested below it ("3.1" matches "3").
std::string render_svg(const LayoutTable& layout, const CommunityTable& communities,
                       const RenderOptions& options,
                       const std::vector<std::pair<std::string, std::string>>* edge_labels = nullptr);

} // namespace netlay
