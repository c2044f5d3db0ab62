#include "netlay/svg.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "netlay/error.hpp"

namespace netlay {

namespace {

std::pair<int, int> plane_axes(const std::string& plane) {
    if (plane == "xy") return {0, 1};
    if (plane == "xz") return {0, 2};
    if (plane == "yz") return {1, 2};
    throw ConfigError("render: plane must be one of xy, xz, yz");
}

bool path_matches(const std::string& path, const std::string& wanted) {
    if (path == wanted) return true;
    return path.size() > wanted.size() && path.compare(0, wanted.size(), wanted) == 0 &&
           path[wanted.size()] == '.';
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

} // namespace

std::string render_svg(const LayoutTable& layout, const CommunityTable& communities,
                       const RenderOptions& options,
                       const std::vector<std::pair<std::string, std::string>>* edge_labels) {
    auto [ax, ay] = plane_axes(options.plane);

    // The two files must cover the same label set.
    std::unordered_map<std::string, std::size_t> comm_of;
    comm_of.reserve(communities.labels.size());
    for (std::size_t i = 0; i < communities.labels.size(); ++i)
        comm_of.emplace(communities.labels[i], i);

    std::vector<std::string> offenders;
    std::unordered_map<std::string, std::size_t> layout_of;
    layout_of.reserve(layout.labels.size());
    for (std::size_t i = 0; i < layout.labels.size(); ++i) {
        layout_of.emplace(layout.labels[i], i);
        if (offenders.size() < 10 && !comm_of.count(layout.labels[i]))
            offenders.push_back(layout.labels[i]);
    }
    for (const auto& label : communities.labels)
        if (offenders.size() < 10 && !layout_of.count(label)) offenders.push_back(label);
    if (!offenders.empty()) {
        std::string msg = "render: layout and community files cover different labels:";
        for (const auto& o : offenders) msg += " '" + o + "'";
        throw ConfigError(msg);
    }

    std::vector<bool> black(layout.labels.size(), false);
    if (!options.highlight.empty()) {
        std::size_t matched = 0;
        for (std::size_t i = 0; i < layout.labels.size(); ++i) {
            const auto& path = communities.paths[comm_of.at(layout.labels[i])];
            if (path_matches(path, options.highlight)) {
                black[i] = true;
                ++matched;
            }
        }
        if (matched == 0)
            throw ConfigError("render: highlight community '" + options.highlight +
                              "' not present in community file");
    }

    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    for (std::size_t i = 0; i < layout.pos.size(); ++i) {
        double px = layout.pos[i][static_cast<std::size_t>(ax)];
        double py = layout.pos[i][static_cast<std::size_t>(ay)];
        if (i == 0) {
            min_x = max_x = px;
            min_y = max_y = py;
        } else {
            min_x = std::min(min_x, px);
            max_x = std::max(max_x, px);
            min_y = std::min(min_y, py);
            max_y = std::max(max_y, py);
        }
    }
    double span_x = max_x - min_x;
    double span_y = max_y - min_y;
    double extent = std::max(span_x, span_y);
    if (extent <= 0.0) extent = 1.0;
    double margin = 0.05 * extent;
    double vb_x = min_x - margin;
    double vb_y = min_y - margin;
    double vb_w = span_x + 2.0 * margin;
    double vb_h = span_y + 2.0 * margin;
    if (vb_w <= 0.0) vb_w = extent * 0.1;
    if (vb_h <= 0.0) vb_h = extent * 0.1;

    double radius = options.dot_size > 0.0 ? options.dot_size : 0.01 * extent;
    // SVG y grows downward; mirror so the layout keeps its orientation.
    auto flip_y = [&](double y) { return (min_y + max_y) - y; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           format_double(options.canvas) + "\" height=\"" +
           format_double(options.canvas * vb_h / vb_w) + "\" viewBox=\"" + format_double(vb_x) +
           " " + format_double(vb_y) + " " + format_double(vb_w) + " " + format_double(vb_h) +
           "\">\n";

    if (options.draw_edges && edge_labels) {
        out += "<g stroke=\"#cccccc\" stroke-width=\"" + format_double(radius * 0.25) + "\">\n";
        for (const auto& [la, lb] : *edge_labels) {
            auto ia = layout_of.find(la);
            auto ib = layout_of.find(lb);
            if (ia == layout_of.end() || ib == layout_of.end())
                throw ConfigError("render: edge endpoint '" +
                                  (ia == layout_of.end() ? la : lb) + "' missing from layout");
            const auto& pa = layout.pos[ia->second];
            const auto& pb = layout.pos[ib->second];
            out += "<line x1=\"" + format_double(pa[static_cast<std::size_t>(ax)]) + "\" y1=\"" +
                   format_double(flip_y(pa[static_cast<std::size_t>(ay)])) + "\" x2=\"" +
                   format_double(pb[static_cast<std::size_t>(ax)]) + "\" y2=\"" +
                   format_double(flip_y(pb[static_cast<std::size_t>(ay)])) + "\"/>\n";
        }
        out += "</g>\n";
    }

    // Gray first so highlighted nodes stay visible on top.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < layout.pos.size(); ++i) {
            if (black[i] != (pass == 1)) continue;
            out += "<circle cx=\"" + format_double(layout.pos[i][static_cast<std::size_t>(ax)]) +
                   "\" cy=\"" + format_double(flip_y(layout.pos[i][static_cast<std::size_t>(ay)])) +
                   "\" r=\"" + format_double(radius) + "\" fill=\"" +
                   (black[i] ? "#000000" : "#9e9e9e") + "\">" + "<title>" +
                   xml_escape(layout.labels[i]) + "</title></circle>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

} // namespace netlay
