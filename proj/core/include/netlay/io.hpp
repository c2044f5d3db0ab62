#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netlay/community.hpp"
#include "netlay/graph.hpp"
#include "netlay/vec.hpp"

namespace netlay {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

/// Node positions keyed by label, as stored in layout TSV files
/// ("label\tx\ty[\tz]").
struct LayoutTable {
    std::vector<std::string> labels;
    std::vector<std::array<double, 3>> pos; // unused trailing coordinates are 0
    int dim = 2;
};

template <int D>
std::string format_layout_tsv(std::span<const std::string> labels, std::span<const Vec<D>> x);

LayoutTable parse_layout_tsv(std::string_view text);

/// Community TSV: "label\tpath" with dot-separated community ids per
/// dendrogram level.
std::string format_community_tsv(const Graph& g, const Dendrogram& d);

struct CommunityTable {
    std::vector<std::string> labels;
    std::vector<std::string> paths;
};

CommunityTable parse_community_tsv(std::string_view text);

/// Q trace CSV with header "merge_step,Q"; row k is the modularity after k
/// merges (k = 0 is the singleton start).
std::string format_q_trace_csv(std::span<const double> q_trace);

struct EnergyRow {
    std::uint32_t step;
    double kinetic, spring, coulomb;
};

/// Energy trace CSV with header "step,kinetic,spring,coulomb".
std::string format_energy_csv(std::span<const EnergyRow> rows);

/// Locale-independent shortest-ish float formatting used by all writers.
std::string format_double(double v);

} // namespace netlay
