#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace netlay {

/// Undirected simple graph with dense node indices 0..N-1.
///
/// Invariants: no self-loops, no duplicate edges, adjacency lists sorted and
/// symmetric, `edges` canonical (u < v, sorted), sum of degrees == 2M.
struct Graph {
    std::vector<std::vector<std::uint32_t>> adj;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::string> labels; // dense index -> original identifier

    std::uint32_t node_count() const { return static_cast<std::uint32_t>(adj.size()); }
    std::size_t edge_count() const { return edges.size(); }
    std::size_t degree(std::uint32_t i) const { return adj[i].size(); }

    /// Normalizing constructor: drops self-loops, merges duplicate pairs,
    /// sorts everything into canonical form. `labels` may be empty, in which
    /// case nodes are labeled by their index.
    static Graph build(std::uint32_t n,
                       std::vector<std::pair<std::uint32_t, std::uint32_t>> raw_edges,
                       std::vector<std::string> labels = {});

    /// Checks the structural invariants; throws Error on violation.
    void check_invariants() const;
};

struct ParseReport {
    std::size_t lines = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_merged = 0;
};

struct ParseResult {
    Graph graph;
    ParseReport report;
};

/// Parses line-oriented edge-list text: two whitespace-separated labels per
/// line, '#' starts a comment line, blank lines are skipped. Duplicate and
/// reversed-duplicate lines collapse to one edge; self-loops are dropped and
/// counted in the report. Node indices follow first appearance in the text.
///
/// Throws ParseError on a line with token count != 2 (naming the line number)
/// and on input with no surviving edges ("no edges").
ParseResult parse_edge_list(std::string_view text);

/// Canonical serialization: one "label_u label_v" line per edge with u < v,
/// ordered by index pair. parse(serialize(parse(text))) yields the same
/// label-level edge set as parse(text).
std::string serialize_edge_list(const Graph& g);

/// Component id per node (ids dense, in order of first appearance by node
/// index). `count` receives the number of components.
std::vector<std::uint32_t> connected_components(const Graph& g, std::uint32_t* count = nullptr);

/// Induced subgraph of the largest connected component, densely reindexed
/// (relative node order preserved). Ties between equal-sized components go to
/// the one with the lexicographically smallest minimum original label.
Graph largest_connected_component(const Graph& g);

/// Induced subgraph on `nodes` (must be unique, valid indices). Subgraph node
/// k corresponds to nodes[k]; labels are inherited.
Graph induced_subgraph(const Graph& g, std::span<const std::uint32_t> nodes);

} // namespace netlay
