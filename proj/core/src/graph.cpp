#include "netlay/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "netlay/error.hpp"

namespace netlay {

Graph Graph::build(std::uint32_t n,
                   std::vector<std::pair<std::uint32_t, std::uint32_t>> raw_edges,
                   std::vector<std::string> labels) {
    Graph g;
    for (auto& [u, v] : raw_edges) {
        if (u >= n || v >= n) throw Error("edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::erase_if(raw_edges, [](const auto& e) { return e.first == e.second; });
    std::sort(raw_edges.begin(), raw_edges.end());
    raw_edges.erase(std::unique(raw_edges.begin(), raw_edges.end()), raw_edges.end());

    g.edges = std::move(raw_edges);
    g.adj.assign(n, {});
    for (const auto& [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());

    if (labels.empty()) {
        labels.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    } else if (labels.size() != n) {
        throw Error("label count does not match node count");
    }
    g.labels = std::move(labels);
    return g;
}

void Graph::check_invariants() const {
    const std::uint32_t n = node_count();
    if (labels.size() != n) throw Error("invariant: label map size mismatch");
    std::size_t degree_sum = 0;
    for (std::uint32_t u = 0; u < n; ++u) {
        const auto& nbrs = adj[u];
        if (!std::is_sorted(nbrs.begin(), nbrs.end())) throw Error("invariant: adjacency not sorted");
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
            throw Error("invariant: duplicate neighbor");
        for (std::uint32_t v : nbrs) {
            if (v == u) throw Error("invariant: self-loop");
            if (v >= n) throw Error("invariant: neighbor out of range");
            if (!std::binary_search(adj[v].begin(), adj[v].end(), u))
                throw Error("invariant: adjacency not symmetric");
        }
        degree_sum += nbrs.size();
    }
    if (degree_sum != 2 * edge_count()) throw Error("invariant: degree sum != 2M");
    for (const auto& [u, v] : edges)
        if (!(u < v) || v >= n) throw Error("invariant: edge list not canonical");
    if (!std::is_sorted(edges.begin(), edges.end())) throw Error("invariant: edge list not sorted");
}

namespace {

bool is_space(char ch) {
    return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\v' || ch == '\f';
}

} // namespace

namespace {

struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
};

} // namespace

ParseResult parse_edge_list(std::string_view text) {
    ParseResult out;
    std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>> index_of;
    std::vector<std::string> labels;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;

    auto intern = [&](std::string_view token) -> std::uint32_t {
        auto it = index_of.find(token);
        if (it != index_of.end()) return it->second;
        auto idx = static_cast<std::uint32_t>(labels.size());
        labels.emplace_back(token);
        index_of.emplace(labels.back(), idx);
        return idx;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line;
        if (eol == std::string_view::npos) {
            line = text.substr(pos);
            pos = text.size();
        } else {
            line = text.substr(pos, eol - pos);
            pos = eol + 1;
        }
        ++line_no;

        std::string_view tokens[3];
        int ntok = 0;
        std::size_t i = 0;
        while (i < line.size() && ntok <= 2) {
            while (i < line.size() && is_space(line[i])) ++i;
            if (i >= line.size()) break;
            std::size_t start = i;
            while (i < line.size() && !is_space(line[i])) ++i;
            if (ntok < 3) tokens[ntok] = line.substr(start, i - start);
            ++ntok;
        }
        if (ntok == 0) continue;                      // blank line
        if (tokens[0].front() == '#') continue;       // comment
        ++out.report.lines;
        if (ntok != 2)
            throw ParseError("line " + std::to_string(line_no) + ": expected 2 tokens, got " +
                             std::to_string(ntok));
        std::uint32_t u = intern(tokens[0]);
        std::uint32_t v = intern(tokens[1]);
        if (u == v) {
            ++out.report.self_loops_dropped;
            continue;
        }
        pairs.emplace_back(std::min(u, v), std::max(u, v));
    }

    std::size_t raw = pairs.size();
    auto n = static_cast<std::uint32_t>(labels.size());
    out.graph = Graph::build(n, std::move(pairs), std::move(labels));
    out.report.duplicates_merged = raw - out.graph.edge_count();
    if (out.graph.edge_count() == 0) throw ParseError("no edges");
    return out;
}

std::string serialize_edge_list(const Graph& g) {
    std::string out;
    for (const auto& [u, v] : g.edges) {
        out += g.labels[u];
        out += ' ';
        out += g.labels[v];
        out += '\n';
    }
    return out;
}

std::vector<std::uint32_t> connected_components(const Graph& g, std::uint32_t* count) {
    const std::uint32_t n = g.node_count();
    std::vector<std::uint32_t> comp(n, UINT32_MAX);
    std::vector<std::uint32_t> stack;
    std::uint32_t next_id = 0;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (comp[s] != UINT32_MAX) continue;
        comp[s] = next_id;
        stack.push_back(s);
        while (!stack.empty()) {
            std::uint32_t u = stack.back();
            stack.pop_back();
            for (std::uint32_t v : g.adj[u]) {
                if (comp[v] == UINT32_MAX) {
                    comp[v] = next_id;
                    stack.push_back(v);
                }
            }
        }
        ++next_id;
    }
    if (count) *count = next_id;
    return comp;
}

Graph largest_connected_component(const Graph& g) {
    std::uint32_t ncomp = 0;
    auto comp = connected_components(g, &ncomp);
    if (ncomp <= 1) {
        Graph copy = g;
        return copy;
    }
    std::vector<std::uint32_t> size(ncomp, 0);
    std::vector<const std::string*> min_label(ncomp, nullptr);
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
        std::uint32_t c = comp[i];
        ++size[c];
        if (!min_label[c] || g.labels[i] < *min_label[c]) min_label[c] = &g.labels[i];
    }
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < ncomp; ++c) {
        if (size[c] > size[best] ||
            (size[c] == size[best] && *min_label[c] < *min_label[best]))
            best = c;
    }
    std::vector<std::uint32_t> keep;
    keep.reserve(size[best]);
    for (std::uint32_t i = 0; i < g.node_count(); ++i)
        if (comp[i] == best) keep.push_back(i);
    return induced_subgraph(g, keep);
}

Graph induced_subgraph(const Graph& g, std::span<const std::uint32_t> nodes) {
    std::unordered_map<std::uint32_t, std::uint32_t> to_sub;
    to_sub.reserve(nodes.size());
    std::vector<std::string> labels;
    labels.reserve(nodes.size());
    for (std::uint32_t k = 0; k < nodes.size(); ++k) {
        if (nodes[k] >= g.node_count()) throw Error("induced_subgraph: node out of range");
        if (!to_sub.emplace(nodes[k], k).second) throw Error("induced_subgraph: duplicate node");
        labels.push_back(g.labels[nodes[k]]);
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> sub_edges;
    for (const auto& [u, v] : g.edges) {
        auto iu = to_sub.find(u);
        if (iu == to_sub.end()) continue;
        auto iv = to_sub.find(v);
        if (iv == to_sub.end()) continue;
        sub_edges.emplace_back(iu->second, iv->second);
    }
    return Graph::build(static_cast<std::uint32_t>(nodes.size()), std::move(sub_edges),
                        std::move(labels));
}

} // namespace netlay
