// Independent reference implementations used by the tests. Everything here is
// deliberately written the slow, obvious way and kept separate from the
// library code paths it checks.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "netlay/community.hpp"
#include "netlay/graph.hpp"
#include "netlay/rng.hpp"

namespace oracles {

// Modularity via the full dense e matrix: e[p][q] = ordered adjacent pairs
// (u in p, v in q) / 2M, a_p = sum_q e[p][q], Q = sum_p (e[p][p] - a_p^2).
inline double dense_modularity(const netlay::Graph& g, const netlay::Partition& part) {
    const std::size_t c = part.count;
    double m2 = 2.0 * static_cast<double>(g.edge_count());
    if (m2 == 0.0) return 0.0;
    std::vector<std::vector<double>> e(c, std::vector<double>(c, 0.0));
    for (std::uint32_t u = 0; u < g.node_count(); ++u)
        for (std::uint32_t v : g.adj[u]) e[part.comm[u]][part.comm[v]] += 1.0 / m2;
    double q = 0.0;
    for (std::size_t p = 0; p < c; ++p) {
        double a = 0.0;
        for (std::size_t s = 0; s < c; ++s) a += e[p][s];
        q += e[p][p] - a * a;
    }
    return q;
}

// Calls fn(labels) for every set partition of {0..n-1}, encoded as restricted
// growth strings (labels[i] <= 1 + max(labels[0..i-1])).
inline void for_each_partition(std::uint32_t n,
                               const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
    std::vector<std::uint32_t> labels(n, 0);
    std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t i,
                                                                std::uint32_t max_used) {
        if (i == n) {
            fn(labels);
            return;
        }
        for (std::uint32_t c = 0; c <= max_used + 1 && c < n; ++c) {
            labels[i] = c;
            rec(i + 1, std::max(max_used, c));
        }
    };
    if (n == 0) return;
    labels[0] = 0;
    rec(1, 0);
}

// Maximum modularity over every partition of the graph's nodes. Only viable
// for small n (Bell(8) = 4140).
inline double brute_force_max_modularity(const netlay::Graph& g) {
    double best = -2.0;
    for_each_partition(g.node_count(), [&](const std::vector<std::uint32_t>& labels) {
        auto part = netlay::Partition::from_labels(labels);
        best = std::max(best, dense_modularity(g, part));
    });
    return best;
}

// All-pairs shortest path by Floyd-Warshall; kInf for unreachable.
inline constexpr double kInf = 1e18;
inline std::vector<std::vector<double>> floyd_warshall(const netlay::Graph& g) {
    const std::uint32_t n = g.node_count();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (std::uint32_t i = 0; i < n; ++i) d[i][i] = 0.0;
    for (const auto& [u, v] : g.edges) d[u][v] = d[v][u] = 1.0;
    for (std::uint32_t k = 0; k < n; ++k)
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

// Fraction of nodes explained by the best injective block -> community
// matching (exhaustive; block count must stay small).
inline double best_match_agreement(const std::vector<std::uint32_t>& truth,
                                   const std::vector<std::uint32_t>& found) {
    std::uint32_t blocks = *std::max_element(truth.begin(), truth.end()) + 1;
    std::uint32_t comms = *std::max_element(found.begin(), found.end()) + 1;
    std::vector<std::vector<std::uint32_t>> overlap(blocks,
                                                    std::vector<std::uint32_t>(comms, 0));
    for (std::size_t i = 0; i < truth.size(); ++i) ++overlap[truth[i]][found[i]];

    std::vector<bool> used(comms, false);
    std::function<std::uint32_t(std::uint32_t)> rec = [&](std::uint32_t b) -> std::uint32_t {
        if (b == blocks) return 0;
        std::uint32_t best = 0;
        for (std::uint32_t c = 0; c < comms; ++c) {
            if (used[c]) continue;
            used[c] = true;
            best = std::max(best, overlap[b][c] + rec(b + 1));
            used[c] = false;
        }
        return best;
    };
    return static_cast<double>(rec(0)) / static_cast<double>(truth.size());
}

// Uniform random simple graph on n nodes where each of the n(n-1)/2 pairs is
// an edge with probability p; guaranteed >= 1 edge (retries with new draws).
inline netlay::Graph random_graph(std::uint32_t n, double p, std::uint64_t seed) {
    netlay::Rng rng(seed);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    do {
        edges.clear();
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j)
                if (rng.bernoulli(p)) edges.emplace_back(i, j);
    } while (edges.empty());
    return netlay::Graph::build(n, std::move(edges));
}

// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must bracket.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace oracles
