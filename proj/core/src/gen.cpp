#include "netlay/gen.hpp"

#include <algorithm>

#include "netlay/error.hpp"
#include "netlay/rng.hpp"

namespace netlay {

GeneratedGraph gen_planted_partition(std::uint32_t blocks, std::uint32_t block_size, double p_in,
                                     double p_out, std::uint64_t seed) {
    if (blocks < 1 || block_size < 1) throw ConfigError("planted partition: need blocks, block-size >= 1");
    if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
        throw ConfigError("planted partition: probabilities must be in [0,1]");
    GeneratedGraph g;
    g.n = blocks * block_size;
    g.block.resize(g.n);
    for (std::uint32_t i = 0; i < g.n; ++i) g.block[i] = i / block_size;
    Rng rng(seed);
    for (std::uint32_t i = 0; i < g.n; ++i)
        for (std::uint32_t j = i + 1; j < g.n; ++j) {
            double p = g.block[i] == g.block[j] ? p_in : p_out;
            if (rng.bernoulli(p)) g.edges.emplace_back(i, j);
        }
    return g;
}

GeneratedGraph gen_ring_with_trees(std::uint32_t ring, std::uint32_t tree_nodes,
                                   std::uint64_t seed) {
    if (ring < 3) throw ConfigError("ring-with-trees: ring must have >= 3 nodes");
    GeneratedGraph g;
    g.n = ring + tree_nodes;
    g.edges.reserve(g.n);
    for (std::uint32_t i = 0; i < ring; ++i) g.edges.emplace_back(i, (i + 1) % ring);
    Rng rng(seed);
    for (std::uint32_t i = ring; i < g.n; ++i) {
        auto anchor = static_cast<std::uint32_t>(rng.below(i));
        g.edges.emplace_back(anchor, i);
    }
    return g;
}

GeneratedGraph gen_scale_free(std::uint32_t n, std::uint32_t m_attach, std::uint64_t seed) {
    if (m_attach < 1) throw ConfigError("scale-free: m must be >= 1");
    if (n < m_attach + 1) throw ConfigError("scale-free: need n > m");
    GeneratedGraph g;
    g.n = n;
    Rng rng(seed);
    // Seed clique on the first m+1 nodes, then degree-proportional attachment
    // by sampling endpoints of existing edges.
    std::vector<std::uint32_t> endpoints;
    for (std::uint32_t i = 0; i <= m_attach; ++i)
        for (std::uint32_t j = i + 1; j <= m_attach; ++j) {
            g.edges.emplace_back(i, j);
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    std::vector<std::uint32_t> targets;
    for (std::uint32_t v = m_attach + 1; v < n; ++v) {
        targets.clear();
        while (targets.size() < m_attach) {
            auto t = endpoints[rng.below(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end())
                targets.push_back(t);
        }
        for (std::uint32_t t : targets) {
            g.edges.emplace_back(t, v);
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    return g;
}

} // namespace netlay
