#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "netlay/graph.hpp"

namespace netlay {

/// Synthetic graph plus, for planted-partition graphs, the ground-truth block
/// of every node.
struct GeneratedGraph {
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::uint32_t> block; // empty unless planted

    Graph to_graph() const { return Graph::build(n, edges); }
};

/// Stochastic block model with equal-size blocks: edge probability p_in
/// inside a block, p_out across blocks. Deterministic per seed.
GeneratedGraph gen_planted_partition(std::uint32_t blocks, std::uint32_t block_size, double p_in,
                                     double p_out, std::uint64_t seed);

/// Cycle of `ring` nodes with `tree_nodes` extra nodes, each hung off a
/// uniformly random earlier node (so the attachments form trees rooted on the
/// ring).
GeneratedGraph gen_ring_with_trees(std::uint32_t ring, std::uint32_t tree_nodes,
                                   std::uint64_t seed);

/// Preferential attachment: each new node links to m_attach distinct existing
/// nodes chosen proportionally to degree.
GeneratedGraph gen_scale_free(std::uint32_t n, std::uint32_t m_attach, std::uint64_t seed);

} // namespace netlay
