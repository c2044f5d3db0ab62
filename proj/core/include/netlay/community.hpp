#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netlay/graph.hpp"

namespace netlay {

/// Node -> community assignment with dense community ids 0..count-1.
struct Partition {
    std::vector<std::uint32_t> comm;
    std::uint32_t count = 0;
    std::vector<std::uint32_t> sizes;

    static Partition singletons(std::uint32_t n);

    /// Renumbers arbitrary labels to dense ids in order of first appearance
    /// over node index 0..n-1.
    static Partition from_labels(std::span<const std::uint32_t> labels);

    void check_invariants() const;
};

/// Community-pair edge fractions e_pq, attachments a_p, and the running
/// modularity Q = sum_p (e_pp - a_p^2), maintained incrementally under
/// community merges. The half-edge convention is used: e_pq counts ordered
/// adjacent node pairs divided by 2M, so sum of all e_pq (diagonal included)
/// is 1.
class ModularityState {
public:
    static ModularityState build(const Graph& g, const Partition& p);

    double q() const { return q_; }
    std::uint32_t live_count() const { return live_; }
    bool alive(std::uint32_t p) const { return p < alive_.size() && alive_[p]; }

    /// a_p = sum_q e_pq.
    double attachment(std::uint32_t p) const;
    /// e_pq, zero when no edges join the two communities.
    double edge_fraction(std::uint32_t p, std::uint32_t q) const;

    /// Modularity gain 2*(e_pq - a_p*a_q) of merging p and q.
    /// Throws ConfigError when p == q or either community is dead.
    double delta_q(std::uint32_t p, std::uint32_t q) const;

    /// Merges `gone` into `keep`; q() increases by exactly delta_q(keep, gone).
    void merge(std::uint32_t keep, std::uint32_t gone);

    /// Q recomputed from the current e/a tables (cross-check for the
    /// incrementally maintained value).
    double recompute_q() const;

    const std::unordered_map<std::uint32_t, double>& row(std::uint32_t p) const { return rows_[p]; }

private:
    std::vector<std::unordered_map<std::uint32_t, double>> rows_; // off-diagonal e_pq
    std::vector<double> diag_;                                    // e_pp
    std::vector<double> a_;
    std::vector<char> alive_;
    double q_ = 0.0;
    std::uint32_t live_ = 0;

    void require_live_pair(std::uint32_t p, std::uint32_t q) const;
};

/// Modularity of a partition, computed from scratch: Q = sum_p (e_pp - a_p^2)
/// with a_p = b_p on an undirected graph. Defined as 0 for an edgeless graph.
/// Throws ConfigError when the partition does not cover the graph.
double modularity(const Graph& g, const Partition& part);

struct GreedyResult {
    Partition partition;           // partition at the merge step with maximal Q
    std::vector<double> q_trace;   // q_trace[k] = Q after k merges (k=0: singletons)
    std::uint32_t best_step = 0;   // number of merges applied in `partition`
    double best_q = 0.0;
};

/// Agglomerative modularity maximization: starting from singletons, repeatedly
/// merges the edge-connected community pair with maximal delta_q (ties broken
/// by lexicographically smallest id pair) until no connected pair remains,
/// then returns the partition seen at the Q maximum. Deterministic.
GreedyResult greedy_modularity(const Graph& g);

/// Community hierarchy. Top-level nodes mirror the input partition; children
/// record the sub-partition found by re-optimizing within a community.
struct DendroNode {
    std::vector<std::uint32_t> members; // node ids in the root graph, ascending
    std::vector<DendroNode> children;   // empty = leaf
};

struct Dendrogram {
    std::vector<DendroNode> top;

    /// Per-node path of community ids joined by '.', one entry per node of the
    /// graph the dendrogram was built for (e.g. "3.1").
    std::vector<std::string> leaf_paths(std::uint32_t node_count) const;
};

/// Re-optimizes every community larger than size_threshold on its induced
/// subgraph; a split is kept only when the subgraph's own modularity exceeds
/// 0 and it produces more than one part. Recurses into oversized children.
Dendrogram refine_recursive(const Graph& g, const Partition& part, std::uint32_t size_threshold);

/// Default refinement trigger.
inline constexpr std::uint32_t kDefaultRefineThreshold = 10000;

} // namespace netlay
