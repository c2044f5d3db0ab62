#include "netlay/community.hpp"

#include <algorithm>
#include <future>
#include <queue>

#include "netlay/error.hpp"

namespace netlay {

Partition Partition::singletons(std::uint32_t n) {
    Partition p;
    p.comm.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) p.comm[i] = i;
    p.count = n;
    p.sizes.assign(n, 1);
    return p;
}

Partition Partition::from_labels(std::span<const std::uint32_t> labels) {
    Partition p;
    p.comm.resize(labels.size());
    std::unordered_map<std::uint32_t, std::uint32_t> remap;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = remap.emplace(labels[i], p.count);
        if (inserted) {
            ++p.count;
            p.sizes.push_back(0);
        }
        p.comm[i] = it->second;
        ++p.sizes[it->second];
    }
    return p;
}

void Partition::check_invariants() const {
    if (sizes.size() != count) throw Error("partition: sizes/count mismatch");
    std::vector<std::uint32_t> seen(count, 0);
    for (std::uint32_t c : comm) {
        if (c >= count) throw Error("partition: community id out of range");
        ++seen[c];
    }
    std::size_t total = 0;
    for (std::uint32_t c = 0; c < count; ++c) {
        if (seen[c] != sizes[c]) throw Error("partition: size bookkeeping wrong");
        if (seen[c] == 0) throw Error("partition: empty community id");
        total += seen[c];
    }
    if (total != comm.size()) throw Error("partition: sizes do not sum to N");
}

ModularityState ModularityState::build(const Graph& g, const Partition& p) {
    if (p.comm.size() != g.node_count())
        throw ConfigError("partition does not match graph size");
    ModularityState s;
    s.rows_.assign(p.count, {});
    s.diag_.assign(p.count, 0.0);
    s.a_.assign(p.count, 0.0);
    s.alive_.assign(p.count, 1);
    s.live_ = p.count;
    const double m = static_cast<double>(g.edge_count());
    if (m == 0.0) return s; // all fractions zero, Q = 0
    const double half_edge = 1.0 / (2.0 * m);
    for (const auto& [u, v] : g.edges) {
        std::uint32_t cu = p.comm[u];
        std::uint32_t cv = p.comm[v];
        if (cu == cv) {
            s.diag_[cu] += 2.0 * half_edge;
        } else {
            s.rows_[cu][cv] += half_edge;
            s.rows_[cv][cu] += half_edge;
        }
    }
    for (std::uint32_t c = 0; c < p.count; ++c) {
        double a = s.diag_[c];
        for (const auto& [_, e] : s.rows_[c]) a += e;
        s.a_[c] = a;
    }
    s.q_ = s.recompute_q();
    return s;
}

double ModularityState::attachment(std::uint32_t p) const {
    if (!alive(p)) throw ConfigError("attachment: dead community id");
    return a_[p];
}

double ModularityState::edge_fraction(std::uint32_t p, std::uint32_t q) const {
    require_live_pair(p, q == p ? UINT32_MAX : q); // allow p == q for the diagonal
    if (p == q) return diag_[p];
    auto it = rows_[p].find(q);
    return it == rows_[p].end() ? 0.0 : it->second;
}

void ModularityState::require_live_pair(std::uint32_t p, std::uint32_t q) const {
    if (!alive(p)) throw ConfigError("community id " + std::to_string(p) + " is not live");
    if (q == UINT32_MAX) return;
    if (!alive(q)) throw ConfigError("community id " + std::to_string(q) + " is not live");
}

double ModularityState::delta_q(std::uint32_t p, std::uint32_t q) const {
    if (p == q) throw ConfigError("delta_q: equal community ids");
    require_live_pair(p, q);
    auto it = rows_[p].find(q);
    double e_pq = it == rows_[p].end() ? 0.0 : it->second;
    return 2.0 * (e_pq - a_[p] * a_[q]);
}

void ModularityState::merge(std::uint32_t keep, std::uint32_t gone) {
    if (keep == gone) throw ConfigError("merge: equal community ids");
    require_live_pair(keep, gone);
    q_ += delta_q(keep, gone);

    auto& rk = rows_[keep];
    auto& rg = rows_[gone];
    auto it = rk.find(gone);
    double e_kg = it == rk.end() ? 0.0 : it->second;
    if (it != rk.end()) rk.erase(it);
    rg.erase(keep);

    diag_[keep] += diag_[gone] + 2.0 * e_kg;
    a_[keep] += a_[gone];

    // Fold gone's off-diagonal entries into keep, repointing neighbors.
    for (const auto& [r, e] : rg) {
        rk[r] += e;
        auto& rr = rows_[r];
        rr.erase(gone);
        rr[keep] = rk[r];
    }
    // Neighbors of keep that were not neighbors of gone still hold stale
    // mirror values only if e changed; e_kr unchanged for them, nothing to do.
    rg.clear();
    diag_[gone] = 0.0;
    a_[gone] = 0.0;
    alive_[gone] = 0;
    --live_;
}

double ModularityState::recompute_q() const {
    double q = 0.0;
    for (std::uint32_t c = 0; c < alive_.size(); ++c)
        if (alive_[c]) q += diag_[c] - a_[c] * a_[c];
    return q;
}

double modularity(const Graph& g, const Partition& part) {
    if (part.comm.size() != g.node_count())
        throw ConfigError("partition does not match graph size");
    const double m = static_cast<double>(g.edge_count());
    if (m == 0.0) return 0.0;
    std::vector<double> internal(part.count, 0.0);
    std::vector<double> deg(part.count, 0.0);
    for (const auto& [u, v] : g.edges) {
        if (part.comm[u] == part.comm[v]) internal[part.comm[u]] += 1.0;
    }
    for (std::uint32_t i = 0; i < g.node_count(); ++i)
        deg[part.comm[i]] += static_cast<double>(g.degree(i));
    double q = 0.0;
    for (std::uint32_t c = 0; c < part.count; ++c) {
        double e_pp = internal[c] / m;
        double a_p = deg[c] / (2.0 * m);
        q += e_pp - a_p * a_p;
    }
    return q;
}

namespace {

// Heap entry for a candidate merge. Entries go stale when either community's
// row changes; epochs detect that lazily at pop time.
struct Cand {
    double dq;
    std::uint32_t p, q;        // p < q
    std::uint32_t ep, eq;      // epochs at push time
};

struct CandLess {
    bool operator()(const Cand& a, const Cand& b) const {
        if (a.dq != b.dq) return a.dq < b.dq;
        if (a.p != b.p) return a.p > b.p;
        return a.q > b.q;
    }
};

} // namespace

GreedyResult greedy_modularity(const Graph& g) {
    const std::uint32_t n = g.node_count();
    GreedyResult res;
    if (n == 0) {
        res.partition = Partition{};
        res.q_trace.push_back(0.0);
        return res;
    }

    ModularityState state = ModularityState::build(g, Partition::singletons(n));
    std::vector<std::uint32_t> epoch(n, 0);
    std::priority_queue<Cand, std::vector<Cand>, CandLess> heap;

    auto push_pair = [&](std::uint32_t p, std::uint32_t q) {
        if (p > q) std::swap(p, q);
        heap.push(Cand{state.delta_q(p, q), p, q, epoch[p], epoch[q]});
    };
    for (const auto& [u, v] : g.edges) push_pair(u, v);

    res.q_trace.push_back(state.q());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> merges;
    double best_q = state.q();
    std::uint32_t best_step = 0;

    while (!heap.empty()) {
        Cand c = heap.top();
        heap.pop();
        if (!state.alive(c.p) || !state.alive(c.q)) continue;
        if (epoch[c.p] != c.ep || epoch[c.q] != c.eq) continue;

        state.merge(c.p, c.q);
        merges.emplace_back(c.p, c.q);
        res.q_trace.push_back(state.q());
        if (state.q() > best_q) {
            best_q = state.q();
            best_step = static_cast<std::uint32_t>(merges.size());
        }

        ++epoch[c.p];
        ++epoch[c.q];
        for (const auto& [r, _] : state.row(c.p)) push_pair(c.p, r);
    }

    // Rebuild the partition at the best step by replaying merges. Each merge
    // (keep, gone) attaches gone's root to keep; both are roots at that point.
    std::vector<std::uint32_t> parent(n);
    for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
    for (std::uint32_t k = 0; k < best_step; ++k) parent[merges[k].second] = merges[k].first;
    std::vector<std::uint32_t> root(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t r = i;
        while (parent[r] != r) r = parent[r];
        // path compression
        std::uint32_t w = i;
        while (parent[w] != r) {
            std::uint32_t next = parent[w];
            parent[w] = r;
            w = next;
        }
        root[i] = r;
    }
    res.partition = Partition::from_labels(root);
    res.best_step = best_step;
    res.best_q = best_q;
    return res;
}

namespace {

void refine_node(const Graph& g, DendroNode& node, std::uint32_t size_threshold, int depth) {
    if (node.members.size() <= size_threshold) return;
    Graph sub = induced_subgraph(g, node.members);
    GreedyResult res = greedy_modularity(sub);
    if (res.partition.count <= 1 || res.best_q <= 0.0) return;

    node.children.resize(res.partition.count);
    for (std::uint32_t k = 0; k < sub.node_count(); ++k)
        node.children[res.partition.comm[k]].members.push_back(node.members[k]);

    // Sibling subtrees are independent; fan out at shallow depths only.
    if (depth == 0 && node.children.size() > 1) {
        std::vector<std::future<void>> futures;
        futures.reserve(node.children.size());
        for (auto& child : node.children)
            futures.push_back(std::async(std::launch::async, [&g, &child, size_threshold] {
                refine_node(g, child, size_threshold, 1);
            }));
        for (auto& f : futures) f.get();
    } else {
        for (auto& child : node.children) refine_node(g, child, size_threshold, depth + 1);
    }
}

} // namespace

Dendrogram refine_recursive(const Graph& g, const Partition& part, std::uint32_t size_threshold) {
    if (part.comm.size() != g.node_count())
        throw ConfigError("partition does not match graph size");
    Dendrogram d;
    d.top.resize(part.count);
    for (std::uint32_t i = 0; i < g.node_count(); ++i)
        d.top[part.comm[i]].members.push_back(i);

    std::vector<std::future<void>> futures;
    for (auto& node : d.top)
        if (node.members.size() > size_threshold)
            futures.push_back(std::async(std::launch::async, [&g, &node, size_threshold] {
                refine_node(g, node, size_threshold, 0);
            }));
    for (auto& f : futures) f.get();
    return d;
}

std::vector<std::string> Dendrogram::leaf_paths(std::uint32_t node_count) const {
    std::vector<std::string> paths(node_count);
    // Depth-first assignment of dot-joined community id paths.
    struct Frame {
        const DendroNode* node;
        std::string path;
    };
    std::vector<Frame> stack;
    for (std::size_t c = top.size(); c-- > 0;)
        stack.push_back({&top[c], std::to_string(c)});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.node->children.empty()) {
            for (std::uint32_t v : f.node->members) {
                if (v >= node_count) throw Error("dendrogram member out of range");
                paths[v] = f.path;
            }
            continue;
        }
        for (std::size_t c = f.node->children.size(); c-- > 0;)
            stack.push_back({&f.node->children[c], f.path + "." + std::to_string(c)});
    }
    return paths;
}

} // namespace netlay
