#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "netlay/error.hpp"
#include "netlay/vec.hpp"

namespace netlay {

// One softened inverse-square pair term. Shared by the tree traversal and the
// direct sum so that identical inputs produce identical floating-point results
// term by term.
template <int D>
inline void add_coulomb_term(Vec<D>& acc, const Vec<D>& xi, const Vec<D>& xj, double c_qi,
                             double qj, double eps2) {
    Vec<D> d = xi - xj;
    double r2 = norm2(d) + eps2;
    double inv = 1.0 / std::sqrt(r2);
    double s = c_qi * qj * inv * inv * inv;
    acc += d * s;
}

/// Space-subdivision tree over same-sign point charges (quadtree in 2D,
/// octree in 3D). Each cell stores its total charge and center-of-charge;
/// leaves hold one body each, except exactly-coincident bodies (within the
/// cell merge length), which share a bucket. Immutable after build; concurrent
/// traversals are safe.
template <int D>
class BhTree {
public:
    static constexpr int kChildren = 1 << D;

    /// Builds the tree. merge_eps < 0 selects the default, 1e-12 times the
    /// root box side. Throws ConfigError on empty input, non-finite positions,
    /// or non-positive charges.
    static BhTree build(std::span<const Vec<D>> x, std::span<const double> q,
                        double merge_eps = -1.0) {
        if (x.empty()) throw ConfigError("bh tree: empty input");
        if (x.size() != q.size()) throw ConfigError("bh tree: positions/charges size mismatch");
        Vec<D> lo = x[0], hi = x[0];
        for (const auto& p : x) {
            if (!is_finite(p)) throw ConfigError("bh tree: non-finite position");
            for (int k = 0; k < D; ++k) {
                lo[k] = std::min(lo[k], p[k]);
                hi[k] = std::max(hi[k], p[k]);
            }
        }
        for (double c : q)
            if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("bh tree: charges must be positive");

        BhTree t;
        t.n_ = static_cast<std::uint32_t>(x.size());
        Vec<D> center;
        double extent = 0.0;
        for (int k = 0; k < D; ++k) {
            center[k] = 0.5 * (lo[k] + hi[k]);
            extent = std::max(extent, hi[k] - lo[k]);
        }
        double half = extent > 0.0 ? 0.5 * extent * 1.0000001 : 0.5;
        t.merge_eps_ = merge_eps >= 0.0 ? merge_eps : 2.0 * half * 1e-12;
        t.next_.assign(x.size(), -1);
        t.cells_.push_back(Cell{center, half});
        for (std::uint32_t b = 0; b < t.n_; ++b) t.insert(0, b, x);
        t.accumulate(x, q);
        return t;
    }

    double total_charge() const { return cells_[0].charge; }
    Vec<D> root_charge_center() const { return cells_[0].charge_center; }
    std::size_t cell_count() const { return cells_.size(); }
    std::uint32_t body_count() const { return n_; }

    /// Body indices in depth-first leaf order; every body appears exactly once.
    std::vector<std::uint32_t> leaf_order() const {
        std::vector<std::uint32_t> order;
        order.reserve(n_);
        std::vector<std::int32_t> stack{0};
        while (!stack.empty()) {
            const Cell& cell = cells_[static_cast<std::size_t>(stack.back())];
            stack.pop_back();
            if (cell.internal) {
                for (int k = kChildren; k-- > 0;)
                    if (cell.child[k] >= 0) stack.push_back(cell.child[k]);
            } else {
                for (std::int32_t b = cell.head; b >= 0; b = next_[static_cast<std::size_t>(b)])
                    order.push_back(static_cast<std::uint32_t>(b));
            }
        }
        return order;
    }

    /// Net Coulomb force on body i per the softened inverse-square law,
    /// C q_i sum_j q_j (x_i - x_j) / (|x_i - x_j|^2 + eps^2)^{3/2}.
    /// A cell of side s at distance r from x_i acts as a pseudo-particle at
    /// its center-of-charge when s/r < theta and the cell box does not
    /// contain x_i; theta = 0 therefore reproduces the exact pairwise sum
    /// over the leaves.
    Vec<D> force_on(std::uint32_t i, double theta, double coulomb_c, std::span<const Vec<D>> x,
                    std::span<const double> q, double eps) const {
        if (i >= n_) throw ConfigError("bh force: body index out of range");
        const double c_qi = coulomb_c * q[i];
        const double eps2 = eps * eps;
        const Vec<D>& xi = x[i];
        Vec<D> acc{};
        thread_local std::vector<std::int32_t> stack;
        stack.clear();
        stack.push_back(0);
        while (!stack.empty()) {
            const Cell& cell = cells_[static_cast<std::size_t>(stack.back())];
            stack.pop_back();
            if (!cell.internal) {
                for (std::int32_t b = cell.head; b >= 0; b = next_[static_cast<std::size_t>(b)]) {
                    if (static_cast<std::uint32_t>(b) == i) continue;
                    add_coulomb_term(acc, xi, x[static_cast<std::size_t>(b)], c_qi,
                                     q[static_cast<std::size_t>(b)], eps2);
                }
                continue;
            }
            double r = norm(xi - cell.charge_center);
            if (2.0 * cell.half < theta * r && !contains(cell, xi)) {
                add_coulomb_term(acc, xi, cell.charge_center, c_qi, cell.charge, eps2);
                continue;
            }
            for (int k = kChildren; k-- > 0;)
                if (cell.child[k] >= 0) stack.push_back(cell.child[k]);
        }
        return acc;
    }

private:
    struct Cell {
        Vec<D> center;
        double half = 0.0; // half side length
        double charge = 0.0;
        Vec<D> charge_center;
        std::int32_t child[kChildren] = {}; // valid when internal
        std::int32_t head = -1;             // leaf body chain
        bool internal = false;

        Cell(Vec<D> c, double h) : center(c), half(h) {
            for (auto& ch : child) ch = -1;
        }
    };

    std::vector<Cell> cells_;
    std::vector<std::int32_t> next_;
    std::uint32_t n_ = 0;
    double merge_eps_ = 0.0;

    static bool contains(const Cell& cell, const Vec<D>& p) {
        for (int k = 0; k < D; ++k)
            if (std::abs(p[k] - cell.center[k]) > cell.half) return false;
        return true;
    }

    int octant(const Cell& cell, const Vec<D>& p) const {
        int k = 0;
        for (int d = 0; d < D; ++d)
            if (p[d] >= cell.center[d]) k |= 1 << d;
        return k;
    }

    std::int32_t make_child(std::int32_t parent, int k) {
        Vec<D> c = cells_[static_cast<std::size_t>(parent)].center;
        double h = 0.5 * cells_[static_cast<std::size_t>(parent)].half;
        for (int d = 0; d < D; ++d) c[d] += (k & (1 << d)) ? h : -h;
        cells_.emplace_back(c, h);
        std::int32_t idx = static_cast<std::int32_t>(cells_.size()) - 1;
        cells_[static_cast<std::size_t>(parent)].child[k] = idx;
        return idx;
    }

    void insert(std::int32_t at, std::uint32_t body, std::span<const Vec<D>> x) {
        std::int32_t cur = at;
        while (true) {
            Cell& cell = cells_[static_cast<std::size_t>(cur)];
            if (cell.internal) {
                int k = octant(cell, x[body]);
                std::int32_t ch = cell.child[k];
                if (ch < 0) ch = make_child(cur, k);
                cur = ch;
                continue;
            }
            if (cell.head < 0) {
                cell.head = static_cast<std::int32_t>(body);
                return;
            }
            // Occupied leaf: bucket coincident bodies, otherwise split.
            auto first = static_cast<std::size_t>(cell.head);
            double d2 = norm2(x[body] - x[first]);
            if (2.0 * cell.half <= merge_eps_ || d2 <= merge_eps_ * merge_eps_) {
                next_[body] = -1;
                std::int32_t tail = cell.head;
                while (next_[static_cast<std::size_t>(tail)] >= 0)
                    tail = next_[static_cast<std::size_t>(tail)];
                next_[static_cast<std::size_t>(tail)] = static_cast<std::int32_t>(body);
                return;
            }
            std::int32_t old = cell.head;
            cell.head = -1;
            cell.internal = true;
            std::int32_t cur_idx = cur; // emplace in make_child may reallocate cells_
            for (std::int32_t b = old; b >= 0;) {
                std::int32_t nb = next_[static_cast<std::size_t>(b)];
                next_[static_cast<std::size_t>(b)] = -1;
                insert(cur_idx, static_cast<std::uint32_t>(b), x);
                b = nb;
            }
            // loop continues: descend with the new body
        }
    }

    void accumulate(std::span<const Vec<D>> x, std::span<const double> q) {
        // Children always have larger indices than their parent, so one
        // reverse pass folds charges bottom-up.
        for (std::size_t c = cells_.size(); c-- > 0;) {
            Cell& cell = cells_[c];
            double total = 0.0;
            Vec<D> weighted{};
            if (cell.internal) {
                for (int k = 0; k < kChildren; ++k) {
                    if (cell.child[k] < 0) continue;
                    const Cell& ch = cells_[static_cast<std::size_t>(cell.child[k])];
                    total += ch.charge;
                    weighted += ch.charge_center * ch.charge;
                }
            } else {
                for (std::int32_t b = cell.head; b >= 0; b = next_[static_cast<std::size_t>(b)]) {
                    total += q[static_cast<std::size_t>(b)];
                    weighted += x[static_cast<std::size_t>(b)] * q[static_cast<std::size_t>(b)];
                }
            }
            cell.charge = total;
            cell.charge_center = total > 0.0 ? weighted * (1.0 / total) : cell.center;
        }
    }
};

/// Tree-accelerated Coulomb force on body i (see BhTree::force_on).
template <int D>
inline Vec<D> coulomb_force(const BhTree<D>& tree, std::uint32_t i, double theta, double coulomb_c,
                            std::span<const Vec<D>> x, std::span<const double> q, double eps) {
    return tree.force_on(i, theta, coulomb_c, x, q, eps);
}

/// Exact pairwise Coulomb force on body i, summed in ascending index order.
/// Oracle for the tree traversal.
template <int D>
inline Vec<D> direct_coulomb(std::uint32_t i, double coulomb_c, std::span<const Vec<D>> x,
                             std::span<const double> q, double eps) {
    if (i >= x.size()) throw ConfigError("direct force: body index out of range");
    const double c_qi = coulomb_c * q[i];
    const double eps2 = eps * eps;
    Vec<D> acc{};
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (j == i) continue;
        add_coulomb_term(acc, x[i], x[j], c_qi, q[j], eps2);
    }
    return acc;
}

} // namespace netlay
