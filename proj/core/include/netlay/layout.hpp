#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "netlay/bh_tree.hpp"
#include "netlay/error.hpp"
#include "netlay/graph.hpp"
#include "netlay/parallel.hpp"
#include "netlay/rng.hpp"
#include "netlay/vec.hpp"

namespace netlay {

/// Physical and numerical constants of the relaxation.
///
/// The physics defaults (mass, charge, friction, spring_k, rest_length) are
/// the parameter set that produced the reference large-graph layouts:
/// m = 1.0, q = 2.7e-3, gamma = 2.7, K = 8.4e-2, l = 7.2e-6.
struct SimParams {
    double coulomb = 1.0;        // C
    double spring_k = 8.4e-2;    // K
    double rest_length = 7.2e-6; // natural spring length
    double friction = 2.7;       // gamma
    double mass = 1.0;
    double charge = 2.7e-3;
    double dt;                   // default: 0.01 * sqrt(mass / spring_k)
    double theta = 0.5;          // Barnes-Hut opening angle
    double softening = 0.0;      // 0 = derive from configuration extent
    std::uint32_t max_steps = 5000;
    double v_stop = 1e-4;        // quasi-equilibrium speed threshold
    std::uint64_t seed = 1;

    SimParams() { dt = 0.01 * std::sqrt(mass / spring_k); }

    void validate() const {
        if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
        if (friction < 0.0) throw ConfigError("friction must be >= 0");
        if (spring_k < 0.0) throw ConfigError("spring constant must be >= 0");
        if (rest_length < 0.0) throw ConfigError("rest length must be >= 0");
        if (coulomb < 0.0) throw ConfigError("coulomb constant must be >= 0");
        if (!(mass > 0.0)) throw ConfigError("mass must be > 0");
        if (!(charge > 0.0)) throw ConfigError("charge must be > 0");
        if (theta < 0.0) throw ConfigError("theta must be >= 0");
        if (softening < 0.0) throw ConfigError("softening must be >= 0");
        if (!(v_stop > 0.0)) throw ConfigError("v_stop must be > 0");
    }
};

/// Positions, velocities, masses and charges of the N bodies.
template <int D>
struct BodyState {
    std::vector<Vec<D>> x;
    std::vector<Vec<D>> v;
    std::vector<double> m;
    std::vector<double> q;

    std::uint32_t size() const { return static_cast<std::uint32_t>(x.size()); }

    static BodyState from_positions(std::vector<Vec<D>> positions, const SimParams& p) {
        BodyState s;
        s.v.assign(positions.size(), Vec<D>{});
        s.m.assign(positions.size(), p.mass);
        s.q.assign(positions.size(), p.charge);
        s.x = std::move(positions);
        return s;
    }
};

/// Softening default: 1e-3 of the typical node spacing, estimated as
/// bounding-box width over N^(1/d).
template <int D>
double default_softening(std::span<const Vec<D>> x) {
    if (x.empty()) return 0.0;
    Vec<D> lo = x[0], hi = x[0];
    for (const auto& p : x)
        for (int k = 0; k < D; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    double width = 0.0;
    for (int k = 0; k < D; ++k) width = std::max(width, hi[k] - lo[k]);
    if (width <= 0.0) width = 1.0;
    double spacing = width / std::pow(static_cast<double>(x.size()), 1.0 / D);
    return 1e-3 * spacing;
}

template <int D>
double resolved_softening(const SimParams& p, std::span<const Vec<D>> x) {
    return p.softening > 0.0 ? p.softening : default_softening<D>(x);
}

// Direction used for coincident endpoints: unit vector hashed from the index
// pair, negated for the higher-indexed endpoint so the pair still obeys
// action-reaction.
template <int D>
Vec<D> separation_direction(std::uint32_t i, std::uint32_t j) {
    std::uint32_t lo = std::min(i, j), hi = std::max(i, j);
    Rng rng(hash_pair(lo, hi));
    Vec<D> u{};
    double n2 = 0.0;
    do {
        for (int k = 0; k < D; ++k) u[k] = rng.uniform(-1.0, 1.0);
        n2 = norm2(u);
    } while (n2 < 1e-12);
    u *= 1.0 / std::sqrt(n2);
    if (i > j) u *= -1.0;
    return u;
}

/// Hookean force on node i from all incident springs:
/// sum over neighbors j of K (|x_i-x_j| - l) * (x_j-x_i)/|x_i-x_j|.
/// Below `zero_eps` separation the edge direction is replaced by a
/// deterministic pseudo-random unit vector derived from the index pair.
template <int D>
Vec<D> spring_force(const Graph& g, std::span<const Vec<D>> x, double k, double rest_length,
                    std::uint32_t i, double zero_eps) {
    Vec<D> f{};
    for (std::uint32_t j : g.adj[i]) {
        Vec<D> d = x[j] - x[i];
        double r = norm(d);
        if (r < zero_eps) {
            f += separation_direction<D>(i, j) * (k * (r - rest_length));
        } else {
            f += d * (k * (r - rest_length) / r);
        }
    }
    return f;
}

template <int D>
inline Vec<D> friction_force(const Vec<D>& v, double gamma) {
    return v * -gamma;
}

/// Per-node total force: tree-approximated Coulomb repulsion + springs +
/// friction. Parallel over nodes; per-node accumulation order is fixed, so
/// the result does not depend on the worker count.
template <int D>
std::vector<Vec<D>> total_forces(const BodyState<D>& s, const Graph& g, const SimParams& p,
                                 double eps) {
    BhTree<D> tree = BhTree<D>::build(s.x, s.q);
    std::vector<Vec<D>> f(s.size());
    parallel_for(s.size(), [&](std::size_t i) {
        auto u = static_cast<std::uint32_t>(i);
        Vec<D> total = tree.force_on(u, p.theta, p.coulomb, s.x, s.q, eps);
        total += spring_force<D>(g, s.x, p.spring_k, p.rest_length, u, eps);
        total += friction_force(s.v[i], p.friction);
        f[i] = total;
    });
    return f;
}

/// One semi-implicit Euler step: v += dt * F(x, v)/m, then x += dt * v.
/// Throws DivergenceError if any force is non-finite.
template <int D>
void step(BodyState<D>& s, const Graph& g, const SimParams& p) {
    double eps = resolved_softening<D>(p, s.x);
    auto f = total_forces(s, g, p, eps);
    for (std::uint32_t i = 0; i < s.size(); ++i)
        if (!is_finite(f[i]))
            throw DivergenceError("non-finite force on node " + std::to_string(i));
    for (std::uint32_t i = 0; i < s.size(); ++i) {
        s.v[i] += f[i] * (p.dt / s.m[i]);
        s.x[i] += s.v[i] * p.dt;
    }
}

/// Uniform i.i.d. positions in a centered d-cube of the given side length.
template <int D>
std::vector<Vec<D>> random_init(std::uint32_t n, double box_width, std::uint64_t seed) {
    if (n < 1) throw ConfigError("random_init: need at least one node");
    Rng rng(seed);
    std::vector<Vec<D>> x(n);
    for (auto& p : x)
        for (int k = 0; k < D; ++k) p[k] = rng.uniform(-0.5 * box_width, 0.5 * box_width);
    return x;
}

struct Energies {
    double kinetic = 0.0;
    double spring = 0.0;
    double coulomb = 0.0;
    double total() const { return kinetic + spring + coulomb; }
};

/// Kinetic energy, spring potential sum over edges of K/2 (r - l)^2, and the
/// exact pairwise softened Coulomb potential (O(N^2); diagnostic use).
template <int D>
Energies energies(const BodyState<D>& s, const Graph& g, const SimParams& p) {
    double eps = resolved_softening<D>(p, s.x);
    Energies e;
    for (std::uint32_t i = 0; i < s.size(); ++i) e.kinetic += 0.5 * s.m[i] * norm2(s.v[i]);
    for (const auto& [u, v] : g.edges) {
        double r = norm(s.x[u] - s.x[v]);
        double stretch = r - p.rest_length;
        e.spring += 0.5 * p.spring_k * stretch * stretch;
    }
    const double eps2 = eps * eps;
    for (std::uint32_t i = 0; i < s.size(); ++i)
        for (std::uint32_t j = i + 1; j < s.size(); ++j)
            e.coulomb += p.coulomb * s.q[i] * s.q[j] / std::sqrt(norm2(s.x[i] - s.x[j]) + eps2);
    return e;
}

template <int D>
struct RelaxResult {
    BodyState<D> state;
    std::vector<double> kinetic_trace; // kinetic energy after each velocity update
    std::uint32_t steps = 0;           // completed position updates
    double final_max_speed = 0.0;
    bool converged = false;
};

/// Integrates until every node is slower than v_stop or max_steps position
/// updates have run. A configuration already at force balance returns after
/// zero steps of motion. The observer, when set, sees the state after each
/// velocity update (for energy traces).
///
/// Throws DivergenceError when kinetic energy grows more than tenfold over a
/// 100-step window (retry with a smaller dt).
template <int D>
RelaxResult<D> relax(const Graph& g, std::vector<Vec<D>> init, const SimParams& p,
                     const std::function<void(std::uint32_t, const BodyState<D>&)>& observer = {}) {
    p.validate();
    if (init.size() != g.node_count())
        throw ConfigError("relax: initial positions do not match graph size");
    for (const auto& v : init)
        if (!is_finite(v)) throw ConfigError("relax: non-finite initial position");

    SimParams run = p;
    run.softening = resolved_softening<D>(p, init);

    RelaxResult<D> res;
    res.state = BodyState<D>::from_positions(std::move(init), run);
    BodyState<D>& s = res.state;

    double mass_sum = 0.0;
    for (double mi : s.m) mass_sum += mi;
    const double kinetic_floor = 50.0 * mass_sum * run.v_stop * run.v_stop;
    double window_max = 0.0;
    double prev_window_max = 0.0;

    for (std::uint32_t iter = 0; iter < run.max_steps; ++iter) {
        auto f = total_forces(s, g, run, run.softening);
        for (std::uint32_t i = 0; i < s.size(); ++i)
            if (!is_finite(f[i]))
                throw DivergenceError("non-finite force on node " + std::to_string(i));
        double max_speed2 = 0.0;
        double kinetic = 0.0;
        for (std::uint32_t i = 0; i < s.size(); ++i) {
            s.v[i] += f[i] * (run.dt / s.m[i]);
            max_speed2 = std::max(max_speed2, norm2(s.v[i]));
            kinetic += 0.5 * s.m[i] * norm2(s.v[i]);
        }
        res.kinetic_trace.push_back(kinetic);
        res.final_max_speed = std::sqrt(max_speed2);
        if (res.final_max_speed < run.v_stop) {
            res.converged = true;
            return res; // velocities negligible; skip the final position update
        }
        for (std::uint32_t i = 0; i < s.size(); ++i) s.x[i] += s.v[i] * run.dt;
        res.steps = iter + 1;
        if (observer) observer(iter, s); // consistent post-step snapshot

        // Divergence detector: the kinetic-energy envelope growing more than
        // tenfold from one 100-step window to the next. Window maxima ignore
        // the nulls of damped oscillations, and the floor keeps sub-threshold
        // noise from counting; the first window absorbs the release transient.
        window_max = std::max(window_max, kinetic);
        if ((iter + 1) % 100 == 0) {
            if (prev_window_max > 0.0 && window_max > 10.0 * prev_window_max &&
                window_max > kinetic_floor)
                throw DivergenceError("kinetic energy grew more than 10x over 100 steps; "
                                      "retry with a smaller dt");
            prev_window_max = window_max;
            window_max = 0.0;
        }
    }
    return res;
}

} // namespace netlay
