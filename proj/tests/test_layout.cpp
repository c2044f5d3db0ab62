#include <doctest.h>

#include <cmath>

#include "netlay/error.hpp"
#include "netlay/gen.hpp"
#include "netlay/graph.hpp"
#include "netlay/layout.hpp"
#include "oracles.hpp"

using namespace netlay;

namespace {

Graph two_nodes_one_edge() { return parse_edge_list("a b\n").graph; }

} // namespace

TEST_CASE("spring at its rest length exerts no force") {
    Graph g = two_nodes_one_edge();
    std::vector<Vec2> x = {{{0, 0}}, {{1, 0}}};
    Vec2 f = spring_force<2>(g, x, 1.0, 1.0, 0, 1e-9);
    CHECK(norm(f) == 0.0);
}

TEST_CASE("stretched spring pulls toward the neighbor with magnitude K(r-l)") {
    Graph g = two_nodes_one_edge();
    std::vector<Vec2> x = {{{0, 0}}, {{2, 0}}};
    Vec2 f = spring_force<2>(g, x, 1.0, 1.0, 0, 1e-9);
    CHECK(f[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f[1] == 0.0);
}

TEST_CASE("compressed spring pushes away from the neighbor") {
    Graph g = two_nodes_one_edge();
    std::vector<Vec2> x = {{{0, 0}}, {{0.5, 0}}};
    Vec2 f = spring_force<2>(g, x, 1.0, 1.0, 0, 1e-9);
    CHECK(f[0] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(f[1] == 0.0);
}

TEST_CASE("coincident endpoints get opposite deterministic directions") {
    Graph g = two_nodes_one_edge();
    std::vector<Vec2> x = {{{0.3, 0.3}}, {{0.3, 0.3}}};
    Vec2 f0 = spring_force<2>(g, x, 1.0, 1.0, 0, 1e-6);
    Vec2 f1 = spring_force<2>(g, x, 1.0, 1.0, 1, 1e-6);
    CHECK(norm(f0) == doctest::Approx(1.0).epsilon(1e-12)); // |K (0 - l)| = 1
    CHECK(norm(f0 + f1) <= 1e-15);                          // action-reaction
    CHECK(spring_force<2>(g, x, 1.0, 1.0, 0, 1e-6) == f0);  // deterministic
}

TEST_CASE("friction force") {
    CHECK(norm(friction_force<3>(Vec3{}, 2.0)) == 0.0);
    Vec3 f = friction_force<3>(Vec3{{1, 0, 0}}, 2.0);
    CHECK(f[0] == -2.0);
    CHECK(f[1] == 0.0);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng rng(seed);
        Vec3 v = {{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}};
        Vec3 fr = friction_force<3>(v, 0.7);
        CHECK(dot(fr, v) <= 0.0);
        CHECK(norm(fr + v * 0.7) <= 1e-15);
    }
}

TEST_CASE("free body moves with constant velocity when all forces vanish") {
    Graph g = Graph::build(1, {});
    SimParams p;
    p.friction = 0.0;
    p.dt = 0.1;
    BodyState<3> s = BodyState<3>::from_positions({Vec3{}}, p);
    s.v[0] = {{1.0, 0.0, 0.0}};
    step<3>(s, g, p);
    CHECK(s.x[0][0] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(s.v[0][0] == 1.0);
    CHECK(s.v[0][1] == 0.0);
}

TEST_CASE("friction decay follows (1 - gamma dt / m)^n and the analytic limit") {
    Graph g = Graph::build(1, {});
    SimParams p;
    p.friction = 2.7;
    p.mass = 1.0;
    p.dt = 1e-3 * p.mass / p.friction;
    BodyState<3> s = BodyState<3>::from_positions({Vec3{}}, p);
    double v0 = 0.8;
    s.v[0] = {{v0, 0.0, 0.0}};
    // integrate for t = m / gamma (one decay time)
    auto n = static_cast<std::uint32_t>(std::llround((p.mass / p.friction) / p.dt));
    for (std::uint32_t k = 0; k < n; ++k) step<3>(s, g, p);
    double expected_discrete = v0 * std::pow(1.0 - p.friction * p.dt / p.mass, n);
    double expected_analytic = v0 * std::exp(-1.0);
    CHECK(s.v[0][0] == doctest::Approx(expected_discrete).epsilon(1e-9));
    CHECK(std::abs(s.v[0][0] - expected_analytic) <= 0.01 * expected_analytic);
}

TEST_CASE("two adjacent bodies settle at the root of K(d-l) = C q^2/(d^2+eps^2)") {
    Graph g = two_nodes_one_edge();
    SimParams p;
    p.coulomb = 1.0;
    p.charge = 0.1;
    p.spring_k = 1.0;
    p.rest_length = 0.5;
    p.friction = 1.5;
    p.mass = 1.0;
    p.dt = 0.01;
    p.softening = 1e-3;
    p.v_stop = 1e-9;
    p.max_steps = 100000;
    auto res = relax<2>(g, {Vec2{{0, 0}}, Vec2{{1.2, 0}}}, p);
    REQUIRE(res.converged);
    double d_final = norm(res.state.x[0] - res.state.x[1]);
    double q2 = p.charge * p.charge;
    double d_star = oracles::bisect(
        [&](double d) {
            return p.spring_k * (d - p.rest_length) -
                   p.coulomb * q2 / (d * d + p.softening * p.softening);
        },
        p.rest_length, 10.0);
    CHECK(d_final == doctest::Approx(d_star).epsilon(1e-4));
}

TEST_CASE("relax returns immediately from an exact equilibrium") {
    // two connected bodies placed exactly at the balance distance
    Graph g = two_nodes_one_edge();
    SimParams p;
    p.coulomb = 1.0;
    p.charge = 0.1;
    p.spring_k = 1.0;
    p.rest_length = 0.5;
    p.softening = 1e-3;
    double q2 = p.charge * p.charge;
    double d_star = oracles::bisect(
        [&](double d) {
            return p.spring_k * (d - p.rest_length) -
                   p.coulomb * q2 / (d * d + p.softening * p.softening);
        },
        p.rest_length, 10.0);
    auto res = relax<2>(g, {Vec2{{0, 0}}, Vec2{{d_star, 0}}}, p);
    CHECK(res.converged);
    CHECK(res.steps == 0);
    CHECK(res.state.x[0] == Vec2{{0, 0}});
}

TEST_CASE("three-node path relaxes to a symmetric near-collinear layout") {
    Graph g = parse_edge_list("a b\nb c\n").graph;
    SimParams p;
    p.coulomb = 1.0;
    p.charge = 0.2;
    p.spring_k = 1.0;
    p.rest_length = 0.2;
    p.friction = 1.5;
    p.dt = 0.01;
    p.softening = 1e-3;
    p.v_stop = 1e-7;
    p.max_steps = 200000;
    auto init = random_init<2>(3, 1.0, 42);
    auto res = relax<2>(g, init, p);
    REQUIRE(res.converged);
    double ra = norm(res.state.x[1] - res.state.x[0]);
    double rc = norm(res.state.x[1] - res.state.x[2]);
    CHECK(std::abs(ra - rc) <= 0.1 * std::max(ra, rc));
}

TEST_CASE("planted two-block graph: intra-block distances beat inter-block") {
    auto gen = gen_planted_partition(2, 16, 0.6, 0.05, 7);
    Graph g = gen.to_graph();
    std::uint32_t ncomp = 0;
    connected_components(g, &ncomp);
    REQUIRE(ncomp == 1);
    SimParams p;
    p.max_steps = 4000;
    auto res = relax<3>(g, random_init<3>(g.node_count(), 1.0, 3), p);
    double intra = 0.0, inter = 0.0;
    std::size_t n_intra = 0, n_inter = 0;
    for (std::uint32_t i = 0; i < g.node_count(); ++i)
        for (std::uint32_t j = i + 1; j < g.node_count(); ++j) {
            double d = norm(res.state.x[i] - res.state.x[j]);
            if (gen.block[i] == gen.block[j]) {
                intra += d;
                ++n_intra;
            } else {
                inter += d;
                ++n_inter;
            }
        }
    CHECK(intra / n_intra < inter / n_inter);
}

TEST_CASE("random_init is reproducible and spans the box") {
    auto a = random_init<3>(500, 2.0, 99);
    auto b = random_init<3>(500, 2.0, 99);
    CHECK(a == b);
    auto c = random_init<3>(500, 2.0, 100);
    CHECK(a != c);
    auto one = random_init<2>(1, 2.0, 5);
    CHECK(std::abs(one[0][0]) <= 1.0);
    CHECK(std::abs(one[0][1]) <= 1.0);
}

TEST_CASE("random_init coordinate means sit within 3 sigma of zero") {
    const std::uint32_t n = 10000;
    const double box = 2.0;
    auto x = random_init<3>(n, box, 1234);
    double sigma_mean = box / std::sqrt(12.0 * n);
    for (int k = 0; k < 3; ++k) {
        double mean = 0.0;
        for (const auto& p : x) mean += p[k];
        mean /= n;
        CHECK(std::abs(mean) <= 3.0 * sigma_mean);
    }
}

TEST_CASE("energies: zero velocity means zero kinetic; pair potential = C q^2 / r") {
    Graph g = two_nodes_one_edge();
    SimParams p;
    p.coulomb = 1.0;
    p.charge = 1.0;
    p.spring_k = 0.0;
    p.softening = 1e-30; // effectively unsoftened
    BodyState<2> s = BodyState<2>::from_positions({Vec2{{0, 0}}, Vec2{{1, 0}}}, p);
    Energies e = energies(s, g, p);
    CHECK(e.kinetic == 0.0);
    CHECK(e.coulomb == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.spring == doctest::Approx(0.5 * 0.0).epsilon(1e-12));
}

TEST_CASE("total energy is non-increasing along a relax trajectory") {
    auto gen = gen_planted_partition(2, 10, 0.7, 0.1, 3);
    Graph g = gen.to_graph();
    SimParams p;
    p.max_steps = 1500;
    auto init = random_init<3>(g.node_count(), 1.0, 8);
    p.softening = resolved_softening<3>(p, init);
    std::vector<double> totals;
    auto observer = [&](std::uint32_t, const BodyState<3>& s) {
        totals.push_back(energies(s, g, p).total());
    };
    relax<3>(g, init, p, observer);
    REQUIRE(totals.size() > 100);
    for (std::size_t i = 1; i < totals.size(); ++i)
        CHECK(totals[i] - totals[i - 1] <= 1e-6 * totals[i]);
}

TEST_CASE("momentum is exactly conserved without springs, Coulomb, or friction") {
    Graph g = Graph::build(4, {});
    SimParams p;
    p.coulomb = 0.0;
    p.friction = 0.0;
    p.spring_k = 0.0;
    BodyState<2> s = BodyState<2>::from_positions(random_init<2>(4, 1.0, 3), p);
    Rng rng(5);
    Vec2 momentum{};
    for (auto& v : s.v) {
        v = {{rng.uniform(-1, 1), rng.uniform(-1, 1)}};
        momentum += v * p.mass;
    }
    for (int k = 0; k < 50; ++k) step<2>(s, g, p);
    Vec2 after{};
    for (std::uint32_t i = 0; i < s.size(); ++i) after += s.v[i] * s.m[i];
    CHECK(after == momentum); // bitwise: no force may touch v
}

TEST_CASE("layout is translation covariant at theta = 0") {
    auto gen = gen_planted_partition(2, 6, 0.8, 0.2, 2);
    Graph g = gen.to_graph();
    SimParams p;
    p.theta = 0.0;
    p.max_steps = 300;
    p.v_stop = 1e-12; // keep both runs integrating the same number of steps
    auto init = random_init<2>(g.node_count(), 1.0, 17);
    Vec2 t = {{12.5, -3.25}};
    auto shifted = init;
    for (auto& v : shifted) v += t;
    auto r1 = relax<2>(g, init, p);
    auto r2 = relax<2>(g, shifted, p);
    REQUIRE(r1.steps == r2.steps);
    for (std::uint32_t i = 0; i < g.node_count(); ++i)
        CHECK(norm(r2.state.x[i] - (r1.state.x[i] + t)) <= 1e-6);
}

TEST_CASE("forces equal the negative potential gradient (finite differences)") {
    auto gen = gen_planted_partition(2, 3, 1.0, 0.5, 4);
    Graph g = gen.to_graph();
    SimParams p;
    p.theta = 0.0; // exact Coulomb for the gradient identity
    p.softening = 1e-2;
    p.charge = 0.5;
    p.spring_k = 0.7;
    p.rest_length = 0.3;
    BodyState<2> s = BodyState<2>::from_positions(random_init<2>(g.node_count(), 1.0, 6), p);
    auto f = total_forces(s, g, p, p.softening); // v = 0, so no friction term
    const double h = 1e-6;
    for (std::uint32_t i = 0; i < s.size(); ++i) {
        Vec2 grad{};
        for (int k = 0; k < 2; ++k) {
            double orig = s.x[i][k];
            s.x[i][k] = orig + h;
            double e_plus = energies(s, g, p).total();
            s.x[i][k] = orig - h;
            double e_minus = energies(s, g, p).total();
            s.x[i][k] = orig;
            grad[k] = (e_plus - e_minus) / (2.0 * h);
        }
        CHECK(norm(f[i] + grad) <= 1e-4 * norm(f[i]));
    }
}

TEST_CASE("relax diverges loudly when dt is absurd") {
    auto gen = gen_planted_partition(2, 8, 0.8, 0.1, 1);
    Graph g = gen.to_graph();
    SimParams p;
    p.dt = 1e7;
    CHECK_THROWS_AS(relax<2>(g, random_init<2>(g.node_count(), 1.0, 2), p), DivergenceError);
}

TEST_CASE("relax validates its inputs") {
    Graph g = two_nodes_one_edge();
    SimParams p;
    CHECK_THROWS_AS(relax<2>(g, {Vec2{}}, p), ConfigError); // wrong count
    SimParams bad;
    bad.dt = 0.0;
    CHECK_THROWS_AS(relax<2>(g, {Vec2{}, Vec2{{1, 0}}}, bad), ConfigError);
    std::vector<Vec2> nan_init = {Vec2{{std::nan(""), 0}}, Vec2{{1, 0}}};
    CHECK_THROWS_AS(relax<2>(g, nan_init, p), ConfigError);
}
