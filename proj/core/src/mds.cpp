#include "netlay/mds.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <Eigen/Dense>

#include "netlay/error.hpp"
#include "netlay/parallel.hpp"
#include "netlay/rng.hpp"

namespace netlay {

namespace {

// Single-source BFS hop counts; UINT32_MAX marks unreachable nodes.
std::vector<std::uint32_t> bfs_from(const Graph& g, std::uint32_t src) {
    std::vector<std::uint32_t> dist(g.node_count(), UINT32_MAX);
    std::queue<std::uint32_t> queue;
    dist[src] = 0;
    queue.push(src);
    while (!queue.empty()) {
        std::uint32_t u = queue.front();
        queue.pop();
        for (std::uint32_t v : g.adj[u]) {
            if (dist[v] == UINT32_MAX) {
                dist[v] = dist[u] + 1;
                queue.push(v);
            }
        }
    }
    return dist;
}

} // namespace

LandmarkDistances bfs_distances(const Graph& g, std::vector<std::uint32_t> landmarks) {
    if (landmarks.empty()) throw ConfigError("bfs_distances: no landmarks");
    for (std::uint32_t l : landmarks)
        if (l >= g.node_count()) throw ConfigError("bfs_distances: landmark out of range");

    LandmarkDistances ld;
    ld.landmarks = std::move(landmarks);
    ld.dist.resize(ld.landmarks.size());
    // Independent sources over a read-only graph.
    parallel_for(
        ld.landmarks.size(),
        [&](std::size_t k) {
            auto hops = bfs_from(g, ld.landmarks[k]);
            auto& row = ld.dist[k];
            row.resize(hops.size());
            for (std::size_t j = 0; j < hops.size(); ++j)
                row[j] = hops[j] == UINT32_MAX ? -1.0 : static_cast<double>(hops[j]);
        },
        4);
    for (const auto& row : ld.dist)
        for (double d : row)
            if (d < 0.0)
                throw ConfigError("bfs_distances: graph is disconnected; "
                                  "pass the largest connected component");
    return ld;
}

std::vector<std::uint32_t> choose_landmarks(const Graph& g, std::uint32_t count,
                                            std::uint64_t seed) {
    const std::uint32_t n = g.node_count();
    if (n == 0) throw ConfigError("choose_landmarks: empty graph");
    count = std::min(count, n);
    Rng rng(seed);

    std::vector<std::uint32_t> landmarks;
    landmarks.reserve(count);
    std::vector<std::uint32_t> min_dist(n, UINT32_MAX);

    std::uint32_t next = static_cast<std::uint32_t>(rng.below(n));
    for (std::uint32_t k = 0; k < count; ++k) {
        landmarks.push_back(next);
        auto hops = bfs_from(g, next);
        std::uint32_t best = 0;
        std::uint32_t best_dist = 0;
        for (std::uint32_t j = 0; j < n; ++j) {
            min_dist[j] = std::min(min_dist[j], hops[j]);
            if (min_dist[j] != UINT32_MAX && min_dist[j] > best_dist) {
                best_dist = min_dist[j];
                best = j;
            }
        }
        next = best;
    }
    return landmarks;
}

void add_community_penalty(LandmarkDistances& ld, const Partition& part, double penalty) {
    if (part.comm.size() != ld.node_count())
        throw ConfigError("community penalty: partition does not match distance matrix");
    if (penalty <= 0.0) return;
    for (std::uint32_t k = 0; k < ld.landmark_count(); ++k) {
        std::uint32_t ck = part.comm[ld.landmarks[k]];
        auto& row = ld.dist[k];
        for (std::size_t j = 0; j < row.size(); ++j)
            if (part.comm[j] != ck && j != ld.landmarks[k]) row[j] += penalty;
    }
}

MdsResult landmark_mds(const LandmarkDistances& ld, std::uint32_t dims) {
    const std::uint32_t l = ld.landmark_count();
    const std::uint32_t n = ld.node_count();
    if (dims < 1) throw ConfigError("landmark_mds: dims must be >= 1");
    if (n == 1) {
        MdsResult res;
        res.dims_requested = dims;
        res.dims_used = 0;
        res.coords.assign(dims, 0.0);
        return res; // single node sits at the origin
    }
    if (l < dims + 1)
        throw ConfigError("landmark_mds: need at least dims+1 landmarks, have " +
                          std::to_string(l));

    // Squared landmark-landmark distances, double-centered.
    Eigen::MatrixXd sq(l, l);
    for (std::uint32_t a = 0; a < l; ++a)
        for (std::uint32_t b = 0; b < l; ++b) {
            double d = ld.dist[a][ld.landmarks[b]];
            sq(a, b) = d * d;
        }
    Eigen::VectorXd row_mean = sq.rowwise().mean();
    double grand_mean = row_mean.mean();
    Eigen::MatrixXd b_mat(l, l);
    for (std::uint32_t a = 0; a < l; ++a)
        for (std::uint32_t b = 0; b < l; ++b)
            b_mat(a, b) = -0.5 * (sq(a, b) - row_mean(a) - row_mean(b) + grand_mean);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b_mat);
    if (eig.info() != Eigen::Success) throw Error("landmark_mds: eigendecomposition failed");

    // Eigenvalues come out ascending; keep the top `dims` that are usably
    // positive.
    double lambda_max = eig.eigenvalues()(l - 1);
    double floor = std::max(lambda_max, 0.0) * 1e-12;
    std::vector<int> picked;
    for (int k = static_cast<int>(l) - 1; k >= 0 && picked.size() < dims; --k)
        if (eig.eigenvalues()(k) > floor) picked.push_back(k);

    MdsResult res;
    res.dims_requested = dims;
    res.dims_used = static_cast<std::uint32_t>(picked.size());
    res.coords.assign(static_cast<std::size_t>(n) * dims, 0.0);
    if (picked.empty()) return res; // fully degenerate metric; everything at origin

    // Triangulate every node against the landmark frame:
    // x_j[k] = -(v_k . (delta_j^2 - mean_sq)) / (2 sqrt(lambda_k)).
    // For the landmarks themselves this reproduces their classical MDS
    // coordinates.
    for (std::uint32_t k = 0; k < res.dims_used; ++k) {
        double lambda = eig.eigenvalues()(picked[k]);
        Eigen::VectorXd v = eig.eigenvectors().col(picked[k]);
        double scale = -0.5 / std::sqrt(lambda);
        for (std::uint32_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::uint32_t a = 0; a < l; ++a) {
                double d = ld.dist[a][j];
                acc += v(a) * (d * d - row_mean(a));
            }
            res.coords[static_cast<std::size_t>(j) * dims + k] = scale * acc;
        }
    }
    return res;
}

double landmark_stress(const LandmarkDistances& ld, const MdsResult& mds) {
    const std::uint32_t l = ld.landmark_count();
    double stress = 0.0;
    for (std::uint32_t a = 0; a < l; ++a)
        for (std::uint32_t b = a + 1; b < l; ++b) {
            double d2 = 0.0;
            for (std::uint32_t k = 0; k < mds.dims_requested; ++k) {
                double diff = mds.coord(ld.landmarks[a], k) - mds.coord(ld.landmarks[b], k);
                d2 += diff * diff;
            }
            double misfit = std::sqrt(d2) - ld.dist[a][ld.landmarks[b]];
            stress += misfit * misfit;
        }
    return stress;
}

void scale_to_mean_edge(MdsResult& mds, const Graph& g, double target_spacing) {
    if (g.edge_count() == 0 || target_spacing <= 0.0) return;
    double sum = 0.0;
    for (const auto& [u, v] : g.edges) {
        double d2 = 0.0;
        for (std::uint32_t k = 0; k < mds.dims_requested; ++k) {
            double diff = mds.coord(u, k) - mds.coord(v, k);
            d2 += diff * diff;
        }
        sum += std::sqrt(d2);
    }
    double mean = sum / static_cast<double>(g.edge_count());
    if (mean <= 0.0) return;
    double factor = target_spacing / mean;
    for (double& c : mds.coords) c *= factor;
}

} // namespace netlay
