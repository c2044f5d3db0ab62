#pragma once

#include <cstdint>
#include <vector>

#include "netlay/community.hpp"
#include "netlay/graph.hpp"

namespace netlay {

/// BFS hop distances from L landmark nodes to every node of a connected
/// graph. dist[k][j] is the distance from landmarks[k] to node j.
struct LandmarkDistances {
    std::vector<std::uint32_t> landmarks;
    std::vector<std::vector<double>> dist;

    std::uint32_t landmark_count() const { return static_cast<std::uint32_t>(landmarks.size()); }
    std::uint32_t node_count() const {
        return dist.empty() ? 0 : static_cast<std::uint32_t>(dist[0].size());
    }
};

/// Exact BFS hop counts from each landmark. Throws ConfigError when the graph
/// is disconnected (pass the largest connected component) or the landmark
/// list is empty/invalid.
LandmarkDistances bfs_distances(const Graph& g, std::vector<std::uint32_t> landmarks);

/// Maxmin (farthest-point) landmark selection: the first landmark is drawn
/// from the seed, each further one maximizes the hop distance to the chosen
/// set (ties to the smallest index). count is clamped to N.
std::vector<std::uint32_t> choose_landmarks(const Graph& g, std::uint32_t count,
                                            std::uint64_t seed);

/// Optional cluster-aware transform: adds `penalty` to every distance whose
/// endpoints lie in different communities, pushing clusters apart in the
/// embedding.
void add_community_penalty(LandmarkDistances& ld, const Partition& part, double penalty);

struct MdsResult {
    std::vector<double> coords; // row-major N x dims_requested
    std::uint32_t dims_requested = 0;
    std::uint32_t dims_used = 0; // < dims_requested when the spectrum degenerates

    double coord(std::uint32_t node, std::uint32_t k) const {
        return coords[static_cast<std::size_t>(node) * dims_requested + k];
    }
};

/// Landmark (pivot) multidimensional scaling: classical MDS of the L x L
/// landmark distance matrix (double centering + top-d eigenpairs), then
/// distance-based triangulation of every node against the landmark frame, so
/// |x_i - x_j| approximates the hop distance. Coordinates are in hop units.
/// With fewer than d usable eigenvalues the embedding uses what is available
/// and pads the remaining coordinates with zeros (dims_used reports it).
/// Throws ConfigError when L < d + 1.
MdsResult landmark_mds(const LandmarkDistances& ld, std::uint32_t dims);

/// Sum of squared misfits (|x_k - x_m| - delta_km)^2 over landmark pairs.
double landmark_stress(const LandmarkDistances& ld, const MdsResult& mds);

/// Rescales coordinates in place so the mean edge length equals
/// target_spacing. No-op when the graph has no edges or the layout is
/// degenerate.
void scale_to_mean_edge(MdsResult& mds, const Graph& g, double target_spacing);

} // namespace netlay
