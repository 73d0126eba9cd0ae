#pragma once

#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "meshtrack/mesh.hpp"

namespace meshtrack {

// Shortest-path distance from `pivot` to every vertex along mesh edges,
// weighted by Euclidean 3D edge length at the current vertex positions.
// Unreachable vertices get +infinity.
inline std::vector<double> geodesic_distances(const SurfaceMesh& mesh, VertexIndex pivot,
                                              const EdgeGraph& graph) {
    const std::size_t n = mesh.vertices.size();
    if (pivot < 0 || static_cast<std::size_t>(pivot) >= n)
        throw DomainError("pivot vertex " + std::to_string(pivot) + " out of range");

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    dist[static_cast<std::size_t>(pivot)] = 0.0;

    using Entry = std::pair<double, VertexIndex>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
    queue.emplace(0.0, pivot);
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[static_cast<std::size_t>(v)]) continue;  // stale entry
        for (const auto& nb : graph.adjacency[static_cast<std::size_t>(v)]) {
            const double len = distance(mesh.vertices[static_cast<std::size_t>(v)],
                                        mesh.vertices[static_cast<std::size_t>(nb.vertex)]);
            const double cand = d + len;
            if (cand < dist[static_cast<std::size_t>(nb.vertex)]) {
                dist[static_cast<std::size_t>(nb.vertex)] = cand;
                queue.emplace(cand, nb.vertex);
            }
        }
    }
    return dist;
}

inline std::vector<double> geodesic_distances(const SurfaceMesh& mesh, VertexIndex pivot) {
    return geodesic_distances(mesh, pivot, build_edge_graph(*mesh.topology));
}

}  // namespace meshtrack
