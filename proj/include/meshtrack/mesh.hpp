#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "meshtrack/errors.hpp"
#include "meshtrack/geometry.hpp"

namespace meshtrack {

using VertexIndex = std::int32_t;
using Quad = std::array<VertexIndex, 4>;

// Immutable quad-mesh connectivity. Construction validates that
//  - every index is in range and the 4 indices of a quad are distinct,
//  - every undirected edge belongs to at most 2 quads,
//  - every vertex appears in at least one quad.
class MeshTopology {
public:
    MeshTopology(VertexIndex num_vertices, std::vector<Quad> quads)
        : num_vertices_(num_vertices), quads_(std::move(quads)) {
        validate();
    }

    VertexIndex num_vertices() const { return num_vertices_; }
    const std::vector<Quad>& quads() const { return quads_; }
    std::size_t num_quads() const { return quads_.size(); }

    bool operator==(const MeshTopology& o) const {
        return num_vertices_ == o.num_vertices_ && quads_ == o.quads_;
    }

private:
    void validate() const {
        if (num_vertices_ <= 0) throw DomainError("topology must have at least one vertex");
        std::vector<char> used(static_cast<std::size_t>(num_vertices_), 0);
        std::map<std::pair<VertexIndex, VertexIndex>, int> edge_count;
        for (std::size_t q = 0; q < quads_.size(); ++q) {
            const Quad& quad = quads_[q];
            for (int k = 0; k < 4; ++k) {
                const VertexIndex v = quad[k];
                if (v < 0 || v >= num_vertices_)
                    throw DomainError("quad " + std::to_string(q) + " references vertex " +
                                      std::to_string(v) + " out of range");
                for (int j = k + 1; j < 4; ++j) {
                    if (quad[j] == v)
                        throw DomainError("quad " + std::to_string(q) +
                                          " has repeated vertex " + std::to_string(v));
                }
                used[static_cast<std::size_t>(v)] = 1;
            }
            for (int k = 0; k < 4; ++k) {
                VertexIndex a = quad[k];
                VertexIndex b = quad[(k + 1) % 4];
                if (a > b) std::swap(a, b);
                int& c = edge_count[{a, b}];
                if (++c > 2)
                    throw DomainError("non-manifold edge (" + std::to_string(a) + "," +
                                      std::to_string(b) + ") shared by more than 2 quads");
            }
        }
        for (VertexIndex v = 0; v < num_vertices_; ++v) {
            if (!used[static_cast<std::size_t>(v)])
                throw DomainError("isolated vertex " + std::to_string(v));
        }
    }

    VertexIndex num_vertices_;
    std::vector<Quad> quads_;
};

using TopologyPtr = std::shared_ptr<const MeshTopology>;

// Per-vertex 3D coordinates bound to a topology.
struct SurfaceMesh {
    TopologyPtr topology;
    Landmarks vertices;
};

inline SurfaceMesh make_surface_mesh(TopologyPtr topology, Landmarks vertices) {
    if (!topology) throw DomainError("surface mesh requires a topology");
    if (vertices.size() != static_cast<std::size_t>(topology->num_vertices()))
        throw DomainError("vertex count " + std::to_string(vertices.size()) +
                          " does not match topology (" +
                          std::to_string(topology->num_vertices()) + ")");
    if (!all_finite(vertices)) throw DomainError("non-finite vertex coordinate");
    return SurfaceMesh{std::move(topology), std::move(vertices)};
}

inline bool same_topology(const SurfaceMesh& a, const SurfaceMesh& b) {
    if (a.topology == b.topology) return true;
    return a.topology && b.topology && *a.topology == *b.topology;
}

// Undirected edge graph over a topology. Immutable once built.
struct EdgeGraph {
    struct Edge {
        VertexIndex a = 0;
        VertexIndex b = 0;
        std::array<std::int32_t, 2> quads{-1, -1};  // incident quad ids
        int quad_count = 0;

        bool is_boundary() const { return quad_count == 1; }
    };

    struct Neighbor {
        VertexIndex vertex;
        std::int32_t edge;
    };

    std::vector<Edge> edges;
    std::vector<std::vector<Neighbor>> adjacency;  // indexed by vertex

    std::size_t num_edges() const { return edges.size(); }

    std::size_t num_boundary_edges() const {
        std::size_t n = 0;
        for (const Edge& e : edges)
            if (e.is_boundary()) ++n;
        return n;
    }
};

inline EdgeGraph build_edge_graph(const MeshTopology& topology) {
    EdgeGraph graph;
    graph.adjacency.resize(static_cast<std::size_t>(topology.num_vertices()));
    std::map<std::pair<VertexIndex, VertexIndex>, std::int32_t> edge_ids;
    const auto& quads = topology.quads();
    for (std::size_t q = 0; q < quads.size(); ++q) {
        for (int k = 0; k < 4; ++k) {
            VertexIndex a = quads[q][k];
            VertexIndex b = quads[q][(k + 1) % 4];
            auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
            auto it = edge_ids.find(key);
            std::int32_t id;
            if (it == edge_ids.end()) {
                id = static_cast<std::int32_t>(graph.edges.size());
                edge_ids.emplace(key, id);
                EdgeGraph::Edge e;
                e.a = key.first;
                e.b = key.second;
                graph.edges.push_back(e);
                graph.adjacency[static_cast<std::size_t>(key.first)].push_back(
                    {key.second, id});
                graph.adjacency[static_cast<std::size_t>(key.second)].push_back(
                    {key.first, id});
            } else {
                id = it->second;
            }
            EdgeGraph::Edge& e = graph.edges[static_cast<std::size_t>(id)];
            e.quads[static_cast<std::size_t>(e.quad_count)] = static_cast<std::int32_t>(q);
            ++e.quad_count;
        }
    }
    return graph;
}

// V - E + F
inline long euler_characteristic(const MeshTopology& topology) {
    const EdgeGraph graph = build_edge_graph(topology);
    return static_cast<long>(topology.num_vertices()) -
           static_cast<long>(graph.num_edges()) + static_cast<long>(topology.num_quads());
}

// Number of closed loops formed by the boundary edges (0 for a closed mesh).
inline std::size_t count_boundary_loops(const EdgeGraph& graph) {
    std::vector<char> visited(graph.edges.size(), 0);
    std::size_t loops = 0;
    for (std::size_t start = 0; start < graph.edges.size(); ++start) {
        if (visited[start] || !graph.edges[start].is_boundary()) continue;
        ++loops;
        // Walk the loop edge by edge.
        std::int32_t edge = static_cast<std::int32_t>(start);
        VertexIndex vertex = graph.edges[start].a;
        while (edge >= 0 && !visited[static_cast<std::size_t>(edge)]) {
            visited[static_cast<std::size_t>(edge)] = 1;
            const EdgeGraph::Edge& e = graph.edges[static_cast<std::size_t>(edge)];
            vertex = (e.a == vertex) ? e.b : e.a;
            std::int32_t next = -1;
            for (const auto& nb : graph.adjacency[static_cast<std::size_t>(vertex)]) {
                if (nb.edge != edge && graph.edges[static_cast<std::size_t>(nb.edge)].is_boundary() &&
                    !visited[static_cast<std::size_t>(nb.edge)]) {
                    next = nb.edge;
                    break;
                }
            }
            edge = next;
        }
    }
    return loops;
}

}  // namespace meshtrack
