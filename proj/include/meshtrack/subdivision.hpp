#pragma once

#include <memory>
#include <vector>

#include "meshtrack/mesh.hpp"

namespace meshtrack {

namespace detail {

// One Catmull-Clark refinement step. New vertex ids are laid out as
// [original vertices | edge points | face points], so V' = V + E + F.
inline SurfaceMesh catmull_clark_once(const SurfaceMesh& mesh) {
    const MeshTopology& topology = *mesh.topology;
    const EdgeGraph graph = build_edge_graph(topology);
    const auto& quads = topology.quads();
    const std::size_t V = mesh.vertices.size();
    const std::size_t E = graph.edges.size();
    const std::size_t F = quads.size();

    std::vector<Vec3> face_points(F);
    for (std::size_t f = 0; f < F; ++f) {
        Vec3 sum;
        for (int k = 0; k < 4; ++k)
            sum += mesh.vertices[static_cast<std::size_t>(quads[f][k])];
        face_points[f] = sum * 0.25;
    }

    std::vector<Vec3> edge_points(E);
    for (std::size_t e = 0; e < E; ++e) {
        const EdgeGraph::Edge& edge = graph.edges[e];
        const Vec3& a = mesh.vertices[static_cast<std::size_t>(edge.a)];
        const Vec3& b = mesh.vertices[static_cast<std::size_t>(edge.b)];
        if (edge.is_boundary()) {
            edge_points[e] = (a + b) * 0.5;
        } else {
            edge_points[e] = (a + b + face_points[static_cast<std::size_t>(edge.quads[0])] +
                              face_points[static_cast<std::size_t>(edge.quads[1])]) *
                             0.25;
        }
    }

    // Quads incident to each vertex, for the interior vertex rule.
    std::vector<std::vector<std::int32_t>> vertex_quads(V);
    for (std::size_t f = 0; f < F; ++f)
        for (int k = 0; k < 4; ++k)
            vertex_quads[static_cast<std::size_t>(quads[f][k])].push_back(
                static_cast<std::int32_t>(f));

    std::vector<Vec3> updated(V);
    for (std::size_t v = 0; v < V; ++v) {
        const Vec3& old = mesh.vertices[v];
        const auto& incident = graph.adjacency[v];

        std::vector<std::int32_t> boundary_edges;
        for (const auto& nb : incident)
            if (graph.edges[static_cast<std::size_t>(nb.edge)].is_boundary())
                boundary_edges.push_back(nb.edge);

        if (boundary_edges.empty()) {
            // Interior vertex of valence n: (Fbar + 2*Rbar + (n-3)*P) / n
            const double n = static_cast<double>(incident.size());
            Vec3 face_avg;
            for (std::int32_t f : vertex_quads[v])
                face_avg += face_points[static_cast<std::size_t>(f)];
            face_avg = face_avg * (1.0 / static_cast<double>(vertex_quads[v].size()));
            Vec3 mid_avg;
            for (const auto& nb : incident)
                mid_avg += (old + mesh.vertices[static_cast<std::size_t>(nb.vertex)]) * 0.5;
            mid_avg = mid_avg * (1.0 / n);
            updated[v] = (face_avg + mid_avg * 2.0 + old * (n - 3.0)) * (1.0 / n);
        } else if (boundary_edges.size() == 2) {
            // B-spline boundary rule: 1/8 prev + 3/4 self + 1/8 next.
            Vec3 sum;
            for (std::int32_t eid : boundary_edges) {
                const EdgeGraph::Edge& e = graph.edges[static_cast<std::size_t>(eid)];
                const VertexIndex other = (static_cast<std::size_t>(e.a) == v) ? e.b : e.a;
                sum += mesh.vertices[static_cast<std::size_t>(other)];
            }
            updated[v] = old * 0.75 + sum * 0.125;
        } else {
            // Irregular boundary corner (more than two boundary edges): pinned.
            updated[v] = old;
        }
    }

    // Assemble positions: originals, then edge points, then face points.
    Landmarks positions;
    positions.reserve(V + E + F);
    positions.insert(positions.end(), updated.begin(), updated.end());
    positions.insert(positions.end(), edge_points.begin(), edge_points.end());
    positions.insert(positions.end(), face_points.begin(), face_points.end());

    // Edge id lookup per quad corner.
    auto edge_id = [&](VertexIndex a, VertexIndex b) -> std::int32_t {
        for (const auto& nb : graph.adjacency[static_cast<std::size_t>(a)])
            if (nb.vertex == b) return nb.edge;
        throw DomainError("edge lookup failed");  // unreachable for valid topologies
    };

    std::vector<Quad> new_quads;
    new_quads.reserve(4 * F);
    const auto vbase = static_cast<VertexIndex>(V);
    const auto fbase = static_cast<VertexIndex>(V + E);
    for (std::size_t f = 0; f < F; ++f) {
        const Quad& q = quads[f];
        std::array<VertexIndex, 4> eids;
        for (int k = 0; k < 4; ++k)
            eids[static_cast<std::size_t>(k)] =
                vbase + static_cast<VertexIndex>(edge_id(q[k], q[(k + 1) % 4]));
        const VertexIndex fid = fbase + static_cast<VertexIndex>(f);
        for (int k = 0; k < 4; ++k) {
            new_quads.push_back({q[k], eids[static_cast<std::size_t>(k)], fid,
                                 eids[static_cast<std::size_t>((k + 3) % 4)]});
        }
    }

    auto new_topology = std::make_shared<MeshTopology>(
        static_cast<VertexIndex>(positions.size()), std::move(new_quads));
    return SurfaceMesh{std::move(new_topology), std::move(positions)};
}

}  // namespace detail

// Catmull-Clark subdivision. levels = 0 returns the input unchanged; each
// level replaces every quad with 4 quads and grows vertices by V + E + F.
inline SurfaceMesh catmull_clark_subdivide(const SurfaceMesh& mesh, int levels) {
    if (levels < 0) throw DomainError("subdivision level must be non-negative");
    SurfaceMesh out = mesh;
    for (int i = 0; i < levels; ++i) out = detail::catmull_clark_once(out);
    return out;
}

}  // namespace meshtrack
