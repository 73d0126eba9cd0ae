#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// here deliberately recompute results by brute force and must stay decoupled
// from the library implementations they check.

#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <vector>

#include "meshtrack/mesh.hpp"
#include "meshtrack/metrics.hpp"

namespace testsupport {

using namespace meshtrack;

// Axis-aligned unit cube with corners (+-1, +-1, +-1): 8 vertices, 6 quads,
// 12 edges, every edge shared by exactly 2 quads.
inline SurfaceMesh make_cube() {
    Landmarks vertices = {
        {-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
        {-1, -1, 1},  {1, -1, 1},  {1, 1, 1},  {-1, 1, 1},
    };
    std::vector<Quad> quads = {
        {0, 3, 2, 1},  // z = -1
        {4, 5, 6, 7},  // z = +1
        {0, 1, 5, 4},  // y = -1
        {1, 2, 6, 5},  // x = +1
        {2, 3, 7, 6},  // y = +1
        {3, 0, 4, 7},  // x = -1
    };
    auto topology = std::make_shared<MeshTopology>(8, std::move(quads));
    return make_surface_mesh(std::move(topology), std::move(vertices));
}

// O(V*E) shortest-path oracle over the quad edges; independent of the
// EdgeGraph/Dijkstra path under test.
inline std::vector<double> bellman_ford_distances(const SurfaceMesh& mesh,
                                                  VertexIndex pivot) {
    const std::size_t n = mesh.vertices.size();
    std::vector<std::pair<VertexIndex, VertexIndex>> edges;
    for (const Quad& q : mesh.topology->quads())
        for (int k = 0; k < 4; ++k) edges.emplace_back(q[k], q[(k + 1) % 4]);

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    dist[static_cast<std::size_t>(pivot)] = 0.0;
    for (std::size_t round = 0; round + 1 < n; ++round) {
        bool changed = false;
        for (const auto& [a, b] : edges) {
            const double len = distance(mesh.vertices[static_cast<std::size_t>(a)],
                                        mesh.vertices[static_cast<std::size_t>(b)]);
            if (dist[static_cast<std::size_t>(a)] + len <
                dist[static_cast<std::size_t>(b)]) {
                dist[static_cast<std::size_t>(b)] = dist[static_cast<std::size_t>(a)] + len;
                changed = true;
            }
            if (dist[static_cast<std::size_t>(b)] + len <
                dist[static_cast<std::size_t>(a)]) {
                dist[static_cast<std::size_t>(a)] = dist[static_cast<std::size_t>(b)] + len;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return dist;
}

// Longhand IOD MAD: every quantity recomputed from scratch.
inline double brute_force_iod_mad(const Landmarks& pred, const Landmarks& gt,
                                  const EyeCornerSpec& spec) {
    const Vec3 left_gt = {(gt[spec.left_outer].x + gt[spec.left_inner].x) / 2.0,
                          (gt[spec.left_outer].y + gt[spec.left_inner].y) / 2.0,
                          (gt[spec.left_outer].z + gt[spec.left_inner].z) / 2.0};
    const Vec3 right_gt = {(gt[spec.right_inner].x + gt[spec.right_outer].x) / 2.0,
                           (gt[spec.right_inner].y + gt[spec.right_outer].y) / 2.0,
                           (gt[spec.right_inner].z + gt[spec.right_outer].z) / 2.0};
    const double iod = std::sqrt((right_gt.x - left_gt.x) * (right_gt.x - left_gt.x) +
                                 (right_gt.y - left_gt.y) * (right_gt.y - left_gt.y) +
                                 (right_gt.z - left_gt.z) * (right_gt.z - left_gt.z));
    double total = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double dx = pred[i].x - gt[i].x;
        const double dy = pred[i].y - gt[i].y;
        total += std::sqrt(dx * dx + dy * dy);
    }
    return 100.0 * (total / static_cast<double>(pred.size())) / iod;
}

inline double brute_force_inter_annotator(const std::vector<Landmarks>& annotations,
                                          const EyeCornerSpec& spec) {
    double total = 0.0;
    int pairs = 0;
    for (std::size_t i = 0; i < annotations.size(); ++i)
        for (std::size_t j = 0; j < annotations.size(); ++j)
            if (i != j) {
                total += brute_force_iod_mad(annotations[i], annotations[j], spec);
                ++pairs;
            }
    return total / pairs;
}

inline Landmarks random_landmarks(std::mt19937_64& rng, std::size_t count,
                                  double lo = -100.0, double hi = 100.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Landmarks points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        points.emplace_back(dist(rng), dist(rng), dist(rng));
    return points;
}

// Random connected quad strip: quad k spans vertices {2k, 2k+1, 2k+3, 2k+2}.
inline SurfaceMesh random_quad_strip(std::mt19937_64& rng, int num_quads) {
    const VertexIndex n = static_cast<VertexIndex>(2 * (num_quads + 1));
    std::vector<Quad> quads;
    for (int k = 0; k < num_quads; ++k) {
        const VertexIndex base = static_cast<VertexIndex>(2 * k);
        quads.push_back({base, static_cast<VertexIndex>(base + 1),
                         static_cast<VertexIndex>(base + 3),
                         static_cast<VertexIndex>(base + 2)});
    }
    auto topology = std::make_shared<MeshTopology>(n, std::move(quads));
    return make_surface_mesh(std::move(topology),
                             random_landmarks(rng, static_cast<std::size_t>(n)));
}

}  // namespace testsupport
