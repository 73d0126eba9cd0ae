#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <sstream>

#include "meshtrack/geodesic.hpp"
#include "meshtrack/harness.hpp"
#include "test_support.hpp"

using namespace meshtrack;

TEST_CASE("geodesic distance to the pivot itself is zero") {
    const SurfaceMesh cube = testsupport::make_cube();
    const auto dist = geodesic_distances(cube, 0);
    CHECK(dist[0] == 0.0);
}

TEST_CASE("geodesic distance along a unit quad strip") {
    // Strip of 2 quads with unit spacing: vertex 2 edges away from vertex 0.
    Landmarks vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0},
                          {0, 1, 0}, {1, 1, 0}, {2, 1, 0}};
    auto topology =
        std::make_shared<MeshTopology>(6, std::vector<Quad>{{0, 1, 4, 3}, {1, 2, 5, 4}});
    const SurfaceMesh strip = make_surface_mesh(topology, vertices);
    const auto dist = geodesic_distances(strip, 0);
    CHECK(dist[2] == Catch::Approx(2.0).margin(1e-12));
    CHECK(dist[1] == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("geodesics on the unit-spacing 2x2 grid match brute force") {
    // 9 vertices, 12 edges. The brute-force oracle fixes the expected values:
    // corner -> center is 2 unit edges, corner -> opposite corner is 4 (the
    // grid has no diagonal edges).
    const CanonicalMesh grid = make_grid_mesh(3, 3, 1.0, {0.0, 0.0});
    const auto dist = geodesic_distances(grid.mesh, 0);
    const auto oracle = testsupport::bellman_ford_distances(grid.mesh, 0);
    for (std::size_t v = 0; v < dist.size(); ++v)
        CHECK(dist[v] == Catch::Approx(oracle[v]).margin(1e-12));
    CHECK(dist[4] == Catch::Approx(2.0).margin(1e-12));  // center
    CHECK(dist[8] == Catch::Approx(4.0).margin(1e-12));  // opposite corner
}

TEST_CASE("geodesics equal the Bellman-Ford oracle on random meshes") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const SurfaceMesh mesh = testsupport::random_quad_strip(rng, 1 + trial);
        for (VertexIndex pivot :
             {VertexIndex{0}, static_cast<VertexIndex>(mesh.vertices.size() / 2)}) {
            const auto dist = geodesic_distances(mesh, pivot);
            const auto oracle = testsupport::bellman_ford_distances(mesh, pivot);
            for (std::size_t v = 0; v < dist.size(); ++v)
                CHECK(dist[v] == Catch::Approx(oracle[v]).margin(1e-9));
        }
    }
}

TEST_CASE("geodesics satisfy the per-edge triangle inequality") {
    const CanonicalMesh patch = make_ellipsoid_patch(8, 8);
    const EdgeGraph graph = build_edge_graph(*patch.mesh.topology);
    const auto dist = geodesic_distances(patch.mesh, 10, graph);
    for (const auto& edge : graph.edges) {
        const double len =
            distance(patch.mesh.vertices[static_cast<std::size_t>(edge.a)],
                     patch.mesh.vertices[static_cast<std::size_t>(edge.b)]);
        CHECK(dist[static_cast<std::size_t>(edge.a)] <=
              dist[static_cast<std::size_t>(edge.b)] + len + 1e-9);
        CHECK(dist[static_cast<std::size_t>(edge.b)] <=
              dist[static_cast<std::size_t>(edge.a)] + len + 1e-9);
    }
}

TEST_CASE("geodesic pivot out of range") {
    const SurfaceMesh cube = testsupport::make_cube();
    CHECK_THROWS_AS(geodesic_distances(cube, 8), DomainError);
    CHECK_THROWS_AS(geodesic_distances(cube, -1), DomainError);
}
