#pragma once

#include <cmath>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "meshtrack/geodesic.hpp"
#include "meshtrack/mesh.hpp"

namespace meshtrack {

// One annotation brush stroke: drag the pivot vertex by `displacement`;
// surrounding vertices follow with exp(-d/radius) falloff over geodesic
// distance d, cut off at 4*radius. z is never touched.
struct BrushStroke {
    VertexIndex pivot = 0;
    Vec2 displacement;
    double radius = 0.0;
};

inline constexpr double kBrushCutoffRadii = 4.0;

inline void validate_stroke(const BrushStroke& stroke, std::size_t num_vertices) {
    if (stroke.pivot < 0 || static_cast<std::size_t>(stroke.pivot) >= num_vertices)
        throw DomainError("stroke pivot " + std::to_string(stroke.pivot) + " out of range");
    if (!(stroke.radius > 0.0)) throw DomainError("stroke radius must be positive");
}

// Applies a stroke using the given per-vertex geodesic distances (callers can
// freeze distances across strokes with this overload).
inline SurfaceMesh apply_brush(const SurfaceMesh& mesh, const BrushStroke& stroke,
                               const std::vector<double>& distances) {
    validate_stroke(stroke, mesh.vertices.size());
    if (distances.size() != mesh.vertices.size())
        throw DomainError("distance field size mismatch");
    SurfaceMesh out = mesh;
    const double cutoff = kBrushCutoffRadii * stroke.radius;
    for (std::size_t i = 0; i < out.vertices.size(); ++i) {
        const double d = distances[i];
        if (d > cutoff) continue;
        const double w = std::exp(-d / stroke.radius);
        out.vertices[i].x += w * stroke.displacement.x;
        out.vertices[i].y += w * stroke.displacement.y;
    }
    return out;
}

// Applies a stroke with geodesics computed on the mesh as it is now, which is
// what an interactive stroke sees.
inline SurfaceMesh apply_brush(const SurfaceMesh& mesh, const BrushStroke& stroke) {
    validate_stroke(stroke, mesh.vertices.size());
    return apply_brush(mesh, stroke, geodesic_distances(mesh, stroke.pivot));
}

// Stroke file: one `pivot dx dy radius` line per stroke.
inline std::vector<BrushStroke> read_strokes(std::istream& in) {
    std::vector<BrushStroke> strokes;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        long long pivot;
        double dx, dy, radius;
        if (!(ls >> pivot)) continue;  // blank line
        if (!(ls >> dx >> dy >> radius))
            throw ParseError("stroke line " + std::to_string(line_no) +
                             ": expected `pivot dx dy radius`");
        strokes.push_back({static_cast<VertexIndex>(pivot), {dx, dy}, radius});
    }
    return strokes;
}

}  // namespace meshtrack
