#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "meshtrack/errors.hpp"
#include "meshtrack/geometry.hpp"
#include "meshtrack/mesh.hpp"

namespace meshtrack {

// Eye corner vertex indices. Eye centers are taken as the midpoints of the
// outer/inner corner segments, which keeps them independent of gaze.
struct EyeCornerSpec {
    VertexIndex left_outer = 0;
    VertexIndex left_inner = 0;
    VertexIndex right_inner = 0;
    VertexIndex right_outer = 0;
};

inline void validate_eye_spec(const EyeCornerSpec& spec, std::size_t num_vertices) {
    const VertexIndex ids[4] = {spec.left_outer, spec.left_inner, spec.right_inner,
                                spec.right_outer};
    for (int i = 0; i < 4; ++i) {
        if (ids[i] < 0 || static_cast<std::size_t>(ids[i]) >= num_vertices)
            throw DomainError("eye corner index " + std::to_string(ids[i]) + " out of range");
        for (int j = i + 1; j < 4; ++j)
            if (ids[i] == ids[j]) throw DomainError("eye corner indices must be distinct");
    }
}

struct EyeCenters {
    Vec3 left;
    Vec3 right;
};

inline EyeCenters eye_centers(const Landmarks& points, const EyeCornerSpec& spec) {
    validate_eye_spec(spec, points.size());
    return {(points[static_cast<std::size_t>(spec.left_outer)] +
             points[static_cast<std::size_t>(spec.left_inner)]) *
                0.5,
            (points[static_cast<std::size_t>(spec.right_inner)] +
             points[static_cast<std::size_t>(spec.right_outer)]) *
                0.5};
}

// 3D interocular distance; 3D so that yaw rotation does not shrink it.
inline double iod_3d(const Landmarks& points, const EyeCornerSpec& spec) {
    const EyeCenters c = eye_centers(points, spec);
    const double d = distance(c.left, c.right);
    if (d <= 0.0) throw DomainError("interocular distance is zero");
    return d;
}

// Mean per-vertex 2D Euclidean distance, normalized by the ground truth's
// 3D IOD, in percent.
inline double iod_mad_2d(const Landmarks& pred, const Landmarks& gt,
                         const EyeCornerSpec& spec) {
    if (pred.size() != gt.size())
        throw DomainError("prediction and ground truth vertex counts differ");
    if (pred.empty()) throw DomainError("empty mesh");
    const double iod = iod_3d(gt, spec);
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i)
        sum += distance(pred[i].xy(), gt[i].xy());
    return 100.0 * (sum / static_cast<double>(pred.size())) / iod;
}

// Mean of iod_mad_2d over all ordered pairs (i, j), i != j, normalizing each
// pair by the second mesh's IOD.
inline double inter_annotator_mad(const std::vector<Landmarks>& annotations,
                                  const EyeCornerSpec& spec) {
    if (annotations.size() < 2)
        throw DomainError("inter-annotator baseline needs at least 2 annotations");
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < annotations.size(); ++i) {
        for (std::size_t j = 0; j < annotations.size(); ++j) {
            if (i == j) continue;
            sum += iod_mad_2d(annotations[i], annotations[j], spec);
            ++pairs;
        }
    }
    return sum / static_cast<double>(pairs);
}

// RMS over frames and vertices of the frame-to-frame 2D displacement magnitude.
inline double jitter_rms(const std::vector<Landmarks>& sequence) {
    if (sequence.size() < 2) throw DomainError("jitter needs at least 2 frames");
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (std::size_t f = 1; f < sequence.size(); ++f) {
        if (sequence[f].size() != sequence[f - 1].size())
            throw DomainError("vertex count changed between frames");
        for (std::size_t v = 0; v < sequence[f].size(); ++v) {
            const Vec2 d = sequence[f][v].xy() - sequence[f - 1][v].xy();
            sum_sq += d.x * d.x + d.y * d.y;
            ++count;
        }
    }
    if (count == 0) throw DomainError("jitter needs non-empty frames");
    return std::sqrt(sum_sq / static_cast<double>(count));
}

// SurfaceMesh overloads; these also check topology agreement.

inline EyeCenters eye_centers(const SurfaceMesh& mesh, const EyeCornerSpec& spec) {
    return eye_centers(mesh.vertices, spec);
}

inline double iod_3d(const SurfaceMesh& mesh, const EyeCornerSpec& spec) {
    return iod_3d(mesh.vertices, spec);
}

inline double iod_mad_2d(const SurfaceMesh& pred, const SurfaceMesh& gt,
                         const EyeCornerSpec& spec) {
    if (!same_topology(pred, gt)) throw DomainError("topology mismatch");
    return iod_mad_2d(pred.vertices, gt.vertices, spec);
}

}  // namespace meshtrack
