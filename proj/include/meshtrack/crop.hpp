#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "meshtrack/errors.hpp"
#include "meshtrack/geometry.hpp"
#include "meshtrack/metrics.hpp"

namespace meshtrack {

// Oriented facial crop rectangle; rotation is counter-clockwise in image axes.
struct RotatedRect {
    Vec2 center;
    double width = 0.0;
    double height = 0.0;
    double rotation = 0.0;  // radians, kept in (-pi, pi]
};

inline RotatedRect make_rotated_rect(Vec2 center, double width, double height,
                                     double rotation) {
    if (!(width > 0.0) || !(height > 0.0))
        throw DomainError("rect sides must be positive");
    return RotatedRect{center, width, height, normalize_angle(rotation)};
}

// 2x3 affine matrix mapping (u, v, 1) -> (x, y), row-major.
struct Transform2D {
    // [ m[0] m[1] m[2] ]
    // [ m[3] m[4] m[5] ]
    double m[6] = {1, 0, 0, 0, 1, 0};

    Vec2 operator()(const Vec2& p) const {
        return {m[0] * p.x + m[1] * p.y + m[2], m[3] * p.x + m[4] * p.y + m[5]};
    }

    double det() const { return m[0] * m[4] - m[1] * m[3]; }
};

inline constexpr double kMinTransformDet = 1e-12;

// Uniform scale factor of the linear part; equals the similarity scale when
// the transform is a similarity.
inline double isotropic_scale(const Transform2D& t) { return std::sqrt(std::abs(t.det())); }

inline Transform2D invert(const Transform2D& t) {
    const double d = t.det();
    if (std::abs(d) <= kMinTransformDet) throw DomainError("transform is singular");
    Transform2D inv;
    inv.m[0] = t.m[4] / d;
    inv.m[1] = -t.m[1] / d;
    inv.m[3] = -t.m[3] / d;
    inv.m[4] = t.m[0] / d;
    inv.m[2] = -(inv.m[0] * t.m[2] + inv.m[1] * t.m[5]);
    inv.m[5] = -(inv.m[3] * t.m[2] + inv.m[4] * t.m[5]);
    return inv;
}

inline std::vector<Vec2> transform_points(const Transform2D& t,
                                          const std::vector<Vec2>& points) {
    std::vector<Vec2> out;
    out.reserve(points.size());
    for (const Vec2& p : points) out.push_back(t(p));
    return out;
}

// Applies the transform to x,y and scales z by the isotropic scale factor,
// so depth range follows face size through similarity crops.
inline Landmarks transform_landmarks(const Transform2D& t, const Landmarks& points) {
    const double zs = isotropic_scale(t);
    Landmarks out;
    out.reserve(points.size());
    for (const Vec3& p : points) {
        const Vec2 q = t(p.xy());
        out.emplace_back(q.x, q.y, p.z * zs);
    }
    return out;
}

// Angle of the eye line: rotating the image by its negative makes the line
// horizontal with the right eye at larger x.
inline double alignment_rotation(const Vec2& eye_left, const Vec2& eye_right) {
    const Vec2 d = eye_right - eye_left;
    if (d.norm() <= 1e-9) throw DomainError("eye centers coincide");
    return std::atan2(d.y, d.x);
}

// Maps crop coordinates (u, v) in [0, input_size]^2 into image coordinates:
// scale by (width, height)/input_size, rotate by rect.rotation, translate so
// the crop center lands on rect.center.
inline Transform2D crop_transform(const RotatedRect& rect, double input_size) {
    if (!(input_size > 0.0)) throw DomainError("input size must be positive");
    if (!(rect.width > 0.0) || !(rect.height > 0.0))
        throw DomainError("rect sides must be positive");
    const double su = rect.width / input_size;
    const double sv = rect.height / input_size;
    const double c = std::cos(rect.rotation);
    const double s = std::sin(rect.rotation);
    const double half = input_size * 0.5;
    Transform2D t;
    t.m[0] = c * su;
    t.m[1] = -s * sv;
    t.m[3] = s * su;
    t.m[4] = c * sv;
    t.m[2] = rect.center.x - (t.m[0] * half + t.m[1] * half);
    t.m[5] = rect.center.y - (t.m[3] * half + t.m[4] * half);
    return t;
}

// Re-centers z on the mesh's center of mass and rescales it so that
// z-span = z_aspect * x-span. x and y are untouched.
inline Landmarks normalize_z(const Landmarks& points, double z_aspect) {
    if (points.empty()) throw DomainError("empty mesh");
    if (!(z_aspect > 0.0)) throw DomainError("z aspect must be positive");
    double min_x = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double mean_z = 0.0;
    for (const Vec3& p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        mean_z += p.z;
    }
    mean_z /= static_cast<double>(points.size());
    const double x_span = max_x - min_x;
    if (!(x_span > 0.0)) throw DomainError("degenerate x-span");

    double min_z = std::numeric_limits<double>::infinity();
    double max_z = -std::numeric_limits<double>::infinity();
    for (const Vec3& p : points) {
        min_z = std::min(min_z, p.z - mean_z);
        max_z = std::max(max_z, p.z - mean_z);
    }
    const double z_span = max_z - min_z;
    const double scale = z_span > 0.0 ? (z_aspect * x_span) / z_span : 0.0;

    Landmarks out;
    out.reserve(points.size());
    for (const Vec3& p : points) out.emplace_back(p.x, p.y, (p.z - mean_z) * scale);
    return out;
}

inline SurfaceMesh normalize_z(const SurfaceMesh& mesh, double z_aspect) {
    return SurfaceMesh{mesh.topology, normalize_z(mesh.vertices, z_aspect)};
}

// Derives the next-frame crop rect from a predicted mesh: rotation from the
// eye centers, bounding box of the xy projection in the rotated frame,
// expanded by `margin` on each side and squared to the longer side.
inline RotatedRect rect_from_mesh(const Landmarks& points, const EyeCornerSpec& spec,
                                  double margin) {
    if (margin < 0.0) throw DomainError("margin must be non-negative");
    const EyeCenters eyes = eye_centers(points, spec);
    const double rotation = alignment_rotation(eyes.left.xy(), eyes.right.xy());

    double min_x = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();
    for (const Vec3& p : points) {
        const Vec2 q = rotate(p.xy(), -rotation);
        min_x = std::min(min_x, q.x);
        max_x = std::max(max_x, q.x);
        min_y = std::min(min_y, q.y);
        max_y = std::max(max_y, q.y);
    }
    const double span_x = max_x - min_x;
    const double span_y = max_y - min_y;
    if (!(span_x > 0.0) || !(span_y > 0.0))
        throw DomainError("mesh xy bounding box is degenerate");

    const double side = std::max(span_x, span_y) * (1.0 + 2.0 * margin);
    const Vec2 local_center{(min_x + max_x) * 0.5, (min_y + max_y) * 0.5};
    return make_rotated_rect(rotate(local_center, rotation), side, side, rotation);
}

inline RotatedRect rect_from_mesh(const SurfaceMesh& mesh, const EyeCornerSpec& spec,
                                  double margin) {
    return rect_from_mesh(mesh.vertices, spec, margin);
}

}  // namespace meshtrack
