#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "meshtrack/crop.hpp"
#include "meshtrack/mesh.hpp"
#include "meshtrack/mesh_io.hpp"
#include "meshtrack/tracking.hpp"

namespace meshtrack {

// Reproducible standard-normal sampler: Box-Muller over the top 53 bits of
// mt19937_64 output (u = (bits >> 11 + 0.5) * 2^-53, never 0 or 1). Both the
// engine and this mapping are fully specified, so sequences are identical
// across platforms and standard library implementations.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    double uniform01() {
        return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// A canonical mesh plus the eye-corner vertices designated on it.
struct CanonicalMesh {
    SurfaceMesh mesh;
    EyeCornerSpec eye_spec;
};

namespace detail {
// Eye corners on a row-major grid: outer corners on row 0, inner on row 1,
// at the first and last columns.
inline EyeCornerSpec grid_eye_spec(int cols) {
    EyeCornerSpec spec;
    spec.left_outer = 0;
    spec.left_inner = cols;
    spec.right_inner = 2 * cols - 1;
    spec.right_outer = cols - 1;
    return spec;
}

inline std::vector<Quad> grid_quads(int rows, int cols) {
    std::vector<Quad> quads;
    quads.reserve(static_cast<std::size_t>((rows - 1) * (cols - 1)));
    for (int r = 0; r + 1 < rows; ++r) {
        for (int c = 0; c + 1 < cols; ++c) {
            const VertexIndex v00 = r * cols + c;
            quads.push_back({v00, v00 + 1, v00 + cols + 1, v00 + cols});
        }
    }
    return quads;
}
}  // namespace detail

// Planar rows x cols vertex grid in the image plane (z = 0).
inline CanonicalMesh make_grid_mesh(int rows, int cols, double spacing = 10.0,
                                    Vec2 origin = {100.0, 100.0}) {
    if (rows < 2 || cols < 2) throw DomainError("grid needs at least 2x2 vertices");
    if (!(spacing > 0.0)) throw DomainError("grid spacing must be positive");
    Landmarks vertices;
    vertices.reserve(static_cast<std::size_t>(rows * cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            vertices.emplace_back(origin.x + c * spacing, origin.y + r * spacing, 0.0);
    auto topology = std::make_shared<MeshTopology>(static_cast<VertexIndex>(rows * cols),
                                                   detail::grid_quads(rows, cols));
    return {make_surface_mesh(std::move(topology), std::move(vertices)),
            detail::grid_eye_spec(cols)};
}

// Face-like dome: a u_res x v_res patch of an ellipsoid, depth pre-normalized
// to the given z aspect.
inline CanonicalMesh make_ellipsoid_patch(int u_res, int v_res, double z_aspect = 0.5,
                                          Vec2 center = {120.0, 140.0}) {
    if (u_res < 2 || v_res < 2) throw DomainError("patch needs at least 2x2 vertices");
    const double a = 60.0, b = 80.0, c = 35.0;  // semi-axes in px
    const double lon_max = 1.1, lat_max = 0.9;  // angular extents in rad
    Landmarks vertices;
    vertices.reserve(static_cast<std::size_t>(u_res * v_res));
    for (int i = 0; i < v_res; ++i) {
        const double lat = -lat_max + 2.0 * lat_max * i / (v_res - 1);
        for (int j = 0; j < u_res; ++j) {
            const double lon = -lon_max + 2.0 * lon_max * j / (u_res - 1);
            vertices.emplace_back(center.x + a * std::sin(lon) * std::cos(lat),
                                  center.y + b * std::sin(lat),
                                  c * std::cos(lon) * std::cos(lat));
        }
    }
    auto topology = std::make_shared<MeshTopology>(static_cast<VertexIndex>(u_res * v_res),
                                                   detail::grid_quads(v_res, u_res));
    SurfaceMesh mesh = make_surface_mesh(std::move(topology), std::move(vertices));
    return {normalize_z(mesh, z_aspect), detail::grid_eye_spec(u_res)};
}

inline CanonicalMesh load_canonical_mesh(const std::string& obj_path,
                                         const EyeCornerSpec& eye_spec) {
    SurfaceMesh mesh = load_obj_mesh_file(obj_path);
    validate_eye_spec(eye_spec, mesh.vertices.size());
    return {std::move(mesh), eye_spec};
}

// Rigid pose per frame: in-plane rotation about the canonical centroid,
// uniform scale, then translation.
struct Pose {
    Vec3 translation;
    double rotation_rad = 0.0;
    double scale = 1.0;
};

struct MotionScript {
    std::vector<Pose> poses;
    double frame_rate_hz = 30.0;
};

inline void validate_motion_script(const MotionScript& script) {
    if (!(script.frame_rate_hz > 0.0)) throw DomainError("frame rate must be positive");
    for (const Pose& p : script.poses)
        if (!(p.scale > 0.0)) throw DomainError("pose scale must be positive");
}

// Constant per-frame increments: frame k gets k * velocity, k * spin, and
// scale growth^k.
inline MotionScript linear_motion_script(int frames, double frame_rate_hz, Vec3 velocity,
                                         double spin_rad = 0.0, double scale_growth = 1.0) {
    MotionScript script;
    script.frame_rate_hz = frame_rate_hz;
    script.poses.reserve(static_cast<std::size_t>(frames));
    for (int k = 0; k < frames; ++k)
        script.poses.push_back(
            {velocity * static_cast<double>(k), spin_rad * k, std::pow(scale_growth, k)});
    validate_motion_script(script);
    return script;
}

struct HarnessConfig {
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    double z_aspect = 0.5;  // must match the pipeline config for identity runs
    std::map<std::int64_t, double> flag_script;  // frame -> forced first-call flag
};

struct FrameSample {
    double timestamp_s = 0.0;
    Landmarks ground_truth;  // depth-normalized, the pipeline's output convention
    Landmarks noisy;
    std::optional<double> flag_override;
};

struct FrameSequence {
    std::vector<FrameSample> frames;
    EyeCornerSpec eye_spec;
};

inline Landmarks apply_pose(const Landmarks& points, const Pose& pose, const Vec3& pivot) {
    Landmarks out;
    out.reserve(points.size());
    for (const Vec3& p : points) {
        const Vec3 q = p - pivot;
        const Vec2 r = rotate(q.xy(), pose.rotation_rad);
        out.emplace_back(pivot.x + r.x * pose.scale + pose.translation.x,
                         pivot.y + r.y * pose.scale + pose.translation.y,
                         pivot.z + q.z * pose.scale + pose.translation.z);
    }
    return out;
}

inline Vec3 centroid(const Landmarks& points) {
    Vec3 sum;
    for (const Vec3& p : points) sum += p;
    return sum * (1.0 / static_cast<double>(points.size()));
}

// Ground truth per frame = depth-normalized rigid pose of the canonical mesh;
// noisy = ground truth + i.i.d. Gaussian per coordinate. Noise is drawn in
// frame order, vertex order, x then y then z, from NormalSampler(seed).
inline FrameSequence generate_sequence(const CanonicalMesh& canonical,
                                       const MotionScript& script,
                                       const HarnessConfig& config) {
    validate_motion_script(script);
    if (config.noise_sigma < 0.0) throw DomainError("noise sigma must be non-negative");
    const Vec3 pivot = centroid(canonical.mesh.vertices);
    NormalSampler noise(config.seed);

    FrameSequence sequence;
    sequence.eye_spec = canonical.eye_spec;
    sequence.frames.reserve(script.poses.size());
    for (std::size_t k = 0; k < script.poses.size(); ++k) {
        FrameSample sample;
        sample.timestamp_s = static_cast<double>(k) / script.frame_rate_hz;
        sample.ground_truth = normalize_z(
            apply_pose(canonical.mesh.vertices, script.poses[k], pivot), config.z_aspect);
        sample.noisy = sample.ground_truth;
        if (config.noise_sigma > 0.0) {
            for (Vec3& p : sample.noisy) {
                p.x += config.noise_sigma * noise.next();
                p.y += config.noise_sigma * noise.next();
                p.z += config.noise_sigma * noise.next();
            }
        }
        if (auto it = config.flag_script.find(static_cast<std::int64_t>(k));
            it != config.flag_script.end())
            sample.flag_override = it->second;
        sequence.frames.push_back(std::move(sample));
    }
    return sequence;
}

namespace detail {
inline const FrameSample& sequence_frame(const FrameSequence& sequence,
                                         const FrameHandle& frame) {
    if (frame.index < 0 ||
        static_cast<std::size_t>(frame.index) >= sequence.frames.size())
        throw DomainError("frame index " + std::to_string(frame.index) + " out of range");
    return sequence.frames[static_cast<std::size_t>(frame.index)];
}
}  // namespace detail

// Mock detector: ground-truth bounding box and eye centers, always one face.
class SyntheticDetector : public FaceDetector {
public:
    explicit SyntheticDetector(std::shared_ptr<const FrameSequence> sequence)
        : sequence_(std::move(sequence)) {}

    std::vector<Detection> detect(const FrameHandle& frame) override {
        const FrameSample& sample = detail::sequence_frame(*sequence_, frame);
        calls_.fetch_add(1, std::memory_order_relaxed);
        Box box{{std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity()},
                {-std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()}};
        for (const Vec3& p : sample.ground_truth) {
            box.lo.x = std::min(box.lo.x, p.x);
            box.lo.y = std::min(box.lo.y, p.y);
            box.hi.x = std::max(box.hi.x, p.x);
            box.hi.y = std::max(box.hi.y, p.y);
        }
        const EyeCenters eyes = eye_centers(sample.ground_truth, sequence_->eye_spec);
        Detection det;
        det.box = box;
        det.eye_left = eyes.left.xy();
        det.eye_right = eyes.right.xy();
        return {det};
    }

    std::int64_t call_count() const { return calls_.load(std::memory_order_relaxed); }

private:
    std::shared_ptr<const FrameSequence> sequence_;
    std::atomic<std::int64_t> calls_{0};
};

// Mock predictor: returns the frame's noisy ground truth expressed in crop
// coordinates through the inverse crop transform. The face flag is 1 when the
// ground-truth eye midpoint lies inside the rect and decays linearly with the
// midpoint's distance from the rect in units of the rect side. A scripted
// flag override applies to the first predict call on its frame only, so a
// re-acquisition retry within the same frame sees the geometric flag.
class SyntheticPredictor : public LandmarkPredictor {
public:
    explicit SyntheticPredictor(std::shared_ptr<const FrameSequence> sequence)
        : sequence_(std::move(sequence)) {}

    CropPrediction predict(const FrameHandle& frame, const RotatedRect& rect,
                           double input_size) override {
        const FrameSample& sample = detail::sequence_frame(*sequence_, frame);
        const Transform2D to_crop = invert(crop_transform(rect, input_size));
        CropPrediction prediction;
        prediction.landmarks = transform_landmarks(to_crop, sample.noisy);
        prediction.face_flag = geometric_flag(sample.ground_truth, rect);
        if (sample.flag_override && first_call(frame.index))
            prediction.face_flag = *sample.flag_override;
        return prediction;
    }

private:
    bool first_call(std::int64_t frame_index) {
        std::lock_guard<std::mutex> lock(mutex_);
        return calls_per_frame_[frame_index]++ == 0;
    }

    double geometric_flag(const Landmarks& ground_truth, const RotatedRect& rect) const {
        const EyeCenters eyes = eye_centers(ground_truth, sequence_->eye_spec);
        const Vec2 mid = (eyes.left.xy() + eyes.right.xy()) * 0.5;
        const Vec2 local = rotate(mid - rect.center, -rect.rotation);
        const double dx = std::max(0.0, std::abs(local.x) - rect.width * 0.5);
        const double dy = std::max(0.0, std::abs(local.y) - rect.height * 0.5);
        const double dist = std::hypot(dx, dy);
        const double side = std::max(rect.width, rect.height);
        return std::clamp(1.0 - dist / side, 0.0, 1.0);
    }

    std::shared_ptr<const FrameSequence> sequence_;
    std::mutex mutex_;
    std::unordered_map<std::int64_t, int> calls_per_frame_;
};

}  // namespace meshtrack
