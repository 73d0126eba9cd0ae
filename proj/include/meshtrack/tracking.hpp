#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "meshtrack/crop.hpp"
#include "meshtrack/filter.hpp"
#include "meshtrack/metrics.hpp"

namespace meshtrack {

// Opaque per-frame handle; the pipeline only forwards it to the detector and
// predictor. No pixel data flows through this module.
struct FrameHandle {
    std::int64_t index = 0;
};

struct Box {
    Vec2 lo;
    Vec2 hi;

    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double area() const { return width() * height(); }
    Vec2 center() const { return {(lo.x + hi.x) * 0.5, (lo.y + hi.y) * 0.5}; }
};

// Detector output: axis-aligned face box plus a few named landmarks.
// Eye centers are required; the rest are optional extras.
struct Detection {
    Box box;
    Vec2 eye_left;
    Vec2 eye_right;
    std::optional<Vec2> nose_tip;
    std::optional<Vec2> ear_left;
    std::optional<Vec2> ear_right;
};

// Landmarks in crop coordinates ([0, input_size] extent) plus the face flag:
// the probability that a reasonably aligned face is present in the crop.
struct CropPrediction {
    Landmarks landmarks;
    double face_flag = 0.0;
};

// Landmarks mapped into image coordinates, depth normalized.
struct FacePrediction {
    Landmarks vertices;
    double face_flag = 0.0;
};

class FaceDetector {
public:
    virtual ~FaceDetector() = default;
    virtual std::vector<Detection> detect(const FrameHandle& frame) = 0;
};

class LandmarkPredictor {
public:
    virtual ~LandmarkPredictor() = default;
    virtual CropPrediction predict(const FrameHandle& frame, const RotatedRect& rect,
                                   double input_size) = 0;
};

struct PipelineConfig {
    double face_flag_threshold = 0.5;
    double margin = 0.25;       // crop expansion fraction per side
    double input_size = 256.0;  // crop resolution in px
    double z_aspect = 0.5;      // z-span : x-span ratio after normalization
    FilterParams filter_params;
    EyeCornerSpec eye_spec;
};

inline void validate_pipeline_config(const PipelineConfig& config) {
    if (!(config.face_flag_threshold > 0.0) || !(config.face_flag_threshold < 1.0))
        throw DomainError("face_flag_threshold must be in (0, 1)");
    if (config.margin < 0.0) throw DomainError("margin must be non-negative");
    if (!(config.input_size > 0.0)) throw DomainError("input_size must be positive");
    if (!(config.z_aspect > 0.0)) throw DomainError("z_aspect must be positive");
    validate_filter_params(config.filter_params);
}

// Per-stream tracking state. NeedsDetection when `rect` is empty; otherwise
// Tracking with the crop rect carried over from the previous frame. Must be
// used serially, with strictly increasing timestamps.
struct TrackingState {
    std::optional<RotatedRect> rect;
    FilterBank filter;
    std::optional<double> last_timestamp;

    bool needs_detection() const { return !rect.has_value(); }
};

inline TrackingState make_tracking_state(const PipelineConfig& config) {
    validate_pipeline_config(config);
    return TrackingState{std::nullopt, FilterBank(config.filter_params), std::nullopt};
}

// Builds the predictor crop rect from a detection: rotation from the detected
// eye centers, detector box expanded by the margin and squared.
inline RotatedRect rect_from_detection(const Detection& detection, double margin) {
    if (!(detection.box.area() > 0.0)) throw DomainError("detection box has no area");
    const double rotation = alignment_rotation(detection.eye_left, detection.eye_right);
    const double side =
        std::max(detection.box.width(), detection.box.height()) * (1.0 + 2.0 * margin);
    return make_rotated_rect(detection.box.center(), side, side, rotation);
}

struct FrameResult {
    std::optional<FacePrediction> prediction;
    bool detector_invoked = false;
    bool reacquired = false;  // face flag fell below threshold this frame
};

namespace detail {

// Highest-area detection; ties resolved toward the lowest index.
inline const Detection& best_detection(const std::vector<Detection>& detections) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < detections.size(); ++i)
        if (detections[i].box.area() > detections[best].box.area()) best = i;
    return detections[best];
}

struct MappedPrediction {
    Landmarks vertices;  // image coordinates, depth normalized
    double face_flag = 0.0;
};

inline MappedPrediction run_predictor(LandmarkPredictor& predictor, const FrameHandle& frame,
                                      const RotatedRect& rect, const PipelineConfig& config) {
    CropPrediction crop = predictor.predict(frame, rect, config.input_size);
    if (crop.face_flag < 0.0 || crop.face_flag > 1.0)
        throw DomainError("face flag outside [0, 1]");
    const Transform2D to_image = crop_transform(rect, config.input_size);
    Landmarks vertices = transform_landmarks(to_image, crop.landmarks);
    return {normalize_z(vertices, config.z_aspect), crop.face_flag};
}

}  // namespace detail

// One step of the tracking state machine:
//  1. In NeedsDetection mode, run the detector; no detection keeps the mode
//     and yields no prediction. Otherwise derive the crop rect from the
//     detection.
//  2. Run the predictor on the rect and map its crop-space landmarks into
//     image coordinates, then normalize depth.
//  3. If the face flag is below threshold, re-acquire within this call: run
//     the detector once, rebuild the rect, re-run the predictor. The filter
//     is reset across any re-acquisition. If the flag is still low or no
//     face was found, fall back to NeedsDetection with no prediction.
//  4. Otherwise filter the mesh (face scale = interocular distance) and
//     derive the next-frame rect from the unfiltered mesh.
inline FrameResult process_frame(TrackingState& state, const FrameHandle& frame,
                                 double timestamp_s, FaceDetector& detector,
                                 LandmarkPredictor& predictor, const PipelineConfig& config) {
    if (state.last_timestamp && !(timestamp_s > *state.last_timestamp))
        throw DomainError("timestamps must be strictly increasing");
    state.last_timestamp = timestamp_s;

    FrameResult result;
    if (state.needs_detection()) {
        const std::vector<Detection> detections = detector.detect(frame);
        result.detector_invoked = true;
        if (detections.empty()) return result;
        state.rect = rect_from_detection(detail::best_detection(detections), config.margin);
    }

    detail::MappedPrediction mapped =
        detail::run_predictor(predictor, frame, *state.rect, config);

    if (mapped.face_flag < config.face_flag_threshold) {
        result.reacquired = true;
        result.detector_invoked = true;
        state.filter.reset();
        const std::vector<Detection> detections = detector.detect(frame);
        bool recovered = false;
        if (!detections.empty()) {
            state.rect =
                rect_from_detection(detail::best_detection(detections), config.margin);
            mapped = detail::run_predictor(predictor, frame, *state.rect, config);
            recovered = mapped.face_flag >= config.face_flag_threshold;
        }
        if (!recovered) {
            state.rect.reset();
            return result;
        }
    }

    const double face_scale = iod_3d(mapped.vertices, config.eye_spec);
    Landmarks filtered = state.filter.filter_frame(mapped.vertices, timestamp_s, face_scale);
    state.rect = rect_from_mesh(mapped.vertices, config.eye_spec, config.margin);
    result.prediction = FacePrediction{std::move(filtered), mapped.face_flag};
    return result;
}

}  // namespace meshtrack
