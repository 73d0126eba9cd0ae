#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "meshtrack/harness.hpp"
#include "meshtrack/tracking.hpp"

namespace meshtrack {

// Predictor with no inference cost: every call returns the same crop-space
// landmark set with flag 1, so a benchmark measures the pipeline itself.
class FixedCropPredictor : public LandmarkPredictor {
public:
    explicit FixedCropPredictor(Landmarks crop_landmarks)
        : crop_landmarks_(std::move(crop_landmarks)) {}

    CropPrediction predict(const FrameHandle&, const RotatedRect&, double) override {
        return {crop_landmarks_, 1.0};
    }

private:
    Landmarks crop_landmarks_;
};

class FixedDetector : public FaceDetector {
public:
    explicit FixedDetector(Detection detection) : detection_(detection) {}

    std::vector<Detection> detect(const FrameHandle&) override { return {detection_}; }

private:
    Detection detection_;
};

struct BenchResult {
    struct Stream {
        double frames_per_s = 0.0;
        double landmark_updates_per_s = 0.0;
    };
    std::vector<Stream> streams;
    double aggregate_frames_per_s = 0.0;
    double aggregate_landmark_updates_per_s = 0.0;
};

namespace detail {
// A roughly square lattice of `count` landmarks spread over [lo, hi]^2, with
// a mild depth bump so z is non-degenerate.
inline Landmarks bench_lattice(std::size_t count, double lo, double hi) {
    const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
    const auto rows = (count + cols - 1) / cols;
    Landmarks points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double cx = static_cast<double>(i % cols) / static_cast<double>(cols - 1);
        const double cy = static_cast<double>(i / cols) / static_cast<double>(rows > 1 ? rows - 1 : 1);
        points.emplace_back(lo + cx * (hi - lo), lo + cy * (hi - lo),
                            std::sin(cx * M_PI) * std::sin(cy * M_PI) * 0.1 * (hi - lo));
    }
    return points;
}

inline EyeCornerSpec bench_eye_spec(std::size_t count) {
    const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
    EyeCornerSpec spec;
    spec.left_outer = 0;
    spec.left_inner = static_cast<VertexIndex>(cols);
    spec.right_inner = static_cast<VertexIndex>(2 * cols - 1);
    spec.right_outer = static_cast<VertexIndex>(cols - 1);
    return spec;
}
}  // namespace detail

// Full pipeline throughput over synthetic frames: crop mapping, depth
// normalization, filtering, and next-rect derivation per frame; predictor
// and detector are free.
inline BenchResult run_pipeline_benchmark(std::int64_t frames, std::size_t landmarks,
                                          int streams = 1) {
    if (frames <= 0) throw DomainError("frame count must be positive");
    if (landmarks < 8) throw DomainError("benchmark needs at least 8 landmarks");
    if (streams < 1) throw DomainError("stream count must be positive");

    PipelineConfig config;
    config.eye_spec = detail::bench_eye_spec(landmarks);

    BenchResult result;
    result.streams.resize(static_cast<std::size_t>(streams));

    // Size the lattice so the derived next-frame rect reproduces the current
    // one: span * (1 + 2*margin) = input_size keeps the feedback loop at a
    // fixpoint instead of growing or shrinking the crop every frame.
    const double span_fraction = 1.0 / (1.0 + 2.0 * config.margin);
    const double lo = 0.5 * (1.0 - span_fraction) * config.input_size;
    const double hi = 0.5 * (1.0 + span_fraction) * config.input_size;

    auto run_stream = [&](BenchResult::Stream& out) {
        FixedCropPredictor predictor(detail::bench_lattice(landmarks, lo, hi));
        Detection seed_detection;
        seed_detection.box = {{100.0, 100.0}, {300.0, 300.0}};
        seed_detection.eye_left = {170.0, 180.0};
        seed_detection.eye_right = {230.0, 180.0};
        FixedDetector detector(seed_detection);
        TrackingState state = make_tracking_state(config);

        const auto start = std::chrono::steady_clock::now();
        for (std::int64_t k = 0; k < frames; ++k) {
            const double t = static_cast<double>(k) / 30.0;
            process_frame(state, FrameHandle{k}, t, detector, predictor, config);
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.frames_per_s = static_cast<double>(frames) / elapsed;
        out.landmark_updates_per_s = out.frames_per_s * static_cast<double>(landmarks);
    };

    if (streams == 1) {
        run_stream(result.streams[0]);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(streams));
        for (auto& stream : result.streams)
            workers.emplace_back(run_stream, std::ref(stream));
        for (auto& w : workers) w.join();
    }

    for (const auto& stream : result.streams) {
        result.aggregate_frames_per_s += stream.frames_per_s;
        result.aggregate_landmark_updates_per_s += stream.landmark_updates_per_s;
    }
    return result;
}

}  // namespace meshtrack
