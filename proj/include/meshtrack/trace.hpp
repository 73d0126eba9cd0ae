#pragma once

#include <chrono>
#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "meshtrack/harness.hpp"
#include "meshtrack/mesh_io.hpp"
#include "meshtrack/tracking.hpp"

namespace meshtrack {

// One line of a trace file: a timestamped landmark frame. Traces are JSON
// Lines with a fixed field order and floats capped at 9 significant digits,
// so identical runs produce bitwise-identical files.
struct TraceRecord {
    std::int64_t frame_index = 0;
    double timestamp_s = 0.0;
    double face_flag = 1.0;
    std::vector<double> vertices;  // flat x,y,z triples
};

inline Landmarks record_landmarks(const TraceRecord& record) {
    Landmarks points;
    points.reserve(record.vertices.size() / 3);
    for (std::size_t i = 0; i + 2 < record.vertices.size(); i += 3)
        points.emplace_back(record.vertices[i], record.vertices[i + 1],
                            record.vertices[i + 2]);
    return points;
}

inline TraceRecord make_trace_record(std::int64_t frame_index, double timestamp_s,
                                     double face_flag, const Landmarks& points) {
    TraceRecord record;
    record.frame_index = frame_index;
    record.timestamp_s = timestamp_s;
    record.face_flag = face_flag;
    record.vertices.reserve(points.size() * 3);
    for (const Vec3& p : points) {
        record.vertices.push_back(p.x);
        record.vertices.push_back(p.y);
        record.vertices.push_back(p.z);
    }
    return record;
}

inline std::vector<TraceRecord> read_trace(std::istream& in) {
    std::vector<TraceRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
            TraceRecord record;
            record.frame_index = j.at("frame_index").get<std::int64_t>();
            record.timestamp_s = j.at("timestamp_s").get<double>();
            record.face_flag = j.at("face_flag").get<double>();
            record.vertices = j.at("vertices").get<std::vector<double>>();
            records.push_back(std::move(record));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("trace line " + std::to_string(line_no) + ": " + e.what());
        }
        const TraceRecord& r = records.back();
        if (r.vertices.size() % 3 != 0)
            throw ParseError("trace line " + std::to_string(line_no) +
                             ": vertex list length not a multiple of 3");
        if (r.face_flag < 0.0 || r.face_flag > 1.0)
            throw DomainError("trace line " + std::to_string(line_no) +
                              ": face_flag outside [0, 1]");
        if (records.size() > 1) {
            const TraceRecord& prev = records[records.size() - 2];
            if (!(r.timestamp_s > prev.timestamp_s))
                throw DomainError("trace line " + std::to_string(line_no) +
                                  ": timestamps must be strictly increasing");
            if (r.vertices.size() != prev.vertices.size())
                throw DomainError("trace line " + std::to_string(line_no) +
                                  ": vertex count changed between records");
        }
    }
    return records;
}

inline void write_trace(std::ostream& out, const std::vector<TraceRecord>& records) {
    for (const TraceRecord& r : records) {
        out << "{\"frame_index\":" << r.frame_index
            << ",\"timestamp_s\":" << format_double(r.timestamp_s)
            << ",\"face_flag\":" << format_double(r.face_flag) << ",\"vertices\":[";
        for (std::size_t i = 0; i < r.vertices.size(); ++i) {
            if (i) out << ",";
            out << format_double(r.vertices[i]);
        }
        out << "]}\n";
    }
}

inline std::vector<TraceRecord> read_trace_file(const std::string& path) {
    auto in = open_input(path);
    return read_trace(in);
}

inline void write_trace_file(const std::string& path, const std::vector<TraceRecord>& records) {
    auto out = open_output(path);
    write_trace(out, records);
}

// Wraps trace records as a harness sequence so the mock detector/predictor
// can drive the pipeline from a file. The record's landmarks serve as both
// ground truth and prediction; a face_flag below 1 acts as a scripted
// first-call flag override for that frame.
inline FrameSequence sequence_from_trace(const std::vector<TraceRecord>& records,
                                         const EyeCornerSpec& eye_spec) {
    FrameSequence sequence;
    sequence.eye_spec = eye_spec;
    sequence.frames.reserve(records.size());
    for (const TraceRecord& r : records) {
        FrameSample sample;
        sample.timestamp_s = r.timestamp_s;
        sample.ground_truth = record_landmarks(r);
        sample.noisy = sample.ground_truth;
        if (r.face_flag < 1.0) sample.flag_override = r.face_flag;
        sequence.frames.push_back(std::move(sample));
    }
    return sequence;
}

inline std::vector<TraceRecord> sequence_to_trace(const FrameSequence& sequence,
                                                  bool ground_truth = false) {
    std::vector<TraceRecord> records;
    records.reserve(sequence.frames.size());
    for (std::size_t k = 0; k < sequence.frames.size(); ++k) {
        const FrameSample& f = sequence.frames[k];
        records.push_back(make_trace_record(
            static_cast<std::int64_t>(k), f.timestamp_s,
            f.flag_override.value_or(1.0), ground_truth ? f.ground_truth : f.noisy));
    }
    return records;
}

struct TrackReport {
    std::int64_t frames = 0;
    std::int64_t predictions = 0;
    std::int64_t detector_calls = 0;
    std::vector<std::int64_t> reacquisition_frames;
    std::size_t landmarks_per_frame = 0;
    double elapsed_s = 0.0;

    double frames_per_s() const { return elapsed_s > 0.0 ? frames / elapsed_s : 0.0; }
    double landmark_updates_per_s() const {
        return frames_per_s() * static_cast<double>(landmarks_per_frame);
    }
};

// Runs the tracking pipeline over a trace, returning the filtered
// predictions (frames without a prediction are omitted) and run statistics.
inline std::pair<std::vector<TraceRecord>, TrackReport> run_trace_tracking(
    const std::vector<TraceRecord>& records, const PipelineConfig& config) {
    auto sequence =
        std::make_shared<FrameSequence>(sequence_from_trace(records, config.eye_spec));
    SyntheticDetector detector(sequence);
    SyntheticPredictor predictor(sequence);
    TrackingState state = make_tracking_state(config);

    std::vector<TraceRecord> out;
    out.reserve(records.size());
    TrackReport report;
    report.frames = static_cast<std::int64_t>(records.size());
    if (!records.empty()) report.landmarks_per_frame = records.front().vertices.size() / 3;

    const auto start = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < records.size(); ++k) {
        FrameResult result =
            process_frame(state, FrameHandle{static_cast<std::int64_t>(k)},
                          records[k].timestamp_s, detector, predictor, config);
        if (result.reacquired)
            report.reacquisition_frames.push_back(records[k].frame_index);
        if (result.prediction) {
            ++report.predictions;
            out.push_back(make_trace_record(records[k].frame_index, records[k].timestamp_s,
                                            result.prediction->face_flag,
                                            result.prediction->vertices));
        }
    }
    report.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.detector_calls = detector.call_count();
    return {std::move(out), report};
}

}  // namespace meshtrack
