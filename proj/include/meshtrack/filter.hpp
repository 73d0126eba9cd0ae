#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "meshtrack/errors.hpp"
#include "meshtrack/geometry.hpp"

namespace meshtrack {

// Adaptive low-pass parameters. beta is the cutoff gain per unit of
// face-size-normalized velocity (face-sizes per second); with the defaults,
// one face-width-per-second of motion pushes the cutoff to ~41 Hz.
struct FilterParams {
    double min_cutoff_hz = 1.0;
    double beta = 40.0;
    int window_size = 5;
};

inline void validate_filter_params(const FilterParams& p) {
    if (!(p.min_cutoff_hz > 0.0)) throw DomainError("min_cutoff_hz must be positive");
    if (p.beta < 0.0) throw DomainError("beta must be non-negative");
    if (p.window_size < 2) throw DomainError("window_size must be at least 2");
}

// Per-coordinate adaptive low-pass filter. Each scalar coordinate keeps a
// rolling window of timestamped raw samples; the velocity estimate is the
// endpoint slope over that window, normalized by the caller-provided face
// scale, and drives the cutoff: f_c = min_cutoff + beta * |v| / face_scale.
class FilterBank {
public:
    FilterBank() { validate_filter_params(params_); }
    explicit FilterBank(const FilterParams& params) : params_(params) {
        validate_filter_params(params_);
    }

    Landmarks filter_frame(const Landmarks& values, double timestamp_s, double face_scale) {
        if (!(face_scale > 0.0)) throw DomainError("face_scale must be positive");
        const std::size_t channels = values.size() * 3;
        if (channels == 0) throw DomainError("empty landmark set");
        if (channels_ == 0) {
            channels_ = channels;
            const auto w = static_cast<std::size_t>(params_.window_size);
            times_.assign(w, 0.0);
            window_.assign(channels_ * w, 0.0);
            output_.assign(channels_, 0.0);
        } else if (channels != channels_) {
            throw DomainError("landmark count changed between frames");
        }
        if (sample_count_ > 0 && !(timestamp_s > last_time_))
            throw DomainError("timestamps must be strictly increasing");

        const auto w = static_cast<std::size_t>(params_.window_size);
        const std::size_t slot = head_;
        times_[slot] = timestamp_s;
        for (std::size_t c = 0; c < channels_; ++c)
            window_[c * w + slot] = scalar(values, c);
        head_ = (head_ + 1) % w;
        const double prev_time = last_time_;
        const bool smoothing = has_output_;
        if (sample_count_ < w) ++sample_count_;
        const std::size_t oldest = (head_ + w - sample_count_) % w;
        const double dt_window = timestamp_s - times_[oldest];

        Landmarks out(values.size());
        for (std::size_t c = 0; c < channels_; ++c) {
            const double x = window_[c * w + slot];
            double y = x;
            if (smoothing) {
                double v_norm = 0.0;
                if (sample_count_ >= 2)
                    v_norm = std::abs((x - window_[c * w + oldest]) / dt_window) / face_scale;
                const double cutoff = params_.min_cutoff_hz + params_.beta * v_norm;
                const double tau = 1.0 / (2.0 * M_PI * cutoff);
                const double te = timestamp_s - prev_time;
                const double alpha = 1.0 / (1.0 + tau / te);
                y = alpha * x + (1.0 - alpha) * output_[c];
            }
            output_[c] = y;
            scalar(out, c) = y;
        }
        last_time_ = timestamp_s;
        has_output_ = true;
        return out;
    }

    // Empties the windows and clears outputs; the next frame passes through.
    void reset() {
        channels_ = 0;
        sample_count_ = 0;
        head_ = 0;
        has_output_ = false;
        times_.clear();
        window_.clear();
        output_.clear();
    }

    bool has_samples() const { return sample_count_ > 0; }
    std::size_t window_fill() const { return sample_count_; }
    const FilterParams& params() const { return params_; }

private:
    static double& scalar(Landmarks& values, std::size_t channel) {
        Vec3& p = values[channel / 3];
        switch (channel % 3) {
            case 0: return p.x;
            case 1: return p.y;
            default: return p.z;
        }
    }
    static double scalar(const Landmarks& values, std::size_t channel) {
        const Vec3& p = values[channel / 3];
        switch (channel % 3) {
            case 0: return p.x;
            case 1: return p.y;
            default: return p.z;
        }
    }

    FilterParams params_;
    std::size_t channels_ = 0;
    std::size_t sample_count_ = 0;  // samples currently held, <= window_size
    std::size_t head_ = 0;          // ring slot of the next write
    std::vector<double> times_;     // timestamp ring, shared across channels
    std::vector<double> window_;    // raw value rings, channel-major
    std::vector<double> output_;    // last output per channel
    bool has_output_ = false;
    double last_time_ = 0.0;
};

}  // namespace meshtrack
