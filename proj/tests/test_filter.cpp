#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "meshtrack/filter.hpp"
#include "meshtrack/harness.hpp"
#include "meshtrack/metrics.hpp"

using namespace meshtrack;

namespace {

FilterParams smoothing_params() {
    FilterParams p;
    p.min_cutoff_hz = 1.0;
    p.beta = 0.0;
    p.window_size = 5;
    return p;
}

Landmarks single(double v) { return {{v, 0.0, 0.0}}; }

}  // namespace

TEST_CASE("first frame passes through exactly") {
    FilterBank bank(smoothing_params());
    const Landmarks out = bank.filter_frame({{3.5, -2.0, 7.25}}, 0.0, 100.0);
    CHECK(out[0].x == 3.5);
    CHECK(out[0].y == -2.0);
    CHECK(out[0].z == 7.25);
}

TEST_CASE("constant input converges: residual < 1e-3 of the gap after 60 frames") {
    FilterBank bank(smoothing_params());
    bank.filter_frame(single(0.0), 0.0, 100.0);  // primes the previous output at 0
    double y = 0.0;
    for (int k = 1; k <= 60; ++k)
        y = bank.filter_frame(single(10.0), k / 30.0, 100.0)[0].x;
    CHECK(std::abs(y - 10.0) < 1e-3 * 10.0);

    // Closed form for the fixed-alpha recursion: residual = gap * (1-alpha)^60
    // with alpha = 1 / (1 + 30/(2*pi)).
    const double alpha = 1.0 / (1.0 + 30.0 / (2.0 * M_PI));
    const double expected = 10.0 * std::pow(1.0 - alpha, 60);
    CHECK(std::abs(y - 10.0) == Catch::Approx(expected).epsilon(1e-9));
}

TEST_CASE("joint scaling of inputs and face scale scales outputs exactly") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> step(-4.0, 4.0);
    for (const double s : {0.1, 10.0, 1234.5}) {
        FilterParams params;  // defaults: beta 40, so velocity matters
        FilterBank base(params);
        FilterBank scaled(params);
        double x = 50.0;
        for (int k = 0; k < 200; ++k) {
            x += step(rng);
            const double t = k / 30.0;
            const Landmarks a = base.filter_frame({{x, 2 * x, -x}}, t, 80.0);
            const Landmarks b = scaled.filter_frame({{s * x, s * 2 * x, -s * x}}, t, s * 80.0);
            CHECK(b[0].x == Catch::Approx(s * a[0].x).epsilon(1e-12).margin(1e-10 * s));
            CHECK(b[0].y == Catch::Approx(s * a[0].y).epsilon(1e-12).margin(1e-10 * s));
            CHECK(b[0].z == Catch::Approx(s * a[0].z).epsilon(1e-12).margin(1e-10 * s));
        }
    }
}

TEST_CASE("time-shift invariance") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> step(-2.0, 2.0);
    FilterBank a{FilterParams{}};
    FilterBank b{FilterParams{}};
    double x = 10.0;
    for (int k = 0; k < 150; ++k) {
        x += step(rng);
        const double t = k / 30.0;
        const Landmarks ya = a.filter_frame(single(x), t, 50.0);
        const Landmarks yb = b.filter_frame(single(x), t + 1000.0, 50.0);
        CHECK(yb[0].x == Catch::Approx(ya[0].x).margin(1e-8));
    }
}

TEST_CASE("output is a convex combination of input and previous output") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> step(-5.0, 5.0);
    FilterBank bank{FilterParams{}};
    double x = 0.0;
    double prev = 0.0;
    bool first = true;
    for (int k = 0; k < 300; ++k) {
        x += step(rng);
        const double y = bank.filter_frame(single(x), k / 30.0, 60.0)[0].x;
        if (!first) {
            CHECK(y >= std::min(x, prev) - 1e-12);
            CHECK(y <= std::max(x, prev) + 1e-12);
        }
        prev = y;
        first = false;
    }
}

TEST_CASE("jitter on stationary noisy input is strongly reduced") {
    // 30 FPS, min_cutoff 1 Hz, beta 0: the AR(1) steady state gives a
    // frame-to-frame displacement ratio of alpha/sqrt(2-alpha) ~= 0.13.
    const std::size_t landmarks = 40;
    const int frames = 800;
    NormalSampler noise(99);
    FilterBank bank(smoothing_params());
    std::vector<Landmarks> raw, filtered;
    for (int k = 0; k < frames; ++k) {
        Landmarks frame(landmarks);
        for (Vec3& p : frame) {
            p.x = 100.0 + 2.0 * noise.next();
            p.y = 50.0 + 2.0 * noise.next();
            p.z = 2.0 * noise.next();
        }
        raw.push_back(frame);
        filtered.push_back(bank.filter_frame(frame, k / 30.0, 80.0));
    }
    const double ratio = jitter_rms(filtered) / jitter_rms(raw);
    CHECK(ratio < 0.25);
    CHECK(ratio > 0.05);
}

TEST_CASE("ramp lag shrinks as beta grows") {
    const double slope = 100.0;  // px/s
    auto final_lag = [&](double beta) {
        FilterParams params;
        params.beta = beta;
        FilterBank bank(params);
        double lag = 0.0;
        for (int k = 0; k < 300; ++k) {
            const double t = k / 30.0;
            const double x = slope * t;
            lag = x - bank.filter_frame(single(x), t, 100.0)[0].x;
        }
        return std::abs(lag);
    };
    const double lag0 = final_lag(0.0);
    const double lag10 = final_lag(10.0);
    const double lag100 = final_lag(100.0);
    CHECK(lag0 > lag10);
    CHECK(lag10 > lag100);
}

TEST_CASE("reset clears all history") {
    FilterBank bank{FilterParams{}};
    bank.filter_frame(single(5.0), 0.0, 10.0);
    bank.filter_frame(single(6.0), 0.1, 10.0);
    CHECK(bank.has_samples());

    bank.reset();
    CHECK_FALSE(bank.has_samples());
    bank.reset();  // idempotent
    CHECK_FALSE(bank.has_samples());

    // First frame after reset passes through, even with earlier timestamps.
    const Landmarks out = bank.filter_frame(single(42.0), 0.0, 10.0);
    CHECK(out[0].x == 42.0);
}

TEST_CASE("after reset the previous trajectory has no influence") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> step(-3.0, 3.0);
    FilterBank reused{FilterParams{}};
    double x = 20.0;
    for (int k = 0; k < 50; ++k) {
        x += step(rng);
        reused.filter_frame(single(x), k / 30.0, 40.0);
    }
    reused.reset();

    FilterBank fresh{FilterParams{}};
    double x2 = -7.0;
    for (int k = 0; k < 80; ++k) {
        x2 += step(rng);
        const double t = k / 25.0;
        const Landmarks a = reused.filter_frame(single(x2), t, 40.0);
        const Landmarks b = fresh.filter_frame(single(x2), t, 40.0);
        CHECK(a[0].x == b[0].x);
    }
}

TEST_CASE("filter input validation") {
    FilterBank bank{FilterParams{}};
    bank.filter_frame(single(1.0), 0.5, 10.0);
    CHECK_THROWS_AS(bank.filter_frame(single(1.0), 0.5, 10.0), DomainError);
    CHECK_THROWS_AS(bank.filter_frame(single(1.0), 0.4, 10.0), DomainError);
    CHECK_THROWS_AS(bank.filter_frame(single(1.0), 0.6, 0.0), DomainError);
    CHECK_THROWS_AS(bank.filter_frame({{1, 2, 3}, {4, 5, 6}}, 0.6, 10.0), DomainError);

    FilterParams bad;
    bad.window_size = 1;
    CHECK_THROWS_AS(FilterBank(bad), DomainError);
    bad = FilterParams{};
    bad.min_cutoff_hz = 0.0;
    CHECK_THROWS_AS(FilterBank(bad), DomainError);
}
