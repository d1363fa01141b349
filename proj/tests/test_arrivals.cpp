#include "edgeloc/arrivals.hpp"

#include "edgeloc/errors.hpp"
#include "edgeloc/forward.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace edgeloc;

namespace {

constexpr double kC = 343.0;

arrivals::ArrivalSet exact_arrivals(double r0, double z0, double t0,
                                    const std::vector<double>& heights) {
    arrivals::ArrivalSet arr;
    arr.heights_m = heights;
    for (double z : heights) {
        arr.toa_s.push_back(arrivals::toa_model(z, r0, z0, t0, kC));
        arr.detected.push_back(true);
        arr.confidence.push_back(1.0);
    }
    return arr;
}

} // namespace

TEST_CASE("toa_model") {
    // on-axis channel: 4 m / 343 m/s = 11.662 ms
    CHECK(arrivals::toa_model(1.5, 4.0, 1.5, 0.0, kC) == doctest::Approx(11.662e-3).epsilon(1e-4));

    // even in (z - z0)
    for (double d : {0.1, 0.5, 1.3}) {
        CHECK(arrivals::toa_model(1.5 + d, 4.0, 1.5, 0.0, kC)
              == doctest::Approx(arrivals::toa_model(1.5 - d, 4.0, 1.5, 0.0, kC)).epsilon(1e-15));
    }

    // additive in t0
    const double base = arrivals::toa_model(0.7, 2.5, 1.2, 0.0, kC);
    for (double dt : {1e-4, 2.5e-3, 0.1}) {
        CHECK(arrivals::toa_model(0.7, 2.5, 1.2, dt, kC) == doctest::Approx(base + dt).epsilon(1e-15));
    }

    // minimized over z at z = z0
    const double at_min = arrivals::toa_model(1.5, 4.0, 1.5, 0.0, kC);
    for (double z : {0.5, 1.0, 2.0, 2.5}) CHECK(arrivals::toa_model(z, 4.0, 1.5, 0.0, kC) > at_min);
}

TEST_CASE("fit_wavefront recovers exact model data") {
    const auto heights = scene::doorway_preset().array.heights();
    const auto arr = exact_arrivals(4.0, 1.5, 2e-3, heights);
    const auto fit = arrivals::fit_wavefront(arr, kC);
    CHECK(fit.r0_m == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(fit.z0_m == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(fit.t0_s == doctest::Approx(2e-3).epsilon(1e-6));
    CHECK(fit.rmse_s < 1e-9);
    CHECK(fit.n_used == 15);
}

TEST_CASE("fit_wavefront self-consistency across random truths") {
    const auto heights = scene::doorway_preset().array.heights();
    std::mt19937 gen(29);
    std::uniform_real_distribution<double> r0d(1.0, 10.0), z0d(0.3, 2.3), t0d(0.0, 50e-3);
    for (int i = 0; i < 40; ++i) {
        const double r0 = r0d(gen), z0 = z0d(gen), t0 = t0d(gen);
        const auto fit = arrivals::fit_wavefront(exact_arrivals(r0, z0, t0, heights), kC);
        CAPTURE(r0); CAPTURE(z0); CAPTURE(t0);
        CHECK(fit.r0_m == doctest::Approx(r0).epsilon(1e-6));
        CHECK(fit.z0_m == doctest::Approx(z0).epsilon(1e-6));
        CHECK(fit.t0_s == doctest::Approx(t0).epsilon(1e-6));
    }
}

TEST_CASE("fit_wavefront equivariances") {
    const auto heights = scene::doorway_preset().array.heights();
    auto arr = exact_arrivals(3.2, 1.1, 5e-3, heights);
    // solver tolerance dominates; assert to 1e-9
    SUBCASE("time shift moves t0 only") {
        auto shifted = arr;
        for (auto& t : shifted.toa_s) t += 7.5e-3;
        const auto a = arrivals::fit_wavefront(arr, kC);
        const auto b = arrivals::fit_wavefront(shifted, kC);
        CHECK(b.t0_s - a.t0_s == doctest::Approx(7.5e-3).epsilon(1e-9));
        CHECK(b.r0_m == doctest::Approx(a.r0_m).epsilon(1e-9));
        CHECK(b.z0_m == doctest::Approx(a.z0_m).epsilon(1e-9));
    }
    SUBCASE("height shift moves z0 only") {
        auto lifted = arr;
        for (auto& z : lifted.heights_m) z += 0.37;
        const auto a = arrivals::fit_wavefront(arr, kC);
        const auto b = arrivals::fit_wavefront(lifted, kC);
        CHECK(b.z0_m - a.z0_m == doctest::Approx(0.37).epsilon(1e-9));
        CHECK(b.r0_m == doctest::Approx(a.r0_m).epsilon(1e-9));
        CHECK(b.t0_s == doctest::Approx(a.t0_s).epsilon(1e-9));
    }
}

TEST_CASE("fit_wavefront noise robustness (Monte-Carlo)") {
    const auto heights = scene::doorway_preset().array.heights();
    std::mt19937 gen(31);
    std::normal_distribution<double> nd(0.0, 0.05e-3);
    std::vector<double> dz0, dr0_rel;
    for (int seed = 0; seed < 100; ++seed) {
        auto arr = exact_arrivals(4.0, 1.5, 2e-3, heights);
        for (auto& t : arr.toa_s) t += nd(gen);
        arrivals::FitConfig cfg;
        cfg.rmse_reject_s = 1e-3; // keep noisy fits for the statistics
        const auto fit = arrivals::fit_wavefront(arr, kC, cfg);
        dz0.push_back(std::fabs(fit.z0_m - 1.5));
        dr0_rel.push_back(std::fabs(fit.r0_m - 4.0) / 4.0);
    }
    std::sort(dz0.begin(), dz0.end());
    std::sort(dr0_rel.begin(), dr0_rel.end());
    CHECK(dz0[dz0.size() / 2] < 0.05);
    // Information limit: CRLB at (r0=4, z0=1.5) on this array with 0.05 ms
    // TOA noise gives sigma_r0 = 0.525 m, hence a best-possible median
    // relative error of 8.9%. Bound set at the CRLB plus sampling margin.
    CHECK(dr0_rel[dr0_rel.size() / 2] < 0.12);
}

TEST_CASE("fit_wavefront rejections") {
    const auto heights = scene::doorway_preset().array.heights();
    SUBCASE("flat wavefront is degenerate") {
        arrivals::ArrivalSet arr;
        arr.heights_m = heights;
        arr.toa_s.assign(heights.size(), 10e-3);
        arr.detected.assign(heights.size(), true);
        arr.confidence.assign(heights.size(), 1.0);
        CHECK_THROWS_AS(arrivals::fit_wavefront(arr, kC), RejectionError);
    }
    SUBCASE("rmse above 0.1 ms is rejected and carries the value") {
        auto arr = exact_arrivals(2.0, 1.5, 0.0, heights);
        std::mt19937 gen(37);
        std::normal_distribution<double> nd(0.0, 0.25e-3); // rmse lands well above 0.1 ms
        for (auto& t : arr.toa_s) t += nd(gen);
        CHECK_THROWS_WITH_AS(arrivals::fit_wavefront(arr, kC),
                             doctest::Contains("rmse"), RejectionError);
    }
    SUBCASE("too few channels") {
        arrivals::ArrivalSet arr;
        arr.heights_m = {0.46, 0.59};
        arr.toa_s = {10e-3, 10.1e-3};
        arr.detected = {true, true};
        arr.confidence = {1.0, 1.0};
        CHECK_THROWS_AS(arrivals::fit_wavefront(arr, kC), ConfigError);
    }
    SUBCASE("undetected channels are excluded") {
        auto arr = exact_arrivals(4.0, 1.5, 2e-3, heights);
        arr.detected[0] = arr.detected[7] = false;
        arr.toa_s[0] = -1.0; // garbage in excluded slots must not matter
        const auto fit = arrivals::fit_wavefront(arr, kC);
        CHECK(fit.n_used == 13);
        CHECK(fit.r0_m == doctest::Approx(4.0).epsilon(1e-6));
    }
}

TEST_CASE("TOA spread shrinks with range and the fitter tracks it") {
    const auto heights = scene::doorway_preset().array.heights();
    double prev_spread = 1e9;
    for (double r0 = 1.0; r0 <= 10.0; r0 += 1.0) {
        const auto arr = exact_arrivals(r0, 1.0, 0.0, heights);
        const auto [lo, hi] = std::minmax_element(arr.toa_s.begin(), arr.toa_s.end());
        const double spread = *hi - *lo;
        CHECK(spread < prev_spread);
        prev_spread = spread;
        const auto fit = arrivals::fit_wavefront(arr, kC);
        CHECK(fit.r0_m == doctest::Approx(r0).epsilon(1e-6));
    }
}

TEST_CASE("detect_first_arrival") {
    const auto sc = scene::doorway_preset();
    const scene::PhysicsConfig physics;
    const scene::SourceGroundTruth src{3.2, 25.0, 1.5, 2e-3};
    const forward::EmissionSpec emission;

    SUBCASE("noiseless synthetic doorway: every channel within one sample of the model") {
        forward::NoiseSpec quiet;
        const auto traces = forward::synthesize_doorway(sc, src, emission, quiet, physics, 40e-3, 0.0);
        const auto env = dsp::envelope_image(traces, 500.0, 9000.0);
        const auto arr = arrivals::detect_first_arrival(env);
        const double range_h = src.r1_m + sc.r2_d_m;
        REQUIRE(arr.n_detected() == 15);
        for (std::size_t ch = 0; ch < arr.toa_s.size(); ++ch) {
            const double expected = arrivals::toa_model(arr.heights_m[ch], range_h, src.z0_m, src.t0_s, physics.c_mps);
            CAPTURE(ch);
            CHECK(std::fabs(arr.toa_s[ch] - expected) <= 1.0 / physics.fs_hz);
        }
    }
    SUBCASE("all-zero channel flagged undetected") {
        dsp::EnvelopeImage env;
        env.fs_hz = physics.fs_hz;
        env.t_start_s = 0.0;
        env.heights_m = {0.46, 0.59, 0.72};
        env.values = {std::vector<double>(1000, 0.0), std::vector<double>(1000, 0.0),
                      std::vector<double>(1000, 0.0)};
        env.values[1][500] = 1.0; // only the middle channel has signal
        const auto arr = arrivals::detect_first_arrival(env);
        CHECK_FALSE(arr.detected[0]);
        CHECK(arr.detected[1]);
        CHECK_FALSE(arr.detected[2]);
    }
    SUBCASE("SNR 20 dB: at least 90% of channels within 0.1 ms") {
        int total = 0, good = 0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            forward::NoiseSpec noisy;
            noisy.snr_db = 20.0;
            noisy.seed = seed;
            const auto traces = forward::synthesize_doorway(sc, src, emission, noisy, physics, 40e-3);
            const auto env = dsp::envelope_image(traces, 500.0, 9000.0);
            const auto arr = arrivals::detect_first_arrival(env);
            const double range_h = src.r1_m + sc.r2_d_m;
            for (std::size_t ch = 0; ch < arr.toa_s.size(); ++ch) {
                ++total;
                if (!arr.detected[ch]) continue;
                const double expected = arrivals::toa_model(arr.heights_m[ch], range_h, src.z0_m,
                                                            src.t0_s, physics.c_mps);
                if (std::fabs(arr.toa_s[ch] - expected) <= 0.1e-3) ++good;
            }
        }
        CHECK(static_cast<double>(good) / total >= 0.9);
    }
}
