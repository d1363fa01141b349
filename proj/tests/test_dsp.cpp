#include "edgeloc/dsp.hpp"

#include "edgeloc/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace edgeloc;

namespace {

constexpr double kFs = 48000.0;
constexpr double kPi = std::numbers::pi;

std::vector<double> tone(double freq, double fs, std::size_t n, double amp = 1.0, double phase = 0.0) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = amp * std::sin(2.0 * kPi * freq * i / fs + phase);
    return x;
}

double rms(const std::vector<double>& x, std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += x[i] * x[i];
    return std::sqrt(acc / (hi - lo));
}

double rms(const std::vector<double>& x) { return rms(x, 0, x.size()); }

} // namespace

TEST_CASE("bandpass magnitude response") {
    const std::size_t n = 1 << 15;
    SUBCASE("in-band tones pass within 1 dB") {
        for (double f : {600.0, 1000.0, 5000.0, 7200.0}) {
            const auto y = dsp::bandpass(tone(f, kFs, n), kFs, 500.0, 9000.0);
            // interior, away from edge transients
            const double gain_db = 20.0 * std::log10(rms(y, n / 4, 3 * n / 4) / rms(tone(f, kFs, n), n / 4, 3 * n / 4));
            CAPTURE(f);
            CHECK(std::fabs(gain_db) < 1.0);
        }
    }
    SUBCASE("stopband tones are down 40 dB or more") {
        for (double f : {100.0, 250.0, 18000.0, 22000.0}) {
            const auto y = dsp::bandpass(tone(f, kFs, n), kFs, 500.0, 9000.0);
            const double gain_db = 20.0 * std::log10(rms(y, n / 4, 3 * n / 4) / rms(tone(f, kFs, n), n / 4, 3 * n / 4) + 1e-30);
            CAPTURE(f);
            CHECK(gain_db <= -40.0);
        }
    }
    SUBCASE("zero phase: impulse stays put") {
        std::vector<double> x(1 << 14, 0.0);
        const std::size_t k = x.size() / 2;
        x[k] = 1.0;
        const auto env = dsp::envelope(dsp::bandpass(x, kFs, 500.0, 9000.0));
        const std::size_t peak = std::max_element(env.begin(), env.end()) - env.begin();
        CHECK(std::fabs(static_cast<double>(peak) - static_cast<double>(k)) / kFs < 0.1e-3);
    }
    SUBCASE("invalid band rejected") {
        CHECK_THROWS_AS(dsp::bandpass(tone(1000.0, kFs, 256), kFs, 9000.0, 500.0), ConfigError);
        CHECK_THROWS_AS(dsp::bandpass(tone(1000.0, kFs, 256), kFs, 500.0, 30000.0), ConfigError);
        CHECK_THROWS_AS(dsp::bandpass(tone(1000.0, kFs, 256), kFs, 0.0, 9000.0), ConfigError);
    }
}

TEST_CASE("envelope") {
    SUBCASE("pure tone gives its amplitude") {
        const double amp = 0.7;
        const auto env = dsp::envelope(tone(5000.0, kFs, 4096, amp));
        for (std::size_t i = 400; i + 400 < env.size(); ++i)
            CHECK(env[i] == doctest::Approx(amp).epsilon(0.01));
    }
    SUBCASE("zero in, zero out; length preserved") {
        const std::vector<double> x(1000, 0.0);
        const auto env = dsp::envelope(x);
        REQUIRE(env.size() == x.size());
        for (double v : env) CHECK(v == 0.0);
    }
    SUBCASE("recovers a slow amplitude modulation") {
        const std::size_t n = 1 << 14;
        std::vector<double> x(n), a(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = 1.0 + 0.5 * std::sin(2.0 * kPi * 30.0 * i / kFs);
            x[i] = a[i] * std::sin(2.0 * kPi * 5000.0 * i / kFs);
        }
        const auto env = dsp::envelope(x);
        for (std::size_t i = n / 8; i < 7 * n / 8; ++i)
            CHECK(env[i] == doctest::Approx(a[i]).epsilon(0.02));
    }
    SUBCASE("envelope dominates the narrowband signal magnitude") {
        const auto x = tone(3000.0, kFs, 8192, 0.9);
        const auto env = dsp::envelope(x);
        const double peak_x = 0.9;
        const double peak_env = *std::max_element(env.begin(), env.end());
        CHECK(peak_env >= peak_x * 0.95);
        for (double v : env) CHECK(v >= 0.0);
    }
}

TEST_CASE("bandpass then envelope commutes with integer shifts") {
    std::mt19937 gen(17);
    std::uniform_int_distribution<int> shift_dist(1, 300);
    const std::size_t n = 1 << 13;
    // a short in-band burst in the middle
    std::vector<double> x(n, 0.0);
    for (int i = 0; i < 48; ++i)
        x[n / 2 + i] = std::sin(2.0 * kPi * 4000.0 * i / kFs) * std::exp(-i / 24.0);
    const auto env0 = dsp::envelope(dsp::bandpass(x, kFs, 500.0, 9000.0));
    for (int trial = 0; trial < 4; ++trial) {
        const int k = shift_dist(gen);
        std::vector<double> xs(n, 0.0);
        for (std::size_t i = 0; i + k < n; ++i) xs[i + k] = x[i];
        const auto envs = dsp::envelope(dsp::bandpass(xs, kFs, 500.0, 9000.0));
        for (std::size_t i = n / 4; i < 3 * n / 4; ++i) {
            if (i + k >= n) break;
            CHECK(envs[i + k] == doctest::Approx(env0[i]).epsilon(1e-6).scale(1.0));
        }
    }
}

TEST_CASE("window_extract") {
    const std::vector<double> x(4800, 1.0);
    SUBCASE("0.7 ms at 48 kHz is 34 samples") {
        const auto seg = dsp::window_extract(x, kFs, 0.0, 0.05, 0.7e-3);
        CHECK(seg.samples.size() == 34);
        CHECK_FALSE(seg.clipped);
    }
    SUBCASE("window covering the whole trace returns the tapered trace") {
        const auto seg = dsp::window_extract(x, kFs, 0.0, 0.05, 1.0);
        CHECK(seg.samples.size() == x.size());
        CHECK(seg.clipped);
        // taper kept the interior intact
        CHECK(seg.samples[x.size() / 2] == doctest::Approx(1.0));
    }
    SUBCASE("overflow at the start clips and flags") {
        const auto seg = dsp::window_extract(x, kFs, 0.0, 0.0, 2.0e-3);
        CHECK(seg.clipped);
        CHECK(seg.samples.size() < 96);
        CHECK(seg.samples.size() >= 48);
    }
    SUBCASE("window fully outside the trace is an error") {
        CHECK_THROWS_AS(dsp::window_extract(x, kFs, 0.0, 1.0, 0.5e-3), ConfigError);
    }
}

TEST_CASE("power_spectrum") {
    SUBCASE("pure in-window tone concentrates at its bin") {
        auto x = tone(5000.0, kFs, 512);
        dsp::Segment seg{std::move(x), kFs, 0.0, 512 / kFs, false};
        const auto ps = dsp::power_spectrum(seg);
        const std::size_t peak = std::max_element(ps.power.begin(), ps.power.end()) - ps.power.begin();
        CHECK(ps.freqs_hz[peak] == doctest::Approx(5000.0).epsilon(0.02));
    }
    SUBCASE("Parseval: one-sided sum equals segment energy") {
        std::mt19937 gen(23);
        std::normal_distribution<double> nd;
        for (std::size_t n : {100, 256, 500}) {
            std::vector<double> x(n);
            for (auto& v : x) v = nd(gen);
            double energy = 0.0;
            for (double v : x) energy += v * v;
            dsp::Segment seg{std::move(x), kFs, 0.0, n / kFs, false};
            const auto ps = dsp::power_spectrum(seg);
            double total = 0.0;
            for (double p : ps.power) total += p;
            CHECK(total == doctest::Approx(energy).epsilon(1e-9));
        }
    }
    SUBCASE("windowed white noise averaged over 100 seeds is flat within 1.5 dB") {
        std::vector<double> mean_power;
        for (int seed = 0; seed < 100; ++seed) {
            std::mt19937 gen(1000 + seed);
            std::normal_distribution<double> nd;
            std::vector<double> x(200);
            for (auto& v : x) v = nd(gen);
            const auto seg = dsp::window_extract(x, kFs, 0.0, 100.0 / kFs, 0.7e-3);
            const auto ps = dsp::power_spectrum(seg);
            if (mean_power.empty()) mean_power.assign(ps.power.size(), 0.0);
            for (std::size_t k = 0; k < ps.power.size(); ++k) mean_power[k] += ps.power[k];
        }
        double lo = 1e300, hi = 0.0, mean = 0.0;
        std::size_t count = 0;
        for (std::size_t k = 1; k + 1 < mean_power.size(); ++k) {
            lo = std::min(lo, mean_power[k]);
            hi = std::max(hi, mean_power[k]);
            mean += mean_power[k];
            ++count;
        }
        mean /= count;
        CHECK(10.0 * std::log10(hi / mean) < 1.5);
        CHECK(10.0 * std::log10(mean / lo) < 1.5);
    }
    SUBCASE("sign flip invariance") {
        auto x = tone(3000.0, kFs, 400);
        auto seg = dsp::window_extract(x, kFs, 0.0, 200 / kFs, 400 / kFs);
        auto flipped = seg;
        for (auto& v : flipped.samples) v = -v;
        const auto a = dsp::power_spectrum(seg);
        const auto b = dsp::power_spectrum(flipped);
        for (std::size_t k = 0; k < a.power.size(); ++k)
            CHECK(a.power[k] == doctest::Approx(b.power[k]).epsilon(1e-12));
    }
    SUBCASE("grid step honors the resolution cap") {
        dsp::Segment seg{std::vector<double>(64, 1.0), kFs, 0.0, 64 / kFs, false};
        const auto ps = dsp::power_spectrum(seg, 100.0);
        CHECK(ps.freqs_hz[1] - ps.freqs_hz[0] <= 100.0);
    }
}

TEST_CASE("average_spectra") {
    auto make = [](double scale) {
        dsp::Segment seg{tone(4000.0, kFs, 256, scale), kFs, 0.0, 256 / kFs, false};
        return dsp::power_spectrum(seg);
    };
    SUBCASE("identical inputs average to themselves") {
        const auto a = make(1.0);
        const auto avg = dsp::average_spectra({a, a, a});
        for (std::size_t k = 0; k < a.power.size(); ++k)
            CHECK(avg.power[k] == doctest::Approx(a.power[k]).epsilon(1e-12));
    }
    SUBCASE("per-bin arithmetic mean and commutativity") {
        auto a = make(1.0);
        auto b = a;
        for (auto& p : b.power) p = 0.0;
        for (std::size_t k = 0; k < a.power.size(); ++k) {
            a.power[k] = 0.0;
            b.power[k] = 2.0;
        }
        const auto ab = dsp::average_spectra({a, b});
        const auto ba = dsp::average_spectra({b, a});
        for (std::size_t k = 0; k < ab.power.size(); ++k) {
            CHECK(ab.power[k] == doctest::Approx(1.0));
            CHECK(ab.power[k] == doctest::Approx(ba.power[k]).epsilon(1e-15));
        }
    }
    SUBCASE("mismatched grids rejected") {
        const auto a = make(1.0);
        dsp::Segment longer{tone(4000.0, kFs, 1024), kFs, 0.0, 1024 / kFs, false};
        const auto b = dsp::power_spectrum(longer);
        CHECK_THROWS_AS(dsp::average_spectra({a, b}), ConfigError);
    }
}
