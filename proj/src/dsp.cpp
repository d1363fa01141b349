#include "edgeloc/dsp.hpp"

#include "edgeloc/errors.hpp"
#include "fftops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace edgeloc::dsp {

namespace {

constexpr double kPi = std::numbers::pi;

double bessel_i0(double x) {
    // series; converges fast for the beta values used here
    double sum = 1.0, term = 1.0;
    const double q = 0.25 * x * x;
    for (int k = 1; k < 60; ++k) {
        term *= q / (k * k);
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

// Kaiser windowed-sinc bandpass. Single-pass design target 60 dB at the
// stop edges; the forward-backward application doubles that and squares
// the (already tiny) passband ripple.
std::vector<double> design_bandpass(double fs, double lo, double hi) {
    const double nyq = 0.5 * fs;
    const double stop1 = 0.5 * lo;
    const double pass1 = 1.1 * lo;
    const double pass2 = 0.9 * hi;
    const double stop2 = std::min(1.8 * hi, 0.99 * nyq);
    const double width = std::min(pass1 - stop1, std::max(stop2 - pass2, 1e-9));

    const double atten_db = 60.0;
    const double beta = 0.1102 * (atten_db - 8.7);
    const double dw = 2.0 * kPi * width / fs;
    int n = static_cast<int>(std::ceil((atten_db - 7.95) / (2.285 * dw)));
    if (n % 2 == 0) ++n;
    n = std::max(n, 11);

    const double fc1 = 0.5 * (stop1 + pass1);
    const double fc2 = 0.5 * (pass2 + stop2);
    const double w1 = 2.0 * kPi * fc1 / fs;
    const double w2 = 2.0 * kPi * fc2 / fs;

    std::vector<double> h(n);
    const int mid = (n - 1) / 2;
    const double i0b = bessel_i0(beta);
    for (int i = 0; i < n; ++i) {
        const int m = i - mid;
        double ideal;
        if (m == 0) {
            ideal = (w2 - w1) / kPi;
        } else {
            ideal = (std::sin(w2 * m) - std::sin(w1 * m)) / (kPi * m);
        }
        const double r = 2.0 * i / (n - 1) - 1.0;
        h[i] = ideal * bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0b;
    }
    return h;
}

} // namespace

std::vector<double> bandpass(const std::vector<double>& x, double fs_hz, double lo_hz, double hi_hz) {
    if (!(lo_hz > 0) || !(hi_hz > lo_hz) || !(hi_hz < 0.5 * fs_hz))
        throw ConfigError("bandpass: need 0 < lo < hi < fs/2");
    if (x.empty()) return {};

    const auto h = design_bandpass(fs_hz, lo_hz, hi_hz);
    const std::size_t k = h.size();

    auto y = fftops::fftconv(x, h);          // length n + k - 1
    std::reverse(y.begin(), y.end());
    y = fftops::fftconv(y, h);               // length n + 2(k - 1)
    std::reverse(y.begin(), y.end());

    // forward+backward over a symmetric kernel: net delay is k - 1 samples
    std::vector<double> out(x.size());
    std::copy(y.begin() + (k - 1), y.begin() + (k - 1) + x.size(), out.begin());
    return out;
}

std::vector<double> envelope(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    std::vector<std::complex<double>> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = x[i];
    auto spec = fftops::fft(buf);
    // analytic-signal weights
    for (std::size_t k = 1; k < n; ++k) {
        if (2 * k < n) spec[k] *= 2.0;
        else if (2 * k > n) spec[k] = 0.0;
        // 2k == n (Nyquist, even n): weight 1
    }
    auto analytic = fftops::ifft(spec);
    std::vector<double> env(n);
    for (std::size_t i = 0; i < n; ++i) env[i] = std::abs(analytic[i]);
    return env;
}

Segment window_extract(const std::vector<double>& x, double fs_hz, double t_start_s,
                       double center_s, double width_s) {
    if (x.empty()) throw ConfigError("window_extract: empty trace");
    if (!(width_s > 0)) throw ConfigError("window_extract: width must be > 0");
    const long n_want = std::lround(width_s * fs_hz);
    if (n_want < 1) throw ConfigError("window_extract: window shorter than one sample");

    const double center_idx = (center_s - t_start_s) * fs_hz;
    long first = std::lround(center_idx) - n_want / 2;
    long last = first + n_want;                 // exclusive
    bool clipped = false;
    if (first < 0) { first = 0; clipped = true; }
    if (last > static_cast<long>(x.size())) { last = static_cast<long>(x.size()); clipped = true; }
    if (last <= first) throw ConfigError("window_extract: window falls outside the trace");

    Segment seg;
    seg.fs_hz = fs_hz;
    seg.center_s = center_s;
    seg.width_s = width_s;
    seg.clipped = clipped;
    seg.samples.assign(x.begin() + first, x.begin() + last);

    // raised-cosine taper over 10% of each end
    const std::size_t m = seg.samples.size();
    const std::size_t ramp = static_cast<std::size_t>(std::floor(0.1 * m));
    for (std::size_t i = 0; i < ramp; ++i) {
        const double w = 0.5 * (1.0 - std::cos(kPi * (i + 1) / (ramp + 1)));
        seg.samples[i] *= w;
        seg.samples[m - 1 - i] *= w;
    }
    return seg;
}

PowerSpectrum power_spectrum(const Segment& seg, double max_grid_step_hz) {
    if (seg.samples.empty()) throw ConfigError("power_spectrum: empty segment");
    if (!(max_grid_step_hz > 0)) throw ConfigError("power_spectrum: grid step must be > 0");
    const std::size_t min_n = static_cast<std::size_t>(std::ceil(seg.fs_hz / max_grid_step_hz));
    const std::size_t n = fftops::next_pow2(std::max(seg.samples.size(), min_n));

    auto spec = fftops::rfft(seg.samples, n);
    PowerSpectrum ps;
    ps.window_center_s = seg.center_s;
    ps.window_len_s = seg.width_s;
    ps.freqs_hz.resize(spec.size());
    ps.power.resize(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) {
        ps.freqs_hz[k] = k * seg.fs_hz / n;
        const double mag2 = std::norm(spec[k]);
        const bool edge_bin = (k == 0) || (2 * k == n);
        ps.power[k] = (edge_bin ? 1.0 : 2.0) * mag2 / static_cast<double>(n);
    }
    return ps;
}

PowerSpectrum average_spectra(const std::vector<PowerSpectrum>& spectra) {
    if (spectra.empty()) throw ConfigError("average_spectra: no spectra");
    const auto& ref = spectra.front();
    PowerSpectrum out;
    out.freqs_hz = ref.freqs_hz;
    out.power.assign(ref.power.size(), 0.0);
    double center = 0.0;
    for (const auto& s : spectra) {
        if (s.freqs_hz != ref.freqs_hz)
            throw ConfigError("average_spectra: mismatched frequency grids");
        for (std::size_t k = 0; k < s.power.size(); ++k) out.power[k] += s.power[k];
        center += s.window_center_s;
    }
    const double inv = 1.0 / spectra.size();
    for (auto& p : out.power) p *= inv;
    out.window_center_s = center * inv;
    out.window_len_s = ref.window_len_s;
    return out;
}

EnvelopeImage envelope_image(const TraceSet& traces, double lo_hz, double hi_hz) {
    if (traces.channels() == 0) throw ConfigError("envelope_image: no channels");
    if (traces.channel_geometry.size() != traces.samples.size())
        throw ConfigError("envelope_image: geometry/channel count mismatch");

    std::vector<int> order(traces.channels());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return traces.channel_geometry[a].z < traces.channel_geometry[b].z;
    });

    EnvelopeImage img;
    img.fs_hz = traces.fs_hz;
    img.t_start_s = traces.t_start_s;
    img.values.reserve(traces.channels());
    img.heights_m.reserve(traces.channels());
    for (int idx : order) {
        img.values.push_back(envelope(bandpass(traces.samples[idx], traces.fs_hz, lo_hz, hi_hz)));
        img.heights_m.push_back(traces.channel_geometry[idx].z);
    }
    return img;
}

} // namespace edgeloc::dsp
