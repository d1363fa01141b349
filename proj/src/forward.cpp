#include "edgeloc/forward.hpp"

#include "edgeloc/dsp.hpp"
#include "edgeloc/errors.hpp"
#include "edgeloc/kedge.hpp"
#include "fftops.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace edgeloc::forward {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// One propagation route: horizontal range plus an optional knife-edge
// spectral shape shared by every channel of one array.
struct Path {
    double range_h_m = 0.0;   // horizontal propagation distance R
    double gain = 1.0;
    bool has_loss = false;
    double theta_deg = 0.0;   // diffraction angle for the loss filter
    double d1_m = 0.0;
    double d2_m = 0.0;
    bool is_diffracted = true;
    std::vector<double> loss_mag; // filled per FFT grid
};

struct ChannelPlan {
    scene::Point3 pos;
    std::vector<int> path_idx;
};

double emission_peak_time_s(const std::vector<double>& e, double fs) {
    const std::size_t pad = fftops::next_pow2(std::max<std::size_t>(e.size() * 4, 256));
    std::vector<double> buf(e);
    buf.resize(pad, 0.0);
    auto env = dsp::envelope(buf);
    const std::size_t i = std::max_element(env.begin(), env.end()) - env.begin();
    double frac = 0.0;
    if (i > 0 && i + 1 < env.size()) {
        const double a = env[i - 1], b = env[i], c = env[i + 1];
        const double denom = a - 2.0 * b + c;
        if (denom < -1e-30) frac = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
    }
    return (static_cast<double>(i) + frac) / fs;
}

double tail_after_peak_s(const std::vector<double>& e, double fs, double t_pk) {
    return std::max(0.0, e.size() / fs - t_pk);
}

TraceSet synthesize(const std::vector<ChannelPlan>& channels, std::vector<Path> paths,
                    const scene::SourceGroundTruth& src, const EmissionSpec& emission,
                    const NoiseSpec& noise, const scene::PhysicsConfig& physics,
                    double duration_s, double min_duration) {
    const double fs = physics.fs_hz;
    if (!(duration_s >= min_duration)) {
        throw ConfigError("synthesize: duration " + std::to_string(duration_s) +
                          " s too short to contain all arrivals; need >= " +
                          std::to_string(min_duration) + " s");
    }

    const auto e = emission_waveform(emission, fs);
    const double t_pk = emission_peak_time_s(e, fs);

    const std::size_t n = static_cast<std::size_t>(std::llround(duration_s * fs));
    // headroom past the trace end so slow filter tails fall into discarded
    // samples instead of wrapping into the quiet head
    const std::size_t margin = static_cast<std::size_t>(std::llround(8e-3 * fs));
    const std::size_t nfft = fftops::next_pow2(std::max(n + e.size() + margin, e.size() * 2));
    const auto espec = fftops::rfft(e, nfft);
    const std::size_t nbins = espec.size();

    // per-path |L| on the FFT grid (shared across the path's channels)
    for (auto& p : paths) {
        if (!p.has_loss) continue;
        p.loss_mag.resize(nbins);
        p.loss_mag[0] = 0.5; // nu -> 0 as f -> 0
        for (std::size_t k = 1; k < nbins; ++k) {
            const double f = k * fs / nfft;
            p.loss_mag[k] = std::abs(kedge::diffraction_loss(
                kedge::fresnel_param(p.theta_deg, f, p.d1_m, p.d2_m, physics.c_mps)));
        }
    }

    TraceSet out;
    out.fs_hz = fs;
    out.t_start_s = 0.0;
    out.samples.resize(channels.size());
    out.channel_geometry.reserve(channels.size());

    std::vector<std::vector<double>> other_parts(channels.size());
    double diffracted_peak = 0.0;

    for (std::size_t ch = 0; ch < channels.size(); ++ch) {
        const auto& plan = channels[ch];
        out.channel_geometry.push_back(plan.pos);

        std::vector<std::complex<double>> x_diff(nbins, 0.0), x_other(nbins, 0.0);
        rng::Stream reverb_stream(noise.seed, 2 * ch + 1);

        for (int pi : plan.path_idx) {
            const auto& p = paths[pi];
            const double dz = plan.pos.z - src.z0_m;
            const double dist = std::max(std::sqrt(dz * dz + p.range_h_m * p.range_h_m), 1e-3);
            const double toa = src.t0_s + dist / physics.c_mps;
            const double base_gain = p.gain / dist;

            auto& target = p.is_diffracted ? x_diff : x_other;
            const double tau = toa - t_pk;
            for (std::size_t k = 0; k < nbins; ++k) {
                const double w = kTwoPi * (k * fs / nfft);
                std::complex<double> c = std::polar(base_gain, -w * tau) * espec[k];
                if (p.has_loss) c *= p.loss_mag[k];
                target[k] += c;
            }

            // Poisson echo train decaying after this arrival
            if (noise.reverb_density_per_s > 0.0) {
                double t = toa;
                while (true) {
                    t += -std::log(1.0 - reverb_stream.uniform()) / noise.reverb_density_per_s;
                    if (t > duration_s - tail_after_peak_s(e, fs, t_pk)) break;
                    const double mag = 0.15 + 0.45 * reverb_stream.uniform();
                    const double sign = reverb_stream.uniform() < 0.5 ? -1.0 : 1.0;
                    const double g = base_gain * sign * mag * std::exp(-(t - toa) / noise.reverb_decay_s);
                    const double tau_e = t - t_pk;
                    for (std::size_t k = 0; k < nbins; ++k) {
                        const double w = kTwoPi * (k * fs / nfft);
                        std::complex<double> c = std::polar(g, -w * tau_e) * espec[k];
                        if (p.has_loss) c *= p.loss_mag[k];
                        x_other[k] += c;
                    }
                }
            }
        }

        auto diff_part = fftops::irfft(x_diff, nfft);
        diff_part.resize(n);
        other_parts[ch] = fftops::irfft(x_other, nfft);
        other_parts[ch].resize(n);
        for (double v : diff_part) diffracted_peak = std::max(diffracted_peak, std::fabs(v));
        out.samples[ch] = std::move(diff_part);
    }

    for (std::size_t ch = 0; ch < channels.size(); ++ch) {
        auto& s = out.samples[ch];
        for (std::size_t i = 0; i < n; ++i) s[i] += other_parts[ch][i];
        if (noise.snr_db.has_value()) {
            const double sigma = diffracted_peak / std::pow(10.0, *noise.snr_db / 20.0);
            rng::Stream noise_stream(noise.seed, 2 * ch);
            for (std::size_t i = 0; i < n; ++i) s[i] += sigma * noise_stream.gaussian();
        }
    }
    return out;
}

void require_valid(const std::vector<scene::Violation>& v, const char* what) {
    if (!v.empty()) {
        std::string msg = std::string(what) + ": invalid scene:";
        for (const auto& x : v) msg += " [" + x.field + " " + x.constraint + "]";
        throw ConfigError(msg);
    }
}

void require_hidden(const scene::SourceGroundTruth& src) {
    if (!(src.theta_deg > 0.0) || !(src.theta_deg < 90.0))
        throw ConfigError("source must lie in the hidden region (0 < theta < 90 deg)");
    if (!(src.r1_m > 0.0)) throw ConfigError("source r1 must be > 0");
    if (src.z0_m < 0.0) throw ConfigError("source height must be >= 0");
}

} // namespace

std::vector<double> emission_waveform(const EmissionSpec& spec, double fs_hz) {
    if (!(fs_hz > 0)) throw ConfigError("emission_waveform: fs must be > 0");
    switch (spec.kind) {
        case EmissionKind::impulse:
            return {spec.amplitude};
        case EmissionKind::pulse_cycle: {
            if (!(spec.center_freq_hz > 0)) throw ConfigError("emission_waveform: center_freq must be > 0");
            if (!(spec.duty > 0) || spec.duty > 1.0) throw ConfigError("emission_waveform: duty must be in (0, 1]");
            if (!(fs_hz > 2.0 * spec.center_freq_hz))
                throw ConfigError("emission_waveform: undersampled; requires fs > " +
                                  std::to_string(2.0 * spec.center_freq_hz) + " Hz");
            const double support = spec.duty / spec.center_freq_hz;
            const std::size_t ns = static_cast<std::size_t>(std::ceil(support * fs_hz));
            std::vector<double> e(ns, 0.0);
            for (std::size_t i = 0; i < ns; ++i) {
                const double t = (i + 0.5) / fs_hz; // mid-sample instants
                if (t < support) e[i] = spec.amplitude * std::sin(kTwoPi * spec.center_freq_hz * t);
            }
            return e;
        }
        case EmissionKind::file: {
            if (spec.file_samples.empty()) throw ConfigError("emission_waveform: empty file waveform");
            if (spec.file_fs_hz > 0 && std::fabs(spec.file_fs_hz - fs_hz) > 1e-6)
                throw ConfigError("emission_waveform: waveform sampled at " +
                                  std::to_string(spec.file_fs_hz) + " Hz; expected " +
                                  std::to_string(fs_hz) + " Hz");
            auto e = spec.file_samples;
            for (auto& v : e) v *= spec.amplitude;
            return e;
        }
    }
    throw ConfigError("emission_waveform: unknown kind");
}

namespace {

double min_duration_impl(const std::vector<ChannelPlan>& channels, const std::vector<Path>& paths,
                         const scene::SourceGroundTruth& src, const EmissionSpec& emission,
                         const scene::PhysicsConfig& physics) {
    const auto e = emission_waveform(emission, physics.fs_hz);
    const double t_pk = emission_peak_time_s(e, physics.fs_hz);
    const double tail = tail_after_peak_s(e, physics.fs_hz, t_pk);
    double worst = 0.0;
    for (const auto& ch : channels) {
        for (int pi : ch.path_idx) {
            const double dz = ch.pos.z - src.z0_m;
            const double dist = std::sqrt(dz * dz + paths[pi].range_h_m * paths[pi].range_h_m);
            worst = std::max(worst, src.t0_s + dist / physics.c_mps + tail);
        }
    }
    return worst + 1e-3;
}

std::pair<std::vector<ChannelPlan>, std::vector<Path>>
doorway_plan(const scene::DoorwayScene& sc, const scene::SourceGroundTruth& src,
             double reflection_coeff) {
    const auto los = scene::los_direction(sc);
    const auto source = scene::source_from_polar(src.r1_m, src.theta_deg, src.z0_m, sc.edge_d, los);

    Path diff;
    diff.range_h_m = src.r1_m + sc.r2_d_m;
    diff.has_loss = true;
    diff.theta_deg = src.theta_deg;
    diff.d1_m = src.r1_m;
    diff.d2_m = sc.r2_d_m;
    diff.is_diffracted = true;

    Path refl;
    refl.range_h_m = scene::path_distance(source, sc.edge_r, sc.r2_r_m);
    refl.gain = reflection_coeff;
    refl.is_diffracted = false;

    if (!(diff.range_h_m < refl.range_h_m))
        throw ConfigError("synthesize_doorway: geometry puts the reflected arrival before the "
                          "diffracted one; check edge positions and r2 distances");

    std::vector<ChannelPlan> channels;
    for (const auto& pos : sc.array.positions()) channels.push_back({pos, {0, 1}});
    return {std::move(channels), {diff, refl}};
}

std::pair<std::vector<ChannelPlan>, std::vector<Path>>
edge_plan(const scene::EdgeScene& sc, const scene::SourceGroundTruth& src) {
    const auto offsets = scene::array_offsets_deg(sc);
    std::vector<Path> paths(2);
    std::vector<ChannelPlan> channels;
    for (int k = 0; k < 2; ++k) {
        paths[k].range_h_m = src.r1_m + sc.r2_m[k];
        paths[k].has_loss = true;
        paths[k].theta_deg = src.theta_deg + offsets[k];
        paths[k].d1_m = src.r1_m;
        paths[k].d2_m = sc.r2_m[k];
        paths[k].is_diffracted = true;
        for (const auto& pos : sc.arrays[k].positions()) channels.push_back({pos, {k}});
    }
    return {std::move(channels), std::move(paths)};
}

} // namespace

double min_duration_s(const scene::DoorwayScene& sc, const scene::SourceGroundTruth& src,
                      const EmissionSpec& emission, const scene::PhysicsConfig& physics) {
    auto [channels, paths] = doorway_plan(sc, src, 1.0);
    return min_duration_impl(channels, paths, src, emission, physics);
}

double min_duration_s(const scene::EdgeScene& sc, const scene::SourceGroundTruth& src,
                      const EmissionSpec& emission, const scene::PhysicsConfig& physics) {
    auto [channels, paths] = edge_plan(sc, src);
    return min_duration_impl(channels, paths, src, emission, physics);
}

TraceSet synthesize_doorway(const scene::DoorwayScene& sc, const scene::SourceGroundTruth& src,
                            const EmissionSpec& emission, const NoiseSpec& noise,
                            const scene::PhysicsConfig& physics, double duration_s,
                            double reflection_coeff) {
    require_valid(scene::validate_scene(sc), "synthesize_doorway");
    require_valid(scene::validate_physics(physics), "synthesize_doorway");
    require_hidden(src);
    auto [channels, paths] = doorway_plan(sc, src, reflection_coeff);
    const double min_dur = min_duration_impl(channels, paths, src, emission, physics);
    return synthesize(channels, std::move(paths), src, emission, noise, physics, duration_s, min_dur);
}

TraceSet synthesize_edge(const scene::EdgeScene& sc, const scene::SourceGroundTruth& src,
                         const EmissionSpec& emission, const NoiseSpec& noise,
                         const scene::PhysicsConfig& physics, double duration_s) {
    require_valid(scene::validate_scene(sc), "synthesize_edge");
    require_valid(scene::validate_physics(physics), "synthesize_edge");
    require_hidden(src);
    auto [channels, paths] = edge_plan(sc, src);
    const double min_dur = min_duration_impl(channels, paths, src, emission, physics);
    return synthesize(channels, std::move(paths), src, emission, noise, physics, duration_s, min_dur);
}

} // namespace edgeloc::forward
