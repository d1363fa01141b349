#include "edgeloc/localize.hpp"

#include "edgeloc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace edgeloc::localize {

namespace {

// Prefix trapezoid integral of one envelope row; lets every gate mean be
// evaluated in O(1) with exact fractional endpoints on the linear
// interpolant.
class EnvelopeIntegral {
public:
    EnvelopeIntegral(const std::vector<double>& e, double fs_hz, double t_start_s)
        : env_(&e), cum_(e.size(), 0.0), fs_(fs_hz), t_start_(t_start_s) {
        for (std::size_t i = 1; i < e.size(); ++i)
            cum_[i] = cum_[i - 1] + 0.5 * (e[i] + e[i - 1]);
    }

    // mean of the interpolated envelope over a time gate, clipped to the trace
    double gate_mean(double center_s, double gate_s) const {
        const double n = static_cast<double>(env_->size() - 1);
        const double a = (center_s - 0.5 * gate_s - t_start_) * fs_;
        const double b = (center_s + 0.5 * gate_s - t_start_) * fs_;
        const double ca = std::clamp(a, 0.0, n), cb = std::clamp(b, 0.0, n);
        if (cb - ca < 1e-9) {
            // gate degenerated to (at most) a point inside or outside the trace
            return value_at(std::clamp(0.5 * (a + b), 0.0, n));
        }
        return (prefix(cb) - prefix(ca)) / (cb - ca);
    }

private:
    // integral of the linear interpolant over [0, x]
    double prefix(double x) const {
        const std::size_t i = static_cast<std::size_t>(x);
        if (i + 1 >= env_->size()) return cum_.back();
        const double frac = x - i;
        const double e0 = (*env_)[i], e1 = (*env_)[i + 1];
        return cum_[i] + e0 * frac + 0.5 * (e1 - e0) * frac * frac;
    }

    double value_at(double x) const {
        const std::size_t i = static_cast<std::size_t>(std::min(x, static_cast<double>(env_->size() - 2)));
        const double frac = x - i;
        return (*env_)[i] + ((*env_)[i + 1] - (*env_)[i]) * frac;
    }

    const std::vector<double>* env_;
    std::vector<double> cum_;
    double fs_;
    double t_start_;
};

} // namespace

int GridSpec::nx() const { return std::max(1, static_cast<int>(std::floor((x_max_m - x_min_m) / step_m + 1e-9)) + 1); }
int GridSpec::ny() const { return std::max(1, static_cast<int>(std::floor((y_max_m - y_min_m) / step_m + 1e-9)) + 1); }
int GridSpec::nz() const {
    if (!z_range_m) return 1;
    return std::max(1, static_cast<int>(std::floor((z_range_m->second - z_range_m->first) / step_m + 1e-9)) + 1);
}

double Heatmap::at(int ix, int iy, int iz) const {
    const int nx = grid.nx(), ny = grid.ny();
    return values[(static_cast<std::size_t>(iz) * ny + iy) * nx + ix];
}

double gate_amplitude(const dsp::EnvelopeImage& env, const std::vector<double>& toa_per_channel_s,
                      double gate_s) {
    if (!(gate_s >= 0)) throw ConfigError("gate_amplitude: gate must be >= 0");
    if (static_cast<int>(toa_per_channel_s.size()) != env.rows())
        throw ConfigError("gate_amplitude: TOA count does not match envelope rows");
    double acc = 0.0;
    for (int ch = 0; ch < env.rows(); ++ch) {
        EnvelopeIntegral integral(env.values[ch], env.fs_hz, env.t_start_s);
        acc += integral.gate_mean(toa_per_channel_s[ch], gate_s);
    }
    return acc / env.rows();
}

Heatmap doorway_heatmap(const dsp::EnvelopeImage& env, const scene::DoorwayScene& sc,
                        const arrivals::WavefrontFit& fit, const GridSpec& grid,
                        const scene::PhysicsConfig& physics, double gate_s,
                        bool use_delay_and_sum) {
    const int nx = grid.nx(), ny = grid.ny(), nz = grid.nz();
    if (nx <= 0 || ny <= 0) throw ConfigError("doorway_heatmap: empty grid");
    if (!(fit.r0_m > 0)) throw ConfigError("doorway_heatmap: invalid wavefront fit");

    std::vector<EnvelopeIntegral> integrals;
    integrals.reserve(env.rows());
    for (int ch = 0; ch < env.rows(); ++ch)
        integrals.emplace_back(env.values[ch], env.fs_hz, env.t_start_s);

    Heatmap hm;
    hm.grid = grid;
    hm.values.assign(static_cast<std::size_t>(nx) * ny * nz, 0.0);
    double best = -1.0;

    for (int iz = 0; iz < nz; ++iz) {
        const double z0 = grid.z_range_m ? grid.z_range_m->first + iz * grid.step_m : fit.z0_m;
        for (int iy = 0; iy < ny; ++iy) {
            const double y = grid.y_min_m + iy * grid.step_m;
            for (int ix = 0; ix < nx; ++ix) {
                const double x = grid.x_min_m + ix * grid.step_m;
                const scene::Point3 p{x, y, z0};
                const double r_d = scene::path_distance(p, sc.edge_d, sc.r2_d_m);
                const double r_r = scene::path_distance(p, sc.edge_r, sc.r2_r_m);

                double a_d = 0.0, a_r = 0.0;
                for (int ch = 0; ch < env.rows(); ++ch) {
                    const double z = env.heights_m[ch];
                    a_d += integrals[ch].gate_mean(
                        arrivals::toa_model(z, r_d, z0, fit.t0_s, physics.c_mps), gate_s);
                    a_r += integrals[ch].gate_mean(
                        arrivals::toa_model(z, r_r, z0, fit.t0_s, physics.c_mps), gate_s);
                }
                a_d /= env.rows();
                a_r /= env.rows();

                const double m = use_delay_and_sum
                                     ? 0.5 * (a_d + a_r)
                                     : (a_d / (r_d * r_d)) * (a_r / (r_r * r_r));
                hm.values[(static_cast<std::size_t>(iz) * ny + iy) * nx + ix] = m;
                if (m > best) {
                    best = m;
                    hm.argmax = {x, y, z0};
                }
            }
        }
    }
    hm.argmax_value = best;
    return hm;
}

namespace {

void screen_peak_snr(const dsp::EnvelopeImage& env, const PipelineConfig& cfg) {
    // peak envelope across channels vs mean leading background
    const std::size_t bg_n = std::max<std::size_t>(
        1, std::min(env.length(), static_cast<std::size_t>(std::llround(cfg.detect.noise_window_s * env.fs_hz))));
    double best_ratio = 0.0;
    bool any_signal = false;
    for (const auto& row : env.values) {
        double bg = 0.0;
        for (std::size_t i = 0; i < bg_n; ++i) bg += row[i];
        bg /= bg_n;
        const double peak = *std::max_element(row.begin(), row.end());
        if (peak > 0 && bg <= 0) { any_signal = true; continue; } // noiseless
        if (bg > 0) best_ratio = std::max(best_ratio, peak / bg);
    }
    if (!any_signal && best_ratio < cfg.min_peak_snr)
        throw RejectionError(RejectionError::Kind::LowSnr,
                             "screening: peak envelope below " + std::to_string(cfg.min_peak_snr) +
                             "x the background level");
}

arrivals::ArrivalSet detect_screened(const dsp::EnvelopeImage& env, const PipelineConfig& cfg) {
    screen_peak_snr(env, cfg);
    auto arr = arrivals::detect_first_arrival(env, cfg.detect);
    if (arr.n_detected() < 3)
        throw RejectionError(RejectionError::Kind::NoDetection,
                             "no wavefront detected on enough channels (" +
                             std::to_string(arr.n_detected()) + " of " +
                             std::to_string(env.rows()) + ")");
    return arr;
}

} // namespace

LocalizationResult localize_doorway(const TraceSet& traces, const scene::DoorwayScene& sc,
                                    const scene::PhysicsConfig& physics,
                                    const PipelineConfig& cfg) {
    auto violations = scene::validate_scene(sc);
    if (!violations.empty()) throw ConfigError("localize_doorway: invalid scene: " + violations[0].field);
    if (traces.channels() != sc.array.count)
        throw ConfigError("localize_doorway: trace channel count " + std::to_string(traces.channels()) +
                          " does not match the array (" + std::to_string(sc.array.count) + ")");

    const auto env = dsp::envelope_image(traces, cfg.band_lo_hz, cfg.band_hi_hz);
    const auto arr = detect_screened(env, cfg);
    const auto fit = arrivals::fit_wavefront(arr, physics.c_mps, cfg.fit);

    GridSpec grid = cfg.grid;
    if (cfg.full_3d && !grid.z_range_m) {
        const double span = 0.5;
        grid.z_range_m = {std::max(0.0, fit.z0_m - span), fit.z0_m + span};
    }
    const auto hm = doorway_heatmap(env, sc, fit, grid, physics, cfg.gate_s, cfg.use_delay_and_sum);

    const auto los = scene::los_direction(sc);
    const auto polar = scene::polar_from_source(hm.argmax, sc.edge_d, los);

    LocalizationResult res;
    res.r1_m = polar.r1_m;
    res.theta_deg = polar.theta_deg;
    res.z0_m = grid.z_range_m ? hm.argmax.z : fit.z0_m;
    res.fit_rmse_s = fit.rmse_s;
    res.peak_metric = hm.argmax_value;
    return res;
}

AzimuthEstimate estimate_azimuth(const kedge::RatioCurve& measured, const scene::EdgeScene& sc,
                                 const scene::PhysicsConfig& physics, const AzimuthSearch& search) {
    if (measured.freqs_hz.empty()) throw ConfigError("estimate_azimuth: empty measured ratio");
    // fit band = requested band intersected with the measured grid
    std::vector<double> freqs;
    std::vector<double> meas_db;
    for (std::size_t i = 0; i < measured.freqs_hz.size(); ++i) {
        const double f = measured.freqs_hz[i];
        if (f >= search.band_lo_hz && f <= search.band_hi_hz) {
            freqs.push_back(f);
            meas_db.push_back(measured.ratio_db[i]);
        }
    }
    if (freqs.size() < 4)
        throw ConfigError("estimate_azimuth: no overlap between the measured grid and the fit band");

    // weights linear in frequency
    std::vector<double> w(freqs.size());
    double wsum = 0.0;
    for (std::size_t i = 0; i < freqs.size(); ++i) { w[i] = freqs[i]; wsum += w[i]; }
    for (auto& x : w) x /= wsum;

    const double d2 = 0.5 * (sc.r2_m[0] + sc.r2_m[1]);
    AzimuthEstimate est;
    double best = std::numeric_limits<double>::infinity();
    for (double th = search.theta_min_deg; th <= search.theta_max_deg + 1e-9; th += search.step_deg) {
        const auto theory = kedge::ratio_curve(th, sc.delta_theta_deg, search.d1_m, d2, freqs, physics.c_mps);
        double obj = 0.0;
        for (std::size_t i = 0; i < freqs.size(); ++i) {
            const double e = meas_db[i] - theory.ratio_db[i];
            obj += w[i] * e * e;
        }
        est.thetas_deg.push_back(th);
        est.objective.push_back(obj);
        if (obj < best) { best = obj; est.theta_deg = th; }
    }

    const double span = *std::max_element(est.objective.begin(), est.objective.end()) - best;
    if (!(span > 1e-9))
        throw RejectionError(RejectionError::Kind::Ambiguity,
                             "estimate_azimuth: objective is flat over the search range");

    // parabolic refinement around the grid minimum
    const std::size_t i_best = std::min_element(est.objective.begin(), est.objective.end()) - est.objective.begin();
    if (i_best > 0 && i_best + 1 < est.objective.size()) {
        const double a = est.objective[i_best - 1], b = est.objective[i_best], c = est.objective[i_best + 1];
        const double denom = a - 2.0 * b + c;
        if (denom > 1e-30)
            est.theta_deg += std::clamp(0.5 * (a - c) / denom, -0.5, 0.5) * search.step_deg;
    }
    return est;
}

namespace {

struct ArraySplit {
    TraceSet traces;
    double r2;
};

std::array<ArraySplit, 2> split_by_array(const TraceSet& traces, const scene::EdgeScene& sc) {
    const int n0 = sc.arrays[0].count, n1 = sc.arrays[1].count;
    if (traces.channels() != n0 + n1)
        throw ConfigError("localize_edge: need " + std::to_string(n0 + n1) + " channels (two arrays), got " +
                          std::to_string(traces.channels()));
    std::vector<int> idx0(n0), idx1(n1);
    std::iota(idx0.begin(), idx0.end(), 0);
    std::iota(idx1.begin(), idx1.end(), n0);
    return {ArraySplit{traces.select(idx0), sc.r2_m[0]},
            ArraySplit{traces.select(idx1), sc.r2_m[1]}};
}

} // namespace

LocalizationResult localize_edge(const TraceSet& traces, const scene::EdgeScene& sc,
                                 const scene::PhysicsConfig& physics, const PipelineConfig& cfg) {
    auto violations = scene::validate_scene(sc);
    if (!violations.empty()) throw ConfigError("localize_edge: invalid scene: " + violations[0].field);
    auto splits = split_by_array(traces, sc);

    std::array<arrivals::WavefrontFit, 2> fits;
    std::array<dsp::EnvelopeImage, 2> envs;
    for (int k = 0; k < 2; ++k) {
        envs[k] = dsp::envelope_image(splits[k].traces, cfg.band_lo_hz, cfg.band_hi_hz);
        const auto arr = detect_screened(envs[k], cfg);
        fits[k] = arrivals::fit_wavefront(arr, physics.c_mps, cfg.fit);
    }

    if (std::fabs(fits[0].z0_m - fits[1].z0_m) > cfg.z0_agreement_m)
        throw RejectionError(RejectionError::Kind::Inconsistency,
                             "localize_edge: the two arrays disagree on source height (" +
                             std::to_string(fits[0].z0_m) + " vs " + std::to_string(fits[1].z0_m) + " m)");

    // inverse-variance combination of the two fits
    auto weight = [](double var) { return 1.0 / std::max(var, 1e-12); };
    const double wz0 = weight(fits[0].variance[1]), wz1 = weight(fits[1].variance[1]);
    const double z0 = (fits[0].z0_m * wz0 + fits[1].z0_m * wz1) / (wz0 + wz1);
    const double r1_a = fits[0].r0_m - splits[0].r2;
    const double r1_b = fits[1].r0_m - splits[1].r2;
    const double wr0 = weight(fits[0].variance[0]), wr1 = weight(fits[1].variance[0]);
    const double r1 = (r1_a * wr0 + r1_b * wr1) / (wr0 + wr1);
    if (!(r1 > 0))
        throw RejectionError(RejectionError::Kind::Degenerate,
                             "localize_edge: fitted range sits inside the visible leg (r1 <= 0)");

    // per-array spectra averaged over the three channels nearest the fitted height
    std::array<dsp::PowerSpectrum, 2> spectra;
    for (int k = 0; k < 2; ++k) {
        const auto& tr = splits[k].traces;
        std::vector<int> order(tr.channels());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return std::fabs(tr.channel_geometry[a].z - z0) < std::fabs(tr.channel_geometry[b].z - z0);
        });
        const int n_central = std::min(3, tr.channels());
        std::vector<dsp::PowerSpectrum> per_channel;
        for (int i = 0; i < n_central; ++i) {
            const int ch = order[i];
            const auto filtered = dsp::bandpass(tr.samples[ch], tr.fs_hz, cfg.band_lo_hz, cfg.band_hi_hz);
            const double toa = arrivals::toa_model(tr.channel_geometry[ch].z, fits[k].r0_m,
                                                   fits[k].z0_m, fits[k].t0_s, physics.c_mps);
            const auto seg = dsp::window_extract(filtered, tr.fs_hz, tr.t_start_s, toa, cfg.window_s);
            per_channel.push_back(dsp::power_spectrum(seg));
        }
        spectra[k] = dsp::average_spectra(per_channel);
    }

    if (spectra[0].freqs_hz != spectra[1].freqs_hz)
        throw ConfigError("localize_edge: spectra landed on different grids");
    kedge::RatioCurve measured;
    measured.delta_theta_deg = sc.delta_theta_deg;
    for (std::size_t i = 0; i < spectra[0].freqs_hz.size(); ++i) {
        const double p0 = spectra[0].power[i], p1 = spectra[1].power[i];
        if (p0 <= 0 || p1 <= 0) continue;
        measured.freqs_hz.push_back(spectra[0].freqs_hz[i]);
        measured.ratio_db.push_back(10.0 * std::log10(p0 / p1));
    }

    AzimuthSearch search = cfg.azimuth;
    search.d1_m = r1;
    const auto est = estimate_azimuth(measured, sc, physics, search);

    LocalizationResult res;
    res.r1_m = r1;
    res.theta_deg = est.theta_deg;
    res.z0_m = z0;
    res.fit_rmse_s = std::max(fits[0].rmse_s, fits[1].rmse_s);
    res.peak_metric = 0.0;
    res.objective_theta_deg = est.thetas_deg;
    res.objective = est.objective;
    return res;
}

} // namespace edgeloc::localize
