#include "edgeloc/cli.hpp"

#include "edgeloc/errors.hpp"
#include "edgeloc/forward.hpp"
#include "edgeloc/io.hpp"
#include "edgeloc/localize.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace edgeloc::cli {

namespace {

namespace fs = std::filesystem;

std::string default_out_dir() {
    if (const char* env = std::getenv("EDGELOC_OUT_DIR"); env && *env) return env;
    return ".";
}

fs::path ensure_dir(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw ConfigError("cannot create output directory: " + dir);
    return p;
}

std::string sidecar_path_for(const std::string& wav_path) {
    fs::path p(wav_path);
    p.replace_extension(".meta");
    return p.string();
}

void parse_band(const std::string& s, localize::PipelineConfig& cfg) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("--band expects lo:hi in Hz");
    try {
        cfg.band_lo_hz = std::stod(s.substr(0, colon));
        cfg.band_hi_hz = std::stod(s.substr(colon + 1));
    } catch (const std::exception&) {
        throw ConfigError("--band expects numeric lo:hi");
    }
}

struct LocalizeInputs {
    TraceSet traces;
    io::SceneSpec spec;
};

LocalizeInputs load_localize_inputs(const std::string& input, const std::string& scene_arg) {
    LocalizeInputs in;
    in.traces = io::read_wav(input);

    const std::string meta = sidecar_path_for(input);
    bool have_sidecar = fs::exists(meta);
    if (have_sidecar) {
        auto sc = io::read_sidecar(meta);
        if (std::llround(sc.fs_hz) != std::llround(in.traces.fs_hz))
            throw ConfigError("input WAV sampled at " + std::to_string(in.traces.fs_hz) +
                              " Hz but sidecar expects " + std::to_string(sc.fs_hz) + " Hz");
        if (static_cast<int>(sc.channel_geometry.size()) != in.traces.channels())
            throw ConfigError("input WAV has " + std::to_string(in.traces.channels()) +
                              " channels but sidecar describes " +
                              std::to_string(sc.channel_geometry.size()));
        in.traces.channel_geometry = sc.channel_geometry;
        in.traces.t_start_s = sc.t_start_s;
        in.spec = std::move(sc.spec);
    }
    if (!scene_arg.empty()) {
        auto override_spec = io::load_scene(scene_arg);
        if (have_sidecar) override_spec.source = in.spec.source; // keep ground truth for reporting
        in.spec = std::move(override_spec);
    } else if (!have_sidecar) {
        throw ConfigError("no sidecar found at " + meta + " and no --scene given");
    }

    if (std::llround(in.spec.physics.fs_hz) != std::llround(in.traces.fs_hz))
        throw ConfigError("input WAV sampled at " + std::to_string(in.traces.fs_hz) +
                          " Hz but the scene expects fs = " + std::to_string(in.spec.physics.fs_hz) + " Hz");

    if (in.traces.channel_geometry.empty()) {
        // geometry from the scene definition (synth channel order)
        if (in.spec.is_doorway()) {
            in.traces.channel_geometry = in.spec.doorway->array.positions();
        } else if (in.spec.edge) {
            for (int k = 0; k < 2; ++k)
                for (const auto& p : in.spec.edge->arrays[k].positions())
                    in.traces.channel_geometry.push_back(p);
        }
        if (static_cast<int>(in.traces.channel_geometry.size()) != in.traces.channels())
            throw ConfigError("scene describes " + std::to_string(in.traces.channel_geometry.size()) +
                              " channels but the WAV has " + std::to_string(in.traces.channels()));
    }
    return in;
}

void print_result(const localize::LocalizationResult& res, const io::SceneSpec& spec) {
    std::printf("r1 = %.4f m, theta = %.3f deg, z0 = %.4f m (fit rmse %.4g ms, peak metric %.6g)\n",
                res.r1_m, res.theta_deg, res.z0_m, res.fit_rmse_s * 1e3, res.peak_metric);
    if (spec.source) {
        const auto& gt = *spec.source;
        std::printf("vs ground truth: dr1 = %+.4f m (%.2f%%), dtheta = %+.3f deg, dz0 = %+.4f m\n",
                    res.r1_m - gt.r1_m, 100.0 * (res.r1_m - gt.r1_m) / gt.r1_m,
                    res.theta_deg - gt.theta_deg, res.z0_m - gt.z0_m);
    }
}

int cmd_synth(const std::string& scene_arg, const std::string& out_dir, long seed,
              double snr_db, double duration, double reverb_density, double reverb_decay,
              const std::string& format) {
    auto spec = io::load_scene(scene_arg);
    if (!spec.source)
        throw ConfigError("synth requires a [source] section (ground truth) in the scene");
    if (seed >= 0) spec.noise.seed = static_cast<std::uint64_t>(seed);
    if (std::isfinite(snr_db)) spec.noise.snr_db = snr_db;
    if (duration > 0) spec.duration_s = duration;
    if (reverb_density >= 0) spec.noise.reverb_density_per_s = reverb_density;
    if (reverb_decay > 0) spec.noise.reverb_decay_s = reverb_decay;

    TraceSet traces;
    if (spec.is_doorway()) {
        traces = forward::synthesize_doorway(*spec.doorway, *spec.source, spec.emission,
                                             spec.noise, spec.physics, spec.duration_s,
                                             spec.reflection_coeff);
    } else {
        traces = forward::synthesize_edge(*spec.edge, *spec.source, spec.emission,
                                          spec.noise, spec.physics, spec.duration_s);
    }

    const auto dir = ensure_dir(out_dir);
    const auto wav = (dir / "traces.wav").string();
    io::write_wav(wav, traces,
                  format == "pcm16" ? io::WavFormat::pcm16 : io::WavFormat::float32);
    io::write_sidecar(sidecar_path_for(wav), spec, traces);
    std::printf("wrote %s (%d channels, %zu samples at %.0f Hz) and sidecar\n",
                wav.c_str(), traces.channels(), traces.length(), traces.fs_hz);
    return 0;
}

int cmd_localize_doorway(const std::string& input, const std::string& scene_arg,
                         const std::string& out_dir, const localize::PipelineConfig& cfg) {
    auto in = load_localize_inputs(input, scene_arg);
    if (!in.spec.is_doorway())
        throw ConfigError("localize-doorway needs a doorway scene; this input describes an edge scene");

    const auto res = localize::localize_doorway(in.traces, *in.spec.doorway, in.spec.physics, cfg);

    const auto dir = ensure_dir(out_dir);
    const auto env = dsp::envelope_image(in.traces, cfg.band_lo_hz, cfg.band_hi_hz);
    io::write_envelope_csv((dir / "envelope.csv").string(), env);
    const auto arr = arrivals::detect_first_arrival(env, cfg.detect);
    io::write_arrivals_csv((dir / "arrivals.csv").string(), arr);
    const auto fit = arrivals::fit_wavefront(arr, in.spec.physics.c_mps, cfg.fit);
    const auto hm = localize::doorway_heatmap(env, *in.spec.doorway, fit, cfg.grid,
                                              in.spec.physics, cfg.gate_s, cfg.use_delay_and_sum);
    io::write_heatmap_csv((dir / "heatmap.csv").string(), hm);
    io::write_heatmap_pgm((dir / "heatmap.pgm").string(), hm);
    io::write_result_csv((dir / "result.csv").string(), res);
    print_result(res, in.spec);
    return 0;
}

int cmd_localize_edge(const std::string& input, const std::string& scene_arg,
                      const std::string& out_dir, const localize::PipelineConfig& cfg) {
    auto in = load_localize_inputs(input, scene_arg);
    if (in.spec.is_doorway())
        throw ConfigError("localize-edge needs an edge scene with two arrays; this input describes a doorway");

    const auto res = localize::localize_edge(in.traces, *in.spec.edge, in.spec.physics, cfg);

    const auto dir = ensure_dir(out_dir);
    const int n0 = in.spec.edge->arrays[0].count;
    std::vector<int> idx0(n0), idx1(in.traces.channels() - n0);
    for (int i = 0; i < n0; ++i) idx0[i] = i;
    for (std::size_t i = 0; i < idx1.size(); ++i) idx1[i] = n0 + static_cast<int>(i);
    io::write_envelope_csv((dir / "envelope_a.csv").string(),
                           dsp::envelope_image(in.traces.select(idx0), cfg.band_lo_hz, cfg.band_hi_hz));
    io::write_envelope_csv((dir / "envelope_b.csv").string(),
                           dsp::envelope_image(in.traces.select(idx1), cfg.band_lo_hz, cfg.band_hi_hz));
    io::write_objective_csv((dir / "objective.csv").string(), res.objective_theta_deg, res.objective);
    io::write_result_csv((dir / "result.csv").string(), res);
    print_result(res, in.spec);
    return 0;
}

int cmd_curves(const std::vector<double>& thetas, double delta_theta, double d1, double d2,
               const std::string& freq_spec, double c, const std::string& out_dir) {
    if (thetas.empty()) {
        std::fprintf(stderr, "warning: empty theta list, nothing to do\n");
        return 0;
    }
    double lo = 500, hi = 9000, step = 50;
    if (!freq_spec.empty()) {
        std::istringstream ss(freq_spec);
        std::string a, b, cstr;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, cstr))
            throw ConfigError("--freq expects lo:hi:step in Hz");
        try {
            lo = std::stod(a); hi = std::stod(b); step = std::stod(cstr);
        } catch (const std::exception&) {
            throw ConfigError("--freq expects numeric lo:hi:step");
        }
    }
    const auto grid = kedge::freq_grid(lo, hi, step);
    const auto dir = ensure_dir(out_dir);
    for (double th : thetas) {
        std::ostringstream name;
        name << "loss_theta" << th << ".csv";
        io::write_loss_curve_csv((dir / name.str()).string(),
                                 kedge::loss_curve(th, d1, d2, grid, c));
        if (delta_theta > 0) {
            std::ostringstream rname;
            rname << "ratio_theta" << th << ".csv";
            io::write_ratio_curve_csv((dir / rname.str()).string(),
                                      kedge::ratio_curve(th, delta_theta, d1, d2, grid, c));
        }
    }
    std::printf("wrote %zu loss curve(s)%s to %s\n", thetas.size(),
                delta_theta > 0 ? " and ratio curve(s)" : "", dir.string().c_str());
    return 0;
}

void add_pipeline_flags(CLI::App* cmd, std::string& band, double& window_ms, double& gate_ms,
                        double& grid_step) {
    cmd->add_option("--band", band, "analysis band lo:hi in Hz (default 500:9000)");
    cmd->add_option("--window-ms", window_ms, "spectral window length in ms (default 0.7)");
    cmd->add_option("--gate-ms", gate_ms, "TOA gate length in ms (default 0.2)");
    cmd->add_option("--grid-step-m", grid_step, "heatmap grid step in m (default 0.05)");
}

} // namespace

int run(std::vector<std::string> args) {
    CLI::App app{"edge-diffraction acoustic source localization"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize traces for a scene with ground truth");
    std::string sy_scene, sy_out = default_out_dir(), sy_format = "float32";
    long sy_seed = -1;
    double sy_snr = std::numeric_limits<double>::quiet_NaN();
    double sy_duration = 0, sy_rev_density = -1, sy_rev_decay = 0;
    synth->add_option("--scene", sy_scene, "scene preset (doorway|edge) or config path")->required();
    synth->add_option("--out", sy_out, "output directory (default $EDGELOC_OUT_DIR or .)");
    synth->add_option("--seed", sy_seed, "noise/reverb RNG seed");
    synth->add_option("--snr-db", sy_snr, "white-noise SNR vs peak diffracted arrival, dB");
    synth->add_option("--duration", sy_duration, "trace duration in seconds");
    synth->add_option("--reverb-density", sy_rev_density, "reverberation events per second");
    synth->add_option("--reverb-decay", sy_rev_decay, "reverberation decay constant, seconds");
    synth->add_option("--format", sy_format, "WAV sample format: float32|pcm16")
        ->check(CLI::IsMember({"float32", "pcm16"}));

    // localize-doorway / localize-edge share most flags
    std::string ld_input, ld_scene, ld_out = default_out_dir(), ld_band;
    double ld_window = 0.7, ld_gate = 0.2, ld_grid = 0.05;
    bool ld_das = false, ld_3d = false;
    auto* ldoor = app.add_subcommand("localize-doorway", "doorway pipeline: TOA fit + beamforming heatmap");
    ldoor->add_option("--input", ld_input, "multichannel WAV (sidecar .meta auto-detected)")->required();
    ldoor->add_option("--scene", ld_scene, "scene preset or config path (overrides sidecar)");
    ldoor->add_option("--out", ld_out, "output directory");
    add_pipeline_flags(ldoor, ld_band, ld_window, ld_gate, ld_grid);
    ldoor->add_flag("--delay-and-sum", ld_das, "use the plain delay-and-sum metric");
    ldoor->add_flag("--full-3d", ld_3d, "sweep z as a grid instead of pinning the fitted height");

    std::string le_input, le_scene, le_out = default_out_dir(), le_band;
    double le_window = 0.7, le_gate = 0.2;
    auto* ledge = app.add_subcommand("localize-edge", "single-edge pipeline: wavefront fit + spectral-ratio azimuth");
    ledge->add_option("--input", le_input, "multichannel WAV (sidecar .meta auto-detected)")->required();
    ledge->add_option("--scene", le_scene, "scene preset or config path (overrides sidecar)");
    ledge->add_option("--out", le_out, "output directory");
    {
        double unused_grid = 0.05;
        add_pipeline_flags(ledge, le_band, le_window, le_gate, unused_grid);
    }

    // curves
    auto* curves = app.add_subcommand("curves", "emit theoretical loss/ratio curves as CSV");
    std::vector<double> cv_thetas;
    double cv_delta = 25.0, cv_d1 = 3.2, cv_d2 = 0.8, cv_c = 343.0;
    std::string cv_freq, cv_out = default_out_dir();
    curves->add_option("--theta", cv_thetas, "azimuth list in degrees")->delimiter(',');
    curves->add_option("--delta-theta", cv_delta, "array separation in degrees (0 disables ratios)");
    curves->add_option("--d1", cv_d1, "source-to-edge distance, m");
    curves->add_option("--d2", cv_d2, "receiver-to-edge distance, m");
    curves->add_option("--freq", cv_freq, "frequency grid lo:hi:step in Hz (default 500:9000:50)");
    curves->add_option("--c", cv_c, "speed of sound, m/s");
    curves->add_option("--out", cv_out, "output directory");

    try {
        std::reverse(args.begin(), args.end()); // CLI11 vector parse wants reversed args
        app.parse(args);

        if (*synth)
            return cmd_synth(sy_scene, sy_out, sy_seed, sy_snr, sy_duration, sy_rev_density,
                             sy_rev_decay, sy_format);

        localize::PipelineConfig cfg;
        if (*ldoor) {
            if (!ld_band.empty()) parse_band(ld_band, cfg);
            cfg.window_s = ld_window * 1e-3;
            cfg.gate_s = ld_gate * 1e-3;
            cfg.grid.step_m = ld_grid;
            cfg.use_delay_and_sum = ld_das;
            cfg.full_3d = ld_3d;
            return cmd_localize_doorway(ld_input, ld_scene, ld_out, cfg);
        }
        if (*ledge) {
            if (!le_band.empty()) parse_band(le_band, cfg);
            cfg.window_s = le_window * 1e-3;
            cfg.gate_s = le_gate * 1e-3;
            return cmd_localize_edge(le_input, le_scene, le_out, cfg);
        }
        if (*curves) return cmd_curves(cv_thetas, cv_delta, cv_d1, cv_d2, cv_freq, cv_c, cv_out);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const RejectionError& e) {
        std::fprintf(stderr, "rejected: %s\n", e.what());
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

} // namespace edgeloc::cli
