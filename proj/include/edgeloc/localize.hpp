#pragma once

// The two inverse pipelines: doorway 3D localization through the gated,
// range-weighted beamforming heatmap, and single-edge localization through
// wavefront fitting plus spectral-ratio azimuth matching.

#include "edgeloc/arrivals.hpp"
#include "edgeloc/dsp.hpp"
#include "edgeloc/kedge.hpp"
#include "edgeloc/scene.hpp"
#include "edgeloc/trace.hpp"

#include <optional>
#include <vector>

namespace edgeloc::localize {

struct GridSpec {
    double x_min_m = 0.05;
    double x_max_m = 6.0;
    double y_min_m = 0.0;
    double y_max_m = 6.0;
    double step_m = 0.05;
    // Optional z layer sweep (full-3D mode); by default z is pinned to the
    // fitted source height.
    std::optional<std::pair<double, double>> z_range_m;

    int nx() const;
    int ny() const;
    int nz() const;
};

struct Heatmap {
    std::vector<double> values;   // (z, y, x) row-major, nonnegative
    GridSpec grid;
    scene::Point3 argmax;
    double argmax_value = 0.0;

    double at(int ix, int iy, int iz = 0) const;
};

struct LocalizationResult {
    double r1_m = 0.0;
    double theta_deg = 0.0;
    double z0_m = 0.0;
    double fit_rmse_s = 0.0;
    double peak_metric = 0.0;
    // azimuth objective (edge pipeline only)
    std::vector<double> objective_theta_deg;
    std::vector<double> objective;
};

struct AzimuthSearch {
    double theta_min_deg = 1.0;
    double theta_max_deg = 40.0;
    double step_deg = 0.5;
    double band_lo_hz = 2000.0;
    double band_hi_hz = 9000.0;
    double d1_m = 3.0; // source-to-edge distance used for theory curves
};

struct PipelineConfig {
    double band_lo_hz = 500.0;
    double band_hi_hz = 9000.0;
    double gate_s = 0.2e-3;
    double window_s = 0.7e-3;
    double min_peak_snr = 3.0;       // screening: peak envelope vs background
    double z0_agreement_m = 0.2;     // max mismatch between the two edge fits
    bool use_delay_and_sum = false;  // comparison metric instead of the product form
    bool full_3d = false;
    arrivals::DetectConfig detect;
    arrivals::FitConfig fit;
    GridSpec grid;
    AzimuthSearch azimuth;
    double reflection_coeff = 1.0;   // carried for synthesis round trips
};

// Mean envelope amplitude inside [toa - gate/2, toa + gate/2] per channel
// (linear interpolation at the gate ends), averaged over channels.
double gate_amplitude(const dsp::EnvelopeImage& env, const std::vector<double>& toa_per_channel_s,
                      double gate_s);

// Beamforming metric over the hidden-region grid:
//   M = A_d / (R_d)^2 * A_r / (R_r)^2
// with the gated amplitudes A taken around the Eq.-1 TOAs predicted from
// the fitted (z0, t0).
Heatmap doorway_heatmap(const dsp::EnvelopeImage& env, const scene::DoorwayScene& sc,
                        const arrivals::WavefrontFit& fit, const GridSpec& grid,
                        const scene::PhysicsConfig& physics, double gate_s = 0.2e-3,
                        bool use_delay_and_sum = false);

LocalizationResult localize_doorway(const TraceSet& traces, const scene::DoorwayScene& sc,
                                    const scene::PhysicsConfig& physics,
                                    const PipelineConfig& cfg = {});

struct AzimuthEstimate {
    double theta_deg = 0.0;
    std::vector<double> thetas_deg;
    std::vector<double> objective; // frequency-weighted mean squared dB error
};

// Matches the measured ratio against theoretical curves over the fit band,
// weighting errors linearly with frequency. Throws RejectionError(Ambiguity)
// when the objective is flat.
AzimuthEstimate estimate_azimuth(const kedge::RatioCurve& measured, const scene::EdgeScene& sc,
                                 const scene::PhysicsConfig& physics, const AzimuthSearch& search);

LocalizationResult localize_edge(const TraceSet& traces, const scene::EdgeScene& sc,
                                 const scene::PhysicsConfig& physics,
                                 const PipelineConfig& cfg = {});

} // namespace edgeloc::localize
