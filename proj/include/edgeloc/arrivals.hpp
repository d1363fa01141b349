#pragma once

// First-arrival detection per channel and nonlinear fitting of the
// spherical wavefront TOA(z) = t0 + sqrt((z - z0)^2 + r0^2) / c.

#include "edgeloc/dsp.hpp"

#include <array>
#include <vector>

namespace edgeloc::arrivals {

struct ArrivalSet {
    std::vector<double> toa_s;       // valid only where detected
    std::vector<bool> detected;
    std::vector<double> confidence;  // in [0, 1]
    std::vector<double> heights_m;

    int n_detected() const;
};

struct WavefrontFit {
    double r0_m = 0.0;
    double z0_m = 0.0;
    double t0_s = 0.0;
    double rmse_s = 0.0;
    int n_used = 0;
    // Gauss-Newton parameter variances (r0, z0, t0), rmse-scaled; used for
    // inverse-variance combination of independent fits.
    std::array<double, 3> variance{0.0, 0.0, 0.0};
};

double toa_model(double z_m, double r0_m, double z0_m, double t0_s, double c_mps);

struct DetectConfig {
    double noise_window_s = 0.003;  // leading segment used as background
    double threshold_factor = 5.0;  // peak must exceed factor * mean background
    double floor_frac = 0.05;       // and this fraction of the channel peak
    double peak_halfwidth_s = 0.25e-3; // a peak must dominate this neighborhood
};

// Per channel: first local envelope maximum exceeding the detection
// threshold, with sub-sample parabolic refinement. Channels with no
// qualifying peak are flagged undetected, never zero-filled.
ArrivalSet detect_first_arrival(const dsp::EnvelopeImage& env, const DetectConfig& cfg = {});

struct FitConfig {
    double rmse_reject_s = 1e-4;    // reject fits worse than 0.1 ms
    int max_iter = 200;
    double r0_grid_min_m = 0.5;     // coarse log-spaced initialization scan
    double r0_grid_max_m = 20.0;
    int r0_grid_points = 40;
    double r0_degenerate_m = 200.0; // beyond any scene: flat-wavefront guard
};

// Damped Gauss-Newton least squares on the detected channels. Throws
// RejectionError(FitRmse) when the residual exceeds the rejection
// threshold, RejectionError(Degenerate) for flat or non-converging
// geometry, ConfigError when fewer than 3 channels spanning 2 distinct
// heights are available.
WavefrontFit fit_wavefront(const ArrivalSet& arrivals, double c_mps, const FitConfig& cfg = {});

} // namespace edgeloc::arrivals
