#pragma once

// Analytic forward model: synthesizes microphone traces for a hidden
// impulsive source. Each propagation path contributes the emission
// waveform delayed to its spherical-wavefront TOA, scaled by 1/distance,
// and (for diffracted paths) spectrally shaped by the knife-edge loss
// magnitude |L(nu(theta, f))|. Optional reverberation tail and white
// noise are generated from per-channel deterministic streams.

#include "edgeloc/scene.hpp"
#include "edgeloc/trace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace edgeloc::forward {

enum class EmissionKind { pulse_cycle, impulse, file };

struct EmissionSpec {
    EmissionKind kind = EmissionKind::pulse_cycle;
    double center_freq_hz = 5000.0; // pulse_cycle
    double duty = 0.4;              // fraction of one period
    double amplitude = 1.0;
    std::vector<double> file_samples; // kind == file
    double file_fs_hz = 0.0;
};

struct NoiseSpec {
    std::optional<double> snr_db;    // white noise level vs peak diffracted arrival; empty = off
    double reverb_density_per_s = 0.0;
    double reverb_decay_s = 0.02;
    std::uint64_t seed = 0;
};

// One sinusoid segment spanning `duty` of a period at center_freq (samples
// taken at mid-sample instants), a single-sample impulse, or a caller
// waveform. Throws when fs cannot represent the spec.
std::vector<double> emission_waveform(const EmissionSpec& spec, double fs_hz);

TraceSet synthesize_doorway(const scene::DoorwayScene& sc, const scene::SourceGroundTruth& src,
                            const EmissionSpec& emission, const NoiseSpec& noise,
                            const scene::PhysicsConfig& physics, double duration_s,
                            double reflection_coeff = 1.0);

TraceSet synthesize_edge(const scene::EdgeScene& sc, const scene::SourceGroundTruth& src,
                         const EmissionSpec& emission, const NoiseSpec& noise,
                         const scene::PhysicsConfig& physics, double duration_s);

// Smallest duration accepted for the given scene/source (all arrivals plus
// the emission tail fit inside the trace).
double min_duration_s(const scene::DoorwayScene& sc, const scene::SourceGroundTruth& src,
                      const EmissionSpec& emission, const scene::PhysicsConfig& physics);
double min_duration_s(const scene::EdgeScene& sc, const scene::SourceGroundTruth& src,
                      const EmissionSpec& emission, const scene::PhysicsConfig& physics);

} // namespace edgeloc::forward
