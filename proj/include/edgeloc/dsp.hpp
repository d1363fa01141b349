#pragma once

// Signal conditioning: zero-phase bandpass, analytic-signal envelope,
// tapered window extraction, and power spectra.

#include "edgeloc/trace.hpp"

#include <vector>

namespace edgeloc::dsp {

// The A(z, t) image: one nonnegative envelope row per microphone height,
// rows sorted by height.
struct EnvelopeImage {
    std::vector<std::vector<double>> values; // [row][sample]
    double fs_hz = 0.0;
    std::vector<double> heights_m;           // ascending
    double t_start_s = 0.0;

    int rows() const { return static_cast<int>(values.size()); }
    std::size_t length() const { return values.empty() ? 0 : values[0].size(); }
};

struct PowerSpectrum {
    std::vector<double> freqs_hz;  // uniform ascending grid, DC..fs/2
    std::vector<double> power;     // one-sided; sums to the segment energy
    double window_center_s = 0.0;
    double window_len_s = 0.0;
};

struct Segment {
    std::vector<double> samples;
    double fs_hz = 0.0;
    double center_s = 0.0;
    double width_s = 0.0;
    bool clipped = false;          // window ran past the trace bounds
};

// Zero-phase bandpass: a Kaiser windowed-sinc kernel applied forward and
// backward, so arrival times carry no group-delay bias. Stopbands at lo/2
// and 2*hi are down >= 40 dB (double-pass ~100 dB); the band
// [1.2*lo, 0.8*hi] is flat within +/-1 dB.
std::vector<double> bandpass(const std::vector<double>& x, double fs_hz, double lo_hz, double hi_hz);

// Magnitude of the analytic signal (positive spectrum doubled, negative
// zeroed). Output length equals input length.
std::vector<double> envelope(const std::vector<double>& x);

// round(width*fs) samples centered on `center`, raised-cosine tapered over
// 10% of each end. Windows overflowing the trace are clipped and flagged.
Segment window_extract(const std::vector<double>& x, double fs_hz, double t_start_s,
                       double center_s, double width_s);

// Squared-magnitude DFT on a uniform grid, zero-padded so the grid step is
// <= max_grid_step_hz. Normalized so the one-sided sum equals the segment
// energy (Parseval).
PowerSpectrum power_spectrum(const Segment& seg, double max_grid_step_hz = 100.0);

PowerSpectrum average_spectra(const std::vector<PowerSpectrum>& spectra);

// Bandpass + envelope per channel, rows sorted by microphone height.
EnvelopeImage envelope_image(const TraceSet& traces, double lo_hz, double hi_hz);

} // namespace edgeloc::dsp
