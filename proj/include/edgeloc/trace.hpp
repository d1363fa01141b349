#pragma once

#include "edgeloc/errors.hpp"
#include "edgeloc/scene.hpp"

#include <vector>

namespace edgeloc {

// Multichannel sampled pressure recording with per-channel geometry.
struct TraceSet {
    std::vector<std::vector<double>> samples; // [channel][sample]
    double fs_hz = 0.0;
    std::vector<scene::Point3> channel_geometry;
    double t_start_s = 0.0;

    int channels() const { return static_cast<int>(samples.size()); }
    std::size_t length() const { return samples.empty() ? 0 : samples[0].size(); }
    double duration_s() const { return fs_hz > 0 ? length() / fs_hz : 0.0; }

    // Subset of channels, preserving order.
    TraceSet select(const std::vector<int>& channel_idx) const {
        TraceSet out;
        out.fs_hz = fs_hz;
        out.t_start_s = t_start_s;
        for (int i : channel_idx) {
            if (i < 0 || i >= channels()) throw ConfigError("TraceSet::select: channel out of range");
            out.samples.push_back(samples[i]);
            out.channel_geometry.push_back(channel_geometry[i]);
        }
        return out;
    }
};

} // namespace edgeloc
