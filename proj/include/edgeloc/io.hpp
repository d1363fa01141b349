#pragma once

// File formats: multichannel WAV (float32 or 16-bit PCM), the key-value
// scene-config / sidecar-metadata text format, and CSV/PGM exports of the
// analysis products.

#include "edgeloc/arrivals.hpp"
#include "edgeloc/dsp.hpp"
#include "edgeloc/forward.hpp"
#include "edgeloc/kedge.hpp"
#include "edgeloc/localize.hpp"
#include "edgeloc/scene.hpp"
#include "edgeloc/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace edgeloc::io {

enum class WavFormat { float32, pcm16 };

void write_wav(const std::string& path, const TraceSet& traces, WavFormat fmt = WavFormat::float32);
TraceSet read_wav(const std::string& path); // channel_geometry left empty

// Everything a run needs: scene + physics + optional ground truth +
// synthesis parameters. Exactly one of doorway/edge is set.
struct SceneSpec {
    std::optional<scene::DoorwayScene> doorway;
    std::optional<scene::EdgeScene> edge;
    scene::PhysicsConfig physics;
    std::optional<scene::SourceGroundTruth> source;
    forward::EmissionSpec emission;
    forward::NoiseSpec noise;
    double duration_s = 0.1;
    double reflection_coeff = 1.0;

    bool is_doorway() const { return doorway.has_value(); }
};

// Accepts the preset names "doorway" and "edge", or a path to a config
// file (format documented in the README).
SceneSpec load_scene(const std::string& path_or_preset);
SceneSpec parse_scene_text(const std::string& text, const std::string& origin = "<string>");
std::string scene_to_text(const SceneSpec& spec);

// Sidecar metadata written next to synthesized WAV files: the scene spec
// plus per-channel geometry and trace parameters.
void write_sidecar(const std::string& path, const SceneSpec& spec, const TraceSet& traces);
struct Sidecar {
    SceneSpec spec;
    std::vector<scene::Point3> channel_geometry;
    double fs_hz = 0.0;
    double t_start_s = 0.0;
};
Sidecar read_sidecar(const std::string& path);

// CSV / PGM exports
void write_heatmap_csv(const std::string& path, const localize::Heatmap& hm);
void write_heatmap_pgm(const std::string& path, const localize::Heatmap& hm);
void write_envelope_csv(const std::string& path, const dsp::EnvelopeImage& env);
void write_result_csv(const std::string& path, const localize::LocalizationResult& res);
void write_arrivals_csv(const std::string& path, const arrivals::ArrivalSet& arr);
void write_loss_curve_csv(const std::string& path, const kedge::LossCurve& curve);
void write_ratio_curve_csv(const std::string& path, const kedge::RatioCurve& curve);
void write_objective_csv(const std::string& path, const std::vector<double>& thetas_deg,
                         const std::vector<double>& objective);

} // namespace edgeloc::io
