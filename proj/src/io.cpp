#include "edgeloc/io.hpp"

#include "edgeloc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

namespace edgeloc::io {

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) throw ConfigError("cannot open for writing: " + path);
    return f;
}

// ---------------------------------------------------------------- WAV ----

template <typename T>
void put_le(std::string& buf, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

struct WavHeaderInfo {
    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t bits = 0;
    std::size_t data_offset = 0;
    std::size_t data_size = 0;
};

} // namespace

void write_wav(const std::string& path, const TraceSet& traces, WavFormat fmt) {
    if (traces.channels() == 0 || traces.length() == 0) throw ConfigError("write_wav: empty trace set");
    const std::uint16_t channels = static_cast<std::uint16_t>(traces.channels());
    const std::uint32_t fs = static_cast<std::uint32_t>(std::llround(traces.fs_hz));
    const std::size_t frames = traces.length();
    const std::uint16_t bits = fmt == WavFormat::float32 ? 32 : 16;
    const std::uint16_t block = channels * bits / 8;
    const std::size_t data_size = frames * block;

    std::string buf;
    buf.reserve(44 + data_size);
    buf += "RIFF";
    put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(36 + data_size));
    buf += "WAVEfmt ";
    put_le<std::uint32_t>(buf, 16);
    put_le<std::uint16_t>(buf, fmt == WavFormat::float32 ? 3 : 1);
    put_le<std::uint16_t>(buf, channels);
    put_le<std::uint32_t>(buf, fs);
    put_le<std::uint32_t>(buf, fs * block);
    put_le<std::uint16_t>(buf, block);
    put_le<std::uint16_t>(buf, bits);
    buf += "data";
    put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(data_size));

    for (std::size_t i = 0; i < frames; ++i) {
        for (int ch = 0; ch < channels; ++ch) {
            const double v = traces.samples[ch][i];
            if (fmt == WavFormat::float32) {
                const float fv = static_cast<float>(v);
                std::uint32_t u;
                std::memcpy(&u, &fv, 4);
                put_le<std::uint32_t>(buf, u);
            } else {
                const double clamped = std::clamp(v, -1.0, 1.0);
                put_le<std::uint16_t>(buf, static_cast<std::uint16_t>(
                    static_cast<std::int16_t>(std::lround(clamped * 32767.0))));
            }
        }
    }
    auto f = open_out(path, true);
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

TraceSet read_wav(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open WAV: " + path);
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (bytes.size() < 44 || bytes.compare(0, 4, "RIFF") != 0 || bytes.compare(8, 4, "WAVE") != 0)
        throw ConfigError("not a RIFF/WAVE file: " + path);

    auto rd16 = [&](std::size_t off) {
        return static_cast<std::uint16_t>(static_cast<unsigned char>(bytes[off]) |
                                          (static_cast<unsigned char>(bytes[off + 1]) << 8));
    };
    auto rd32 = [&](std::size_t off) {
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(bytes[off + i]);
        return v;
    };

    WavHeaderInfo hdr;
    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::string id = bytes.substr(pos, 4);
        const std::uint32_t sz = rd32(pos + 4);
        if (id == "fmt ") {
            hdr.format = rd16(pos + 8);
            hdr.channels = rd16(pos + 10);
            hdr.sample_rate = rd32(pos + 12);
            hdr.bits = rd16(pos + 22);
        } else if (id == "data") {
            hdr.data_offset = pos + 8;
            hdr.data_size = std::min<std::size_t>(sz, bytes.size() - hdr.data_offset);
            break;
        }
        pos += 8 + sz + (sz & 1);
    }
    if (hdr.channels == 0 || hdr.data_offset == 0) throw ConfigError("malformed WAV: " + path);
    const bool is_float = hdr.format == 3 && hdr.bits == 32;
    const bool is_pcm16 = hdr.format == 1 && hdr.bits == 16;
    if (!is_float && !is_pcm16)
        throw ConfigError("unsupported WAV encoding (need float32 or 16-bit PCM): " + path);

    const std::size_t bytes_per = hdr.bits / 8;
    const std::size_t frames = hdr.data_size / (bytes_per * hdr.channels);
    TraceSet out;
    out.fs_hz = hdr.sample_rate;
    out.samples.assign(hdr.channels, std::vector<double>(frames, 0.0));
    std::size_t off = hdr.data_offset;
    for (std::size_t i = 0; i < frames; ++i) {
        for (int ch = 0; ch < hdr.channels; ++ch) {
            if (is_float) {
                const std::uint32_t u = rd32(off);
                float fv;
                std::memcpy(&fv, &u, 4);
                out.samples[ch][i] = fv;
            } else {
                out.samples[ch][i] = static_cast<std::int16_t>(rd16(off)) / 32767.0;
            }
            off += bytes_per;
        }
    }
    return out;
}

// ---------------------------------------------------- key-value format ----

namespace {

struct KvDoc {
    // insertion-ordered sections of key -> value
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> sections;

    std::vector<std::pair<std::string, std::string>>& section(const std::string& name) {
        for (auto& s : sections)
            if (s.first == name) return s.second;
        sections.push_back({name, {}});
        return sections.back().second;
    }

    bool has(const std::string& name) const {
        for (auto& s : sections)
            if (s.first == name) return true;
        return false;
    }

    const std::vector<std::pair<std::string, std::string>>* find(const std::string& name) const {
        for (auto& s : sections)
            if (s.first == name) return &s.second;
        return nullptr;
    }

    void set(const std::string& sec, const std::string& key, const std::string& value) {
        section(sec).push_back({key, value});
    }
    void set_num(const std::string& sec, const std::string& key, double v) { set(sec, key, fmt_g(v)); }

    std::optional<std::string> get(const std::string& sec, const std::string& key) const {
        const auto* s = find(sec);
        if (!s) return std::nullopt;
        for (const auto& kv : *s)
            if (kv.first == key) return kv.second;
        return std::nullopt;
    }

    double num(const std::string& sec, const std::string& key) const {
        auto v = get(sec, key);
        if (!v) throw ConfigError("missing key '" + key + "' in section [" + sec + "]");
        try {
            std::size_t used = 0;
            const double d = std::stod(*v, &used);
            while (used < v->size() && std::isspace(static_cast<unsigned char>((*v)[used]))) ++used;
            if (used != v->size()) throw std::invalid_argument("trailing characters");
            return d;
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "' in section [" + sec + "] is not a number: " + *v);
        }
    }

    double num_or(const std::string& sec, const std::string& key, double dflt) const {
        return get(sec, key) ? num(sec, key) : dflt;
    }

    std::string str_or(const std::string& sec, const std::string& key, const std::string& dflt) const {
        auto v = get(sec, key);
        return v ? *v : dflt;
    }
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

KvDoc parse_kv(const std::string& text, const std::string& origin) {
    KvDoc doc;
    std::istringstream in(text);
    std::string line, cur;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": malformed section header");
            cur = trim(line.substr(1, line.size() - 2));
            doc.section(cur);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || cur.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value' inside a section");
        doc.set(cur, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return doc;
}

std::string kv_to_text(const KvDoc& doc) {
    std::string out;
    for (const auto& s : doc.sections) {
        out += "[" + s.first + "]\n";
        for (const auto& kv : s.second) out += kv.first + " = " + kv.second + "\n";
        out += "\n";
    }
    return out;
}

scene::MicArray parse_array(const KvDoc& doc, const std::string& sec) {
    scene::MicArray a;
    a.count = static_cast<int>(doc.num(sec, "count"));
    a.pitch_m = doc.num(sec, "pitch");
    a.base.z = doc.num(sec, "base_z");
    a.id = sec.size() > 6 ? sec.substr(6) : sec; // strip "array."
    return a;
}

forward::EmissionSpec parse_emission(const KvDoc& doc) {
    forward::EmissionSpec e;
    if (!doc.has("emission")) return e;
    const std::string kind = doc.str_or("emission", "kind", "pulse_cycle");
    if (kind == "pulse_cycle") e.kind = forward::EmissionKind::pulse_cycle;
    else if (kind == "impulse") e.kind = forward::EmissionKind::impulse;
    else if (kind == "file") e.kind = forward::EmissionKind::file;
    else throw ConfigError("emission.kind must be pulse_cycle, impulse, or file");
    e.center_freq_hz = doc.num_or("emission", "center_freq", e.center_freq_hz);
    e.duty = doc.num_or("emission", "duty", e.duty);
    e.amplitude = doc.num_or("emission", "amplitude", e.amplitude);
    if (e.kind == forward::EmissionKind::file) {
        const std::string path = doc.str_or("emission", "path", "");
        if (path.empty()) throw ConfigError("emission.kind=file requires emission.path");
        TraceSet w = read_wav(path);
        e.file_samples = w.samples.at(0);
        e.file_fs_hz = w.fs_hz;
    }
    return e;
}

forward::NoiseSpec parse_noise(const KvDoc& doc) {
    forward::NoiseSpec n;
    if (!doc.has("noise")) return n;
    if (doc.get("noise", "snr_db")) n.snr_db = doc.num("noise", "snr_db");
    n.reverb_density_per_s = doc.num_or("noise", "reverb_density", n.reverb_density_per_s);
    n.reverb_decay_s = doc.num_or("noise", "reverb_decay", n.reverb_decay_s);
    n.seed = static_cast<std::uint64_t>(doc.num_or("noise", "seed", 0));
    return n;
}

} // namespace

SceneSpec parse_scene_text(const std::string& text, const std::string& origin) {
    const KvDoc doc = parse_kv(text, origin);
    SceneSpec spec;
    spec.physics.c_mps = doc.num_or("physics", "c", 343.0);
    spec.physics.fs_hz = doc.num_or("physics", "fs", 48000.0);

    if (doc.has("doorway") == doc.has("edge"))
        throw ConfigError(origin + ": exactly one of [doorway] or [edge] is required");

    if (doc.has("doorway")) {
        scene::DoorwayScene s;
        s.r2_d_m = doc.num("doorway", "r2_d");
        s.door_width_m = doc.num("doorway", "door_width");
        s.r2_r_m = doc.num_or("doorway", "r2_r",
                              std::sqrt(s.r2_d_m * s.r2_d_m + s.door_width_m * s.door_width_m));
        s.edge_d = {0.0, 0.0, 0.0};
        s.edge_r = {0.0, -s.door_width_m, 0.0};
        if (!doc.has("array.main")) throw ConfigError(origin + ": doorway scene requires [array.main]");
        s.array = parse_array(doc, "array.main");
        s.array.base.x = -s.r2_d_m;
        s.array.base.y = 0.0;
        spec.doorway = s;
    } else {
        scene::EdgeScene s;
        s.edge = {0.0, 0.0, 0.0};
        s.delta_theta_deg = doc.num("edge", "delta_theta");
        if (!doc.has("array.a") || !doc.has("array.b"))
            throw ConfigError(origin + ": edge scene requires [array.a] and [array.b]");
        s.arrays[0] = parse_array(doc, "array.a");
        s.arrays[1] = parse_array(doc, "array.b");
        s.r2_m[0] = doc.num("array.a", "r2");
        s.r2_m[1] = doc.num("array.b", "r2");
        const double rad = s.delta_theta_deg * std::numbers::pi / 180.0;
        s.arrays[0].base.x = -s.r2_m[0];
        s.arrays[0].base.y = 0.0;
        s.arrays[1].base.x = -s.r2_m[1] * std::cos(rad);
        s.arrays[1].base.y = s.r2_m[1] * std::sin(rad);
        spec.edge = s;
    }

    if (doc.has("source")) {
        scene::SourceGroundTruth gt;
        gt.r1_m = doc.num("source", "r1");
        gt.theta_deg = doc.num("source", "theta");
        gt.z0_m = doc.num("source", "z0");
        gt.t0_s = doc.num_or("source", "t0", 0.0);
        spec.source = gt;
    }
    spec.emission = parse_emission(doc);
    spec.noise = parse_noise(doc);
    spec.duration_s = doc.num_or("synth", "duration", spec.duration_s);
    spec.reflection_coeff = doc.num_or("synth", "reflection_coeff", spec.reflection_coeff);
    return spec;
}

namespace {

KvDoc scene_to_kv(const SceneSpec& spec) {
    KvDoc doc;
    doc.set_num("physics", "c", spec.physics.c_mps);
    doc.set_num("physics", "fs", spec.physics.fs_hz);
    if (spec.doorway) {
        const auto& s = *spec.doorway;
        doc.set_num("doorway", "r2_d", s.r2_d_m);
        doc.set_num("doorway", "r2_r", s.r2_r_m);
        doc.set_num("doorway", "door_width", s.door_width_m);
        doc.set_num("array.main", "count", s.array.count);
        doc.set_num("array.main", "pitch", s.array.pitch_m);
        doc.set_num("array.main", "base_z", s.array.base.z);
    } else if (spec.edge) {
        const auto& s = *spec.edge;
        doc.set_num("edge", "delta_theta", s.delta_theta_deg);
        const char* names[2] = {"array.a", "array.b"};
        for (int k = 0; k < 2; ++k) {
            doc.set_num(names[k], "count", s.arrays[k].count);
            doc.set_num(names[k], "pitch", s.arrays[k].pitch_m);
            doc.set_num(names[k], "base_z", s.arrays[k].base.z);
            doc.set_num(names[k], "r2", s.r2_m[k]);
        }
    }
    if (spec.source) {
        doc.set_num("source", "r1", spec.source->r1_m);
        doc.set_num("source", "theta", spec.source->theta_deg);
        doc.set_num("source", "z0", spec.source->z0_m);
        doc.set_num("source", "t0", spec.source->t0_s);
    }
    const char* kind = spec.emission.kind == forward::EmissionKind::pulse_cycle ? "pulse_cycle"
                     : spec.emission.kind == forward::EmissionKind::impulse     ? "impulse"
                                                                               : "file";
    doc.set("emission", "kind", kind);
    doc.set_num("emission", "center_freq", spec.emission.center_freq_hz);
    doc.set_num("emission", "duty", spec.emission.duty);
    doc.set_num("emission", "amplitude", spec.emission.amplitude);
    if (spec.noise.snr_db) doc.set_num("noise", "snr_db", *spec.noise.snr_db);
    doc.set_num("noise", "reverb_density", spec.noise.reverb_density_per_s);
    doc.set_num("noise", "reverb_decay", spec.noise.reverb_decay_s);
    doc.set_num("noise", "seed", static_cast<double>(spec.noise.seed));
    doc.set_num("synth", "duration", spec.duration_s);
    doc.set_num("synth", "reflection_coeff", spec.reflection_coeff);
    return doc;
}

} // namespace

std::string scene_to_text(const SceneSpec& spec) { return kv_to_text(scene_to_kv(spec)); }

SceneSpec load_scene(const std::string& path_or_preset) {
    if (path_or_preset == "doorway") {
        SceneSpec spec;
        spec.doorway = scene::doorway_preset();
        return spec;
    }
    if (path_or_preset == "edge") {
        SceneSpec spec;
        spec.edge = scene::edge_preset();
        return spec;
    }
    std::ifstream f(path_or_preset);
    if (!f) throw ConfigError("scene '" + path_or_preset + "' is neither a preset (doorway|edge) nor a readable file");
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_scene_text(text, path_or_preset);
}

void write_sidecar(const std::string& path, const SceneSpec& spec, const TraceSet& traces) {
    KvDoc doc = scene_to_kv(spec);
    doc.set_num("traces", "fs", traces.fs_hz);
    doc.set_num("traces", "channels", traces.channels());
    doc.set_num("traces", "t_start", traces.t_start_s);
    doc.set_num("traces", "duration", traces.duration_s());
    for (int ch = 0; ch < traces.channels(); ++ch) {
        const auto& p = traces.channel_geometry[ch];
        doc.set("geometry", "chan" + std::to_string(ch),
                fmt_g(p.x) + " " + fmt_g(p.y) + " " + fmt_g(p.z));
    }
    auto f = open_out(path);
    f << kv_to_text(doc);
}

Sidecar read_sidecar(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open sidecar: " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    const KvDoc doc = parse_kv(text, path);

    Sidecar sc;
    sc.spec = parse_scene_text(text, path);
    sc.fs_hz = doc.num("traces", "fs");
    sc.t_start_s = doc.num_or("traces", "t_start", 0.0);
    const int channels = static_cast<int>(doc.num("traces", "channels"));
    for (int ch = 0; ch < channels; ++ch) {
        const auto v = doc.get("geometry", "chan" + std::to_string(ch));
        if (!v) throw ConfigError(path + ": missing geometry for channel " + std::to_string(ch));
        std::istringstream ss(*v);
        scene::Point3 p;
        if (!(ss >> p.x >> p.y >> p.z))
            throw ConfigError(path + ": malformed geometry for channel " + std::to_string(ch));
        sc.channel_geometry.push_back(p);
    }
    return sc;
}

// ------------------------------------------------------------- exports ----

void write_heatmap_csv(const std::string& path, const localize::Heatmap& hm) {
    auto f = open_out(path);
    const int nx = hm.grid.nx(), ny = hm.grid.ny();
    f << "# heatmap nx=" << nx << " ny=" << ny
      << " x_min=" << fmt_g(hm.grid.x_min_m) << " y_min=" << fmt_g(hm.grid.y_min_m)
      << " step=" << fmt_g(hm.grid.step_m) << " z=" << fmt_g(hm.argmax.z)
      << " argmax_x=" << fmt_g(hm.argmax.x) << " argmax_y=" << fmt_g(hm.argmax.y) << "\n";
    // argmax z-layer, one row per y
    int iz = 0;
    if (hm.grid.z_range_m && hm.grid.nz() > 1)
        iz = static_cast<int>(std::lround((hm.argmax.z - hm.grid.z_range_m->first) / hm.grid.step_m));
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            if (ix) f << ",";
            f << fmt_g(hm.at(ix, iy, iz));
        }
        f << "\n";
    }
}

void write_heatmap_pgm(const std::string& path, const localize::Heatmap& hm) {
    auto f = open_out(path, true);
    const int nx = hm.grid.nx(), ny = hm.grid.ny();
    int iz = 0;
    if (hm.grid.z_range_m && hm.grid.nz() > 1)
        iz = static_cast<int>(std::lround((hm.argmax.z - hm.grid.z_range_m->first) / hm.grid.step_m));
    double lo = hm.at(0, 0, iz), hi = lo;
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            const double v = hm.at(ix, iy, iz);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
    f << "P5\n# x_min=" << fmt_g(hm.grid.x_min_m) << " y_min=" << fmt_g(hm.grid.y_min_m)
      << " step=" << fmt_g(hm.grid.step_m) << "\n" << nx << " " << ny << "\n255\n";
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            const unsigned char b = static_cast<unsigned char>(
                std::lround((hm.at(ix, iy, iz) - lo) * scale));
            f.put(static_cast<char>(b));
        }
}

void write_envelope_csv(const std::string& path, const dsp::EnvelopeImage& env) {
    auto f = open_out(path);
    f << "# envelope fs=" << fmt_g(env.fs_hz) << " t_start=" << fmt_g(env.t_start_s) << " heights_m=";
    for (std::size_t i = 0; i < env.heights_m.size(); ++i)
        f << (i ? ";" : "") << fmt_g(env.heights_m[i]);
    f << "\n";
    for (const auto& row : env.values) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) f << ",";
            f << fmt_g(row[i]);
        }
        f << "\n";
    }
}

void write_result_csv(const std::string& path, const localize::LocalizationResult& res) {
    auto f = open_out(path);
    f << "r1_m,theta_deg,z0_m,rmse_s,peak_metric\n"
      << fmt_g(res.r1_m) << "," << fmt_g(res.theta_deg) << "," << fmt_g(res.z0_m) << ","
      << fmt_g(res.fit_rmse_s) << "," << fmt_g(res.peak_metric) << "\n";
}

void write_arrivals_csv(const std::string& path, const arrivals::ArrivalSet& arr) {
    auto f = open_out(path);
    f << "channel,height_m,detected,toa_s,confidence\n";
    for (std::size_t ch = 0; ch < arr.toa_s.size(); ++ch) {
        f << ch << "," << fmt_g(arr.heights_m[ch]) << "," << (arr.detected[ch] ? 1 : 0) << ","
          << (arr.detected[ch] ? fmt_g(arr.toa_s[ch]) : "") << "," << fmt_g(arr.confidence[ch]) << "\n";
    }
}

void write_loss_curve_csv(const std::string& path, const kedge::LossCurve& curve) {
    auto f = open_out(path);
    f << "# loss_curve theta_deg=" << fmt_g(curve.theta_deg) << " d1_m=" << fmt_g(curve.d1_m)
      << " d2_m=" << fmt_g(curve.d2_m) << "\nfreq_hz,loss_mag\n";
    for (std::size_t i = 0; i < curve.freqs_hz.size(); ++i)
        f << fmt_g(curve.freqs_hz[i]) << "," << fmt_g(std::abs(curve.loss[i])) << "\n";
}

void write_ratio_curve_csv(const std::string& path, const kedge::RatioCurve& curve) {
    auto f = open_out(path);
    f << "# ratio_curve theta_deg=" << fmt_g(curve.theta_deg)
      << " delta_theta_deg=" << fmt_g(curve.delta_theta_deg) << "\nfreq_hz,ratio_db\n";
    for (std::size_t i = 0; i < curve.freqs_hz.size(); ++i)
        f << fmt_g(curve.freqs_hz[i]) << "," << fmt_g(curve.ratio_db[i]) << "\n";
}

void write_objective_csv(const std::string& path, const std::vector<double>& thetas_deg,
                         const std::vector<double>& objective) {
    auto f = open_out(path);
    f << "theta_deg,objective\n";
    for (std::size_t i = 0; i < thetas_deg.size(); ++i)
        f << fmt_g(thetas_deg[i]) << "," << fmt_g(objective[i]) << "\n";
}

} // namespace edgeloc::io
