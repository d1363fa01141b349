#include "edgeloc/scene.hpp"

#include "edgeloc/errors.hpp"

#include <cmath>
#include <numbers>

namespace edgeloc::scene {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;

double hypot2(double dx, double dy) { return std::sqrt(dx * dx + dy * dy); }

bool finite_point(const Point3& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

void check_array(const MicArray& a, const std::string& prefix, std::vector<Violation>& out) {
    if (!finite_point(a.base)) out.push_back({prefix + ".base", "must be finite"});
    if (a.base.z < 0) out.push_back({prefix + ".base.z", "height must be >= 0"});
    if (a.count < 2) out.push_back({prefix + ".count", "must be >= 2"});
    if (!(a.pitch_m > 0)) out.push_back({prefix + ".pitch", "must be > 0"});
}
} // namespace

std::vector<double> MicArray::heights() const {
    std::vector<double> h(count);
    for (int i = 0; i < count; ++i) h[i] = base.z + i * pitch_m;
    return h;
}

std::vector<Point3> MicArray::positions() const {
    std::vector<Point3> p(count, base);
    for (int i = 0; i < count; ++i) p[i].z = base.z + i * pitch_m;
    return p;
}

double path_distance(const Point3& grid_point, const Point3& edge, double r2_m) {
    if (!(r2_m > 0)) throw ConfigError("path_distance: r2 must be > 0");
    return hypot2(grid_point.x - edge.x, grid_point.y - edge.y) + r2_m;
}

Point3 source_from_polar(double r1_m, double theta_deg, double z0_m,
                         const Point3& edge, const Point3& los_direction) {
    if (!(r1_m > 0)) throw ConfigError("source_from_polar: r1 must be > 0");
    const double norm = hypot2(los_direction.x, los_direction.y);
    if (!(norm > 0)) throw ConfigError("source_from_polar: los_direction is degenerate");
    const double ux = los_direction.x / norm, uy = los_direction.y / norm;
    const double th = theta_deg * kDegToRad;
    const double ct = std::cos(th), st = std::sin(th);
    // rotate the LOS by +theta (counterclockwise)
    const double dx = ct * ux - st * uy;
    const double dy = st * ux + ct * uy;
    return {edge.x + r1_m * dx, edge.y + r1_m * dy, z0_m};
}

SourceGroundTruth polar_from_source(const Point3& source, const Point3& edge,
                                    const Point3& los_direction) {
    const double norm = hypot2(los_direction.x, los_direction.y);
    if (!(norm > 0)) throw ConfigError("polar_from_source: los_direction is degenerate");
    const double ux = los_direction.x / norm, uy = los_direction.y / norm;
    const double dx = source.x - edge.x, dy = source.y - edge.y;
    SourceGroundTruth gt;
    gt.r1_m = hypot2(dx, dy);
    gt.theta_deg = std::atan2(ux * dy - uy * dx, ux * dx + uy * dy) / kDegToRad;
    gt.z0_m = source.z;
    return gt;
}

std::vector<Violation> validate_scene(const DoorwayScene& s) {
    std::vector<Violation> out;
    if (!finite_point(s.edge_d)) out.push_back({"DoorwayScene.edge_d", "must be finite"});
    if (!finite_point(s.edge_r)) out.push_back({"DoorwayScene.edge_r", "must be finite"});
    check_array(s.array, "MicArray", out);
    if (!(s.r2_d_m > 0)) out.push_back({"DoorwayScene.r2_d", "must be > 0"});
    if (!(s.r2_r_m > 0)) out.push_back({"DoorwayScene.r2_r", "must be > 0"});
    if (s.r2_d_m > s.r2_r_m) out.push_back({"DoorwayScene.r2_d", "must be <= r2_r"});
    if (!(s.door_width_m > 0)) out.push_back({"DoorwayScene.door_width", "must be > 0"});
    const double edge_gap = hypot2(s.edge_r.x - s.edge_d.x, s.edge_r.y - s.edge_d.y);
    if (edge_gap <= 0) out.push_back({"DoorwayScene.edge_r", "must differ from edge_d"});
    return out;
}

std::vector<Violation> validate_scene(const EdgeScene& s) {
    std::vector<Violation> out;
    if (!finite_point(s.edge)) out.push_back({"EdgeScene.edge", "must be finite"});
    check_array(s.arrays[0], "MicArray[0]", out);
    check_array(s.arrays[1], "MicArray[1]", out);
    for (int k = 0; k < 2; ++k)
        if (!(s.r2_m[k] > 0)) out.push_back({"EdgeScene.r2[" + std::to_string(k) + "]", "must be > 0"});
    if (!(s.delta_theta_deg > 0 && s.delta_theta_deg < 90))
        out.push_back({"EdgeScene.delta_theta", "must be in (0, 90) degrees"});
    return out;
}

std::vector<Violation> validate_physics(const PhysicsConfig& p, double highest_analysis_hz) {
    std::vector<Violation> out;
    if (!(p.c_mps > 0)) out.push_back({"PhysicsConfig.c", "must be > 0"});
    if (!(p.fs_hz > 0)) out.push_back({"PhysicsConfig.fs", "must be > 0"});
    if (p.fs_hz < 2.0 * highest_analysis_hz)
        out.push_back({"PhysicsConfig.fs", "must be >= twice the highest analysis frequency"});
    return out;
}

Point3 los_direction(const DoorwayScene& s) {
    const double dx = s.edge_d.x - s.array.base.x;
    const double dy = s.edge_d.y - s.array.base.y;
    const double n = hypot2(dx, dy);
    if (!(n > 0)) throw ConfigError("los_direction: array coincides with edge");
    return {dx / n, dy / n, 0.0};
}

Point3 los_direction(const EdgeScene& s) {
    const double dx = s.edge.x - s.arrays[0].base.x;
    const double dy = s.edge.y - s.arrays[0].base.y;
    const double n = hypot2(dx, dy);
    if (!(n > 0)) throw ConfigError("los_direction: array coincides with edge");
    return {dx / n, dy / n, 0.0};
}

std::array<double, 2> array_offsets_deg(const EdgeScene& s) {
    return {0.0, s.delta_theta_deg};
}

DoorwayScene doorway_preset() {
    DoorwayScene s;
    s.edge_d = {0.0, 0.0, 0.0};
    s.edge_r = {0.0, -0.9, 0.0};
    s.array.base = {-0.8, 0.0, 0.46};
    s.array.count = 15;
    s.array.pitch_m = 0.13;
    s.array.id = "main";
    s.r2_d_m = 0.8;
    s.r2_r_m = std::sqrt(0.8 * 0.8 + 0.9 * 0.9);
    s.door_width_m = 0.9;
    return s;
}

EdgeScene edge_preset() {
    EdgeScene s;
    s.edge = {0.0, 0.0, 0.0};
    s.delta_theta_deg = 25.0;
    s.r2_m = {0.8, 0.8};
    const double rad = s.delta_theta_deg * kDegToRad;
    s.arrays[0].base = {-0.8, 0.0, 0.46};
    s.arrays[0].count = 8;
    s.arrays[0].pitch_m = 0.26;
    s.arrays[0].id = "a";
    // arrays[1] sees the source delta_theta deeper in shadow: its own ray
    // through the edge is rotated -delta_theta from the LOS.
    s.arrays[1].base = {-0.8 * std::cos(rad), 0.8 * std::sin(rad), 0.46};
    s.arrays[1].count = 8;
    s.arrays[1].pitch_m = 0.26;
    s.arrays[1].id = "b";
    return s;
}

} // namespace edgeloc::scene
