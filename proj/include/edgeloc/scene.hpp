#pragma once

// Scene geometry for the two occlusion layouts.
//
// Conventions (right-handed, z = height above the floor, floor at z = 0;
// lengths in meters, angles in degrees at every interface):
//
//  * Edges are infinite vertical lines; only their (x, y) matters.
//  * The line of sight (LOS) of a scene is the horizontal unit vector from
//    the reference array through the diffractive edge, extended into the
//    hidden region. Source azimuth theta is measured from the LOS, positive
//    toward the hidden side; the diffraction angle seen by an array equals
//    the source azimuth plus that array's own angular offset from the LOS.
//  * Canonical preset frame: diffractive edge at the origin, LOS = +x,
//    hidden azimuths rotate toward +y. In the doorway preset the far
//    (reflective) edge sits at (0, -door_width).

#include <array>
#include <string>
#include <vector>

namespace edgeloc::scene {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct MicArray {
    Point3 base;            // lowest microphone
    int count = 0;
    double pitch_m = 0.0;   // vertical spacing
    std::string id;

    std::vector<double> heights() const;
    std::vector<Point3> positions() const;
    double top_height() const { return base.z + (count - 1) * pitch_m; }
};

struct PhysicsConfig {
    double c_mps = 343.0;
    double fs_hz = 48000.0;
};

struct DoorwayScene {
    Point3 edge_d;          // diffractive (near) edge, vertical line at (x, y)
    Point3 edge_r;          // reflective (far) edge
    MicArray array;
    double r2_d_m = 0.0;    // horizontal array-to-near-edge distance
    double r2_r_m = 0.0;    // horizontal array-to-far-edge distance
    double door_width_m = 0.0;
};

struct EdgeScene {
    Point3 edge;
    std::array<MicArray, 2> arrays;   // [0] defines the LOS, [1] sits delta_theta deeper
    std::array<double, 2> r2_m{};
    double delta_theta_deg = 0.0;
};

struct SourceGroundTruth {
    double r1_m = 0.0;      // horizontal source-to-edge distance
    double theta_deg = 0.0; // azimuth from the LOS, positive = hidden side
    double z0_m = 0.0;      // height
    double t0_s = 0.0;      // emission time
};

struct Violation {
    std::string field;
    std::string constraint;
};

// Horizontal propagation distance: hidden-side leg from grid_point to the
// edge plus the visible-side scene constant r2.
double path_distance(const Point3& grid_point, const Point3& edge, double r2_m);

// (r1, theta, z0) about an edge and LOS direction -> Cartesian, and back.
// los_direction is horizontal (z ignored); positive theta rotates
// counterclockwise (toward +y when the LOS is +x).
Point3 source_from_polar(double r1_m, double theta_deg, double z0_m,
                         const Point3& edge, const Point3& los_direction);
SourceGroundTruth polar_from_source(const Point3& source, const Point3& edge,
                                    const Point3& los_direction);

std::vector<Violation> validate_scene(const DoorwayScene& s);
std::vector<Violation> validate_scene(const EdgeScene& s);
std::vector<Violation> validate_physics(const PhysicsConfig& p, double highest_analysis_hz = 9000.0);

// LOS unit vectors in the horizontal plane.
Point3 los_direction(const DoorwayScene& s);
Point3 los_direction(const EdgeScene& s);

// Angular offset of each array from the LOS as seen from the edge
// (offset of arrays[0] is 0 by construction).
std::array<double, 2> array_offsets_deg(const EdgeScene& s);

// Presets mirroring the two reference experiments: a 0.9 m doorway observed
// by 15 mics at 13 cm pitch from 46 cm height, array 0.8 m from the near
// edge; and a single edge observed by two 8-mic arrays at 26 cm pitch,
// both 0.8 m from the edge, 25 degrees apart.
DoorwayScene doorway_preset();
EdgeScene edge_preset();

} // namespace edgeloc::scene
