#include "edgeloc/scene.hpp"

#include "edgeloc/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace edgeloc;
using scene::Point3;

TEST_CASE("path_distance examples") {
    // pure-x displacement of 3.2 m plus r2
    CHECK(scene::path_distance({3.2, 0.0, 1.5}, {0.0, 0.0, 0.0}, 0.8) == doctest::Approx(4.0));
    // grid point on the edge line: only the visible leg remains
    CHECK(scene::path_distance({0.0, 0.0, 2.0}, {0.0, 0.0, 0.0}, 0.8) == doctest::Approx(0.8));
    // 3-4-5 triangle
    CHECK(scene::path_distance({3.0, 4.0, 0.0}, {0.0, 0.0, 0.0}, 0.8) == doctest::Approx(5.8));
}

TEST_CASE("path_distance invariances") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> pos(-5.0, 5.0), ang(0.0, 6.283), r2d(0.1, 3.0);
    for (int i = 0; i < 200; ++i) {
        const Point3 p{pos(gen), pos(gen), std::fabs(pos(gen))};
        const Point3 e{pos(gen), pos(gen), 0.0};
        const double r2 = r2d(gen);
        const double base = scene::path_distance(p, e, r2);

        // lower bound with equality on the edge line
        CHECK(base >= r2);

        // translation invariance
        const double tx = pos(gen), ty = pos(gen);
        CHECK(scene::path_distance({p.x + tx, p.y + ty, p.z}, {e.x + tx, e.y + ty, 0.0}, r2)
              == doctest::Approx(base).epsilon(1e-12));

        // rotation invariance about the origin
        const double a = ang(gen), ca = std::cos(a), sa = std::sin(a);
        const Point3 pr{ca * p.x - sa * p.y, sa * p.x + ca * p.y, p.z};
        const Point3 er{ca * e.x - sa * e.y, sa * e.x + ca * e.y, 0.0};
        CHECK(scene::path_distance(pr, er, r2) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("source_from_polar examples and round trip") {
    const Point3 edge{0.0, 0.0, 0.0};
    const Point3 los{1.0, 0.0, 0.0};

    const auto p0 = scene::source_from_polar(3.2, 0.0, 1.5, edge, los);
    CHECK(p0.x == doctest::Approx(3.2));
    CHECK(p0.y == doctest::Approx(0.0));
    CHECK(p0.z == doctest::Approx(1.5));

    const auto p90 = scene::source_from_polar(1.0, 90.0, 0.0, edge, los);
    CHECK(p90.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p90.y == doctest::Approx(1.0));

    // inverse recovers the reference values to 1e-9
    const auto p = scene::source_from_polar(3.1, 25.0, 1.3, edge, los);
    const auto gt = scene::polar_from_source(p, edge, los);
    CHECK(gt.r1_m == doctest::Approx(3.1).epsilon(1e-9));
    CHECK(gt.theta_deg == doctest::Approx(25.0).epsilon(1e-9));
    CHECK(gt.z0_m == doctest::Approx(1.3).epsilon(1e-9));
}

TEST_CASE("source_from_polar round trip property") {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> r1(0.2, 8.0), th(-89.0, 89.0), z(0.0, 3.0), c(-4.0, 4.0), a(0.0, 6.283);
    for (int i = 0; i < 300; ++i) {
        const Point3 edge{c(gen), c(gen), 0.0};
        const double ang = a(gen);
        const Point3 los{std::cos(ang), std::sin(ang), 0.0};
        const double r = r1(gen), t = th(gen), h = z(gen);
        const auto p = scene::source_from_polar(r, t, h, edge, los);
        const auto gt = scene::polar_from_source(p, edge, los);
        CHECK(gt.r1_m == doctest::Approx(r).epsilon(1e-9));
        CHECK(gt.theta_deg == doctest::Approx(t).epsilon(1e-9));
        CHECK(gt.z0_m == doctest::Approx(h).epsilon(1e-9));
    }
}

TEST_CASE("validate_scene") {
    SUBCASE("reference doorway preset is clean") {
        const auto s = scene::doorway_preset();
        CHECK(scene::validate_scene(s).empty());
        CHECK(s.array.count == 15);
        CHECK(s.array.pitch_m == doctest::Approx(0.13));
        CHECK(s.array.base.z == doctest::Approx(0.46));
        CHECK(s.array.top_height() == doctest::Approx(2.28));
        CHECK(s.r2_d_m == doctest::Approx(0.8));
        CHECK(s.door_width_m == doctest::Approx(0.9));
    }
    SUBCASE("reference edge preset is clean") {
        const auto s = scene::edge_preset();
        CHECK(scene::validate_scene(s).empty());
        CHECK(s.arrays[0].count == 8);
        CHECK(s.arrays[0].pitch_m == doctest::Approx(0.26));
        CHECK(s.arrays[0].top_height() == doctest::Approx(2.28));
        CHECK(s.delta_theta_deg == doctest::Approx(25.0));
        // both arrays 0.8 m from the edge
        for (int k = 0; k < 2; ++k) {
            const auto& b = s.arrays[k].base;
            CHECK(std::hypot(b.x, b.y) == doctest::Approx(0.8).epsilon(1e-12));
        }
    }
    SUBCASE("zero pitch is flagged") {
        auto s = scene::doorway_preset();
        s.array.pitch_m = 0.0;
        const auto v = scene::validate_scene(s);
        REQUIRE(v.size() == 1);
        CHECK(v[0].field.find("pitch") != std::string::npos);
    }
    SUBCASE("delta_theta out of range is flagged") {
        auto s = scene::edge_preset();
        s.delta_theta_deg = 120.0;
        const auto v = scene::validate_scene(s);
        REQUIRE(v.size() == 1);
        CHECK(v[0].field.find("delta_theta") != std::string::npos);
    }
    SUBCASE("physics sampling rule") {
        scene::PhysicsConfig p;
        CHECK(scene::validate_physics(p).empty());
        p.fs_hz = 12000.0;
        CHECK(scene::validate_physics(p, 9000.0).size() == 1);
    }
}

TEST_CASE("mic array heights ascend from the base") {
    const auto s = scene::doorway_preset();
    const auto h = s.array.heights();
    REQUIRE(h.size() == 15);
    CHECK(h.front() == doctest::Approx(0.46));
    CHECK(h.back() == doctest::Approx(2.28));
    for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] > h[i - 1]);
}
