#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "navsieve/sensor.hpp"
#include "navsieve/world.hpp"

using namespace navsieve;

TEST_CASE("wrap_angle lands in (-pi, pi]") {
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(kPi) == Catch::Approx(kPi));
    CHECK(wrap_angle(-kPi) == Catch::Approx(kPi));
    CHECK(wrap_angle(3.0 * kPi / 2.0) == Catch::Approx(-kPi / 2.0));
    CHECK(wrap_angle(-3.0 * kPi / 2.0) == Catch::Approx(kPi / 2.0));
    for (double a = -20.0; a <= 20.0; a += 0.37) {
        const double w = wrap_angle(a);
        CHECK(w > -kPi);
        CHECK(w <= kPi);
        CHECK(std::abs(std::remainder(w - a, 2.0 * kPi)) < 1e-9);
    }
}

TEST_CASE("generate_scene basics") {
    WorldSpec spec;

    SECTION("zero obstacles gives an empty scene") {
        spec.obstacle_count = 0;
        CHECK(generate_scene(spec).obstacles.empty());
    }

    SECTION("fixed seed is deterministic") {
        spec.obstacle_count = 3;
        spec.seed = 7;
        const Scene a = generate_scene(spec);
        const Scene b = generate_scene(spec);
        REQUIRE(a.obstacles.size() == 3);
        for (std::size_t i = 0; i < a.obstacles.size(); ++i) {
            CHECK(a.obstacles[i].center == b.obstacles[i].center);
            CHECK(a.obstacles[i].radius == b.obstacles[i].radius);
        }
    }

    SECTION("centers stay inside the spawn region") {
        spec.obstacle_count = 5;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            spec.seed = seed;
            for (const auto& ob : generate_scene(spec).obstacles) {
                CHECK(spec.spawn_region.contains(ob.center));  // start pose is identity
            }
        }
    }

    SECTION("degenerate spawn region collapses to a point") {
        spec.spawn_region = {{2.0, 1.0}, {2.0, 1.0}};
        spec.obstacle_count = 4;
        for (const auto& ob : generate_scene(spec).obstacles) {
            CHECK(ob.center == Vec2{2.0, 1.0});
        }
    }

    SECTION("spawn region follows the start pose") {
        spec.start = make_pose(1.0, 3.0, kPi / 2.0);
        spec.bounds = {{-10.0, -10.0}, {10.0, 10.0}};
        spec.obstacle_count = 8;
        spec.seed = 11;
        for (const auto& ob : generate_scene(spec).obstacles) {
            // Facing +y: "ahead" is +y, lateral is x.
            CHECK(ob.center.y >= 3.0 + 1.0 - 1e-9);
            CHECK(ob.center.y <= 3.0 + 5.0 + 1e-9);
            CHECK(std::abs(ob.center.x - 1.0) <= 3.0 + 1e-9);
        }
    }
}

TEST_CASE("generate_scene centers are uniform over the spawn region") {
    // Chi-square on a 4x4 grid over 1000 scenes x 3 obstacles; the 1%
    // critical value for 15 degrees of freedom is 30.5779.
    WorldSpec spec;
    spec.obstacle_count = 3;
    int counts[4][4] = {};
    const int scenes = 1000;
    for (int s = 0; s < scenes; ++s) {
        spec.seed = static_cast<std::uint64_t>(s);
        for (const auto& ob : generate_scene(spec).obstacles) {
            const int ix = std::min(3, static_cast<int>((ob.center.x - 1.0) / 1.0));
            const int iy = std::min(3, static_cast<int>((ob.center.y + 3.0) / 1.5));
            ++counts[ix][iy];
        }
    }
    const double expected = scenes * 3 / 16.0;
    double chi2 = 0.0;
    for (auto& row : counts) {
        for (const int c : row) {
            const double d = c - expected;
            chi2 += d * d / expected;
        }
    }
    CHECK(chi2 < 30.5779);
}

TEST_CASE("raycast_scan") {
    SensorConfig cfg;

    SECTION("empty huge world reads max_range everywhere") {
        Scene scene;
        scene.bounds = {{-100.0, -100.0}, {100.0, 100.0}};
        const DepthScan scan = raycast_scan(scene, {}, cfg);
        REQUIRE(scan.ranges.size() == 140);
        for (const double r : scan.ranges) CHECK(r == cfg.max_range);
    }

    SECTION("center beam hits an obstacle dead ahead at 2.0 - 0.28") {
        cfg.beam_count = 141;  // odd, so the zero-angle beam exists
        Scene scene;
        scene.bounds = {{-100.0, -100.0}, {100.0, 100.0}};
        scene.obstacles.push_back({{2.0, 0.0}, 0.28});
        const DepthScan scan = raycast_scan(scene, {}, cfg);
        CHECK(scan.ranges[70] == Catch::Approx(1.72).margin(1e-12));
    }

    SECTION("obstacle behind the robot is outside the FOV") {
        Scene scene;
        scene.bounds = {{-100.0, -100.0}, {100.0, 100.0}};
        scene.obstacles.push_back({{-2.0, 0.0}, 0.28});
        const DepthScan scan = raycast_scan(scene, {}, cfg);
        for (const double r : scan.ranges) CHECK(r == cfg.max_range);
    }

    SECTION("walls are solid") {
        Scene scene;
        scene.bounds = {{-1.0, -10.0}, {2.5, 10.0}};
        cfg.beam_count = 141;
        const DepthScan scan = raycast_scan(scene, {}, cfg);
        CHECK(scan.ranges[70] == Catch::Approx(2.5));
    }

    SECTION("identical inputs give identical scans") {
        WorldSpec spec;
        spec.obstacle_count = 3;
        spec.seed = 12;
        const Scene scene = generate_scene(spec);
        const Pose2D pose = make_pose(0.1, -0.2, 0.05);
        const DepthScan a = raycast_scan(scene, pose, cfg);
        const DepthScan b = raycast_scan(scene, pose, cfg);
        CHECK(a.ranges == b.ranges);
    }
}

TEST_CASE("raycast monotonicity: adding an obstacle never lengthens a beam") {
    SensorConfig cfg;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ux(0.5, 5.0);
    std::uniform_real_distribution<double> uy(-3.0, 3.0);
    for (int trial = 0; trial < 30; ++trial) {
        WorldSpec spec;
        spec.obstacle_count = 3;
        spec.seed = static_cast<std::uint64_t>(trial);
        Scene scene = generate_scene(spec);
        const DepthScan before = raycast_scan(scene, {}, cfg);
        scene.obstacles.push_back({{ux(rng), uy(rng)}, 0.28});
        const DepthScan after = raycast_scan(scene, {}, cfg);
        for (std::size_t i = 0; i < before.ranges.size(); ++i) {
            CHECK(after.ranges[i] <= before.ranges[i] + 1e-12);
        }
    }
}

TEST_CASE("raycast/clearance consistency along beams") {
    SensorConfig cfg;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        WorldSpec spec;
        spec.obstacle_count = 4;
        spec.seed = seed;
        const Scene scene = generate_scene(spec);
        const Pose2D pose{};
        const DepthScan scan = raycast_scan(scene, pose, cfg);
        for (int i = 0; i < cfg.beam_count; i += 7) {
            const double range = scan.ranges[static_cast<std::size_t>(i)];
            const Vec2 dir = heading_dir(pose.heading + beam_angle(cfg, i));
            for (const double eps : {1e-6, 0.01, 0.1}) {
                if (eps >= range - cfg.min_range) continue;
                const Vec2 p = pose.position() + dir * (range - eps);
                CHECK(scene.clearance(p) >= -1e-9);
            }
        }
    }
}

TEST_CASE("clearance") {
    SECTION("boundary only") {
        Scene scene;
        scene.bounds = {{0.0, 0.0}, {10.0, 10.0}};
        CHECK(scene.clearance({1.0, 5.0}) == Catch::Approx(1.0));
    }

    SECTION("negative inside an obstacle") {
        Scene scene;
        scene.bounds = {{-10.0, -10.0}, {10.0, 10.0}};
        scene.obstacles.push_back({{0.0, 0.0}, 0.28});
        CHECK(scene.clearance({0.0, 0.0}) == Catch::Approx(-0.28));
    }

    SECTION("matches a brute-force boundary sampling oracle") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(-3.5, 3.5);
        for (int trial = 0; trial < 10; ++trial) {
            WorldSpec spec;
            spec.bounds = {{-4.0, -4.0}, {6.0, 4.0}};
            spec.obstacle_count = 3;
            spec.seed = static_cast<std::uint64_t>(100 + trial);
            const Scene scene = generate_scene(spec);
            for (int q = 0; q < 5; ++q) {
                const Vec2 p{u(rng), u(rng)};
                // Dense sampling of every obstacle circle plus the walls.
                double brute = std::numeric_limits<double>::infinity();
                const int n = 60000;
                for (const auto& ob : scene.obstacles) {
                    if (distance(p, ob.center) <= ob.radius) {
                        brute = std::min(brute, distance(p, ob.center) - ob.radius);
                        continue;
                    }
                    for (int s = 0; s < n; ++s) {
                        const double a = 2.0 * kPi * s / n;
                        const Vec2 bp = ob.center + Vec2{std::cos(a), std::sin(a)} * ob.radius;
                        brute = std::min(brute, distance(p, bp));
                    }
                }
                brute = std::min(brute, scene.bounds.inner_clearance(p));
                CHECK(scene.clearance(p) == Catch::Approx(brute).margin(1e-7));
            }
        }
    }
}

TEST_CASE("world file parsing") {
    SECTION("directives, comments, and blank lines") {
        std::istringstream in(
            "# demo world\n"
            "bounds 0 0 12 10\n"
            "\n"
            "obstacle 3.0 4.0 0.28\n"
            "obstacle 6.5 2.0 0.35\n"
            "sector A 0.5 0.5 2.5 2.5\n"
            "sector B 9.5 7.5 11.5 9.5\n");
        const SectorWorld w = parse_world(in);
        CHECK(w.scene.bounds.hi.x == 12.0);
        REQUIRE(w.scene.obstacles.size() == 2);
        CHECK(w.scene.obstacles[1].radius == 0.35);
        REQUIRE(w.sectors.size() == 2);
        CHECK(w.sectors[0].name == "A");
        CHECK(w.sectors[1].rect.lo.y == 7.5);
    }

    SECTION("errors name the offending line") {
        std::istringstream bad("bounds 0 0 10 10\nobstacle 1 2\n");
        CHECK_THROWS_WITH(parse_world(bad, "w.world"),
                          Catch::Matchers::ContainsSubstring("w.world:2"));

        std::istringstream unknown("bounds 0 0 10 10\nwall 1 2 3 4\n");
        CHECK_THROWS_WITH(parse_world(unknown, "w.world"),
                          Catch::Matchers::ContainsSubstring("unknown directive"));

        std::istringstream no_bounds("obstacle 1 2 0.3\n");
        CHECK_THROWS(parse_world(no_bounds));

        std::istringstream outside("bounds 0 0 4 4\nobstacle 9 9 0.3\n");
        CHECK_THROWS_WITH(parse_world(outside),
                          Catch::Matchers::ContainsSubstring("outside bounds"));

        std::istringstream bad_radius("bounds 0 0 4 4\nobstacle 1 1 -0.1\n");
        CHECK_THROWS_WITH(parse_world(bad_radius),
                          Catch::Matchers::ContainsSubstring("radius"));
    }
}
