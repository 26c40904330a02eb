#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "navsieve/geometry.hpp"

namespace navsieve {

/// Circular obstacle. radius > 0.
struct Obstacle {
    Vec2 center;
    double radius{0.28};
};

/// Recipe for a randomized scene: where obstacles may spawn relative to the
/// robot start pose, and how many. The spawn region covers the ground 1 to 5
/// meters ahead of the robot and 3 meters to either side by default.
struct WorldSpec {
    Rect bounds{{-1.0, -4.5}, {7.0, 4.5}};
    Rect spawn_region{{1.0, -3.0}, {5.0, 3.0}};  // robot frame
    Pose2D start{};
    int obstacle_count{3};
    double obstacle_radius{0.28};
    std::uint64_t seed{0};
};

/// A concrete world: obstacles plus solid outer walls.
struct Scene {
    std::vector<Obstacle> obstacles;
    Rect bounds;

    /// Minimum over obstacles of (distance to center - radius) and the
    /// distance to the nearest boundary edge. Negative inside an obstacle
    /// or outside the bounds.
    [[nodiscard]] double clearance(const Vec2& p) const {
        double best = bounds.inner_clearance(p);
        for (const auto& ob : obstacles) {
            best = std::min(best, distance(p, ob.center) - ob.radius);
        }
        return best;
    }
};

[[nodiscard]] inline double clearance(const Scene& scene, const Vec2& p) {
    return scene.clearance(p);
}

/// Place obstacle_count obstacles uniformly over the spawn region (expressed
/// in the start pose's frame), deterministically for a fixed seed. Centers
/// are clamped into the world bounds.
[[nodiscard]] inline Scene generate_scene(const WorldSpec& spec) {
    Scene scene;
    scene.bounds = spec.bounds;
    scene.obstacles.reserve(static_cast<std::size_t>(std::max(0, spec.obstacle_count)));

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> ux(spec.spawn_region.lo.x, spec.spawn_region.hi.x);
    std::uniform_real_distribution<double> uy(spec.spawn_region.lo.y, spec.spawn_region.hi.y);
    for (int i = 0; i < spec.obstacle_count; ++i) {
        const double bx = ux(rng);
        const double by = uy(rng);
        const Vec2 c = spec.bounds.clamp(to_world(spec.start, {bx, by}));
        scene.obstacles.push_back({c, spec.obstacle_radius});
    }
    return scene;
}

/// Named rectangular zone used by sector-world benchmarks.
struct Sector {
    std::string name;
    Rect rect;
};

struct SectorWorld {
    Scene scene;
    std::vector<Sector> sectors;
};

/// Parse a world file. One directive per line:
///   bounds xmin ymin xmax ymax
///   obstacle x y r
///   sector NAME xmin ymin xmax ymax
/// Lines starting with '#' and blank lines are ignored. Units are meters.
[[nodiscard]] inline SectorWorld parse_world(std::istream& in, const std::string& origin = "<stream>") {
    SectorWorld world;
    bool have_bounds = false;
    std::string line;
    int line_no = 0;

    auto fail = [&](const std::string& what) {
        throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag) || tag[0] == '#') continue;

        if (tag == "bounds") {
            Rect r;
            if (!(ss >> r.lo.x >> r.lo.y >> r.hi.x >> r.hi.y)) fail("malformed bounds directive");
            if (r.lo.x >= r.hi.x || r.lo.y >= r.hi.y) fail("bounds must have positive extent");
            world.scene.bounds = r;
            have_bounds = true;
        } else if (tag == "obstacle") {
            Obstacle ob;
            if (!(ss >> ob.center.x >> ob.center.y >> ob.radius)) fail("malformed obstacle directive");
            if (ob.radius <= 0.0) fail("obstacle radius must be > 0");
            world.scene.obstacles.push_back(ob);
        } else if (tag == "sector") {
            Sector s;
            if (!(ss >> s.name >> s.rect.lo.x >> s.rect.lo.y >> s.rect.hi.x >> s.rect.hi.y))
                fail("malformed sector directive");
            world.sectors.push_back(s);
        } else {
            fail("unknown directive '" + tag + "'");
        }
    }
    if (!have_bounds) {
        line_no = 0;
        fail("world file has no bounds directive");
    }
    for (const auto& ob : world.scene.obstacles) {
        if (!world.scene.bounds.contains(ob.center)) {
            line_no = 0;
            fail("obstacle center outside bounds");
        }
    }
    return world;
}

[[nodiscard]] inline SectorWorld load_world_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open world file: " + path);
    return parse_world(in, path);
}

}  // namespace navsieve
