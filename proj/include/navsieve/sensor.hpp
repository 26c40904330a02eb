#pragma once

#include <limits>
#include <vector>

#include "navsieve/geometry.hpp"
#include "navsieve/world.hpp"

namespace navsieve {

/// Planar depth sensor: beam_count rays spread evenly over fov radians,
/// symmetric about the heading. Readings clamp into [min_range, max_range].
struct SensorConfig {
    int beam_count{140};
    double fov{1.0};
    double max_range{4.5};
    double min_range{0.45};
};

/// Body-frame angle of beam i, from -fov/2 (i = 0) to +fov/2.
[[nodiscard]] inline double beam_angle(const SensorConfig& cfg, int i) {
    return cfg.fov * (static_cast<double>(i) / static_cast<double>(cfg.beam_count - 1) - 0.5);
}

struct DepthScan {
    std::vector<double> ranges;
    SensorConfig config;
};

namespace detail {

/// Distance along a ray (unit direction) to the first circle intersection,
/// or +inf when the ray misses.
[[nodiscard]] inline double ray_circle(const Vec2& origin, const Vec2& dir, const Obstacle& ob) {
    const Vec2 oc = ob.center - origin;
    const double b = dir.dot(oc);
    const double c = oc.norm_sq() - ob.radius * ob.radius;
    const double disc = b * b - c;
    if (disc < 0.0) return std::numeric_limits<double>::infinity();
    const double root = std::sqrt(disc);
    const double t_near = b - root;
    if (t_near >= 0.0) return t_near;
    const double t_far = b + root;  // origin inside the circle
    if (t_far >= 0.0) return t_far;
    return std::numeric_limits<double>::infinity();
}

/// Distance along a ray from a point inside the rectangle to its boundary.
[[nodiscard]] inline double ray_rect_exit(const Vec2& origin, const Vec2& dir, const Rect& r) {
    double t = std::numeric_limits<double>::infinity();
    if (dir.x > 0.0) t = std::min(t, (r.hi.x - origin.x) / dir.x);
    if (dir.x < 0.0) t = std::min(t, (r.lo.x - origin.x) / dir.x);
    if (dir.y > 0.0) t = std::min(t, (r.hi.y - origin.y) / dir.y);
    if (dir.y < 0.0) t = std::min(t, (r.lo.y - origin.y) / dir.y);
    return std::max(t, 0.0);
}

}  // namespace detail

/// Cast all beams from a pose. hit_obstacle, when given, receives per beam
/// the index of the obstacle struck, or -1 for a wall hit / max-range beam.
[[nodiscard]] inline DepthScan raycast_scan(const Scene& scene, const Pose2D& pose,
                                            const SensorConfig& cfg,
                                            std::vector<int>* hit_obstacle = nullptr) {
    DepthScan scan;
    scan.config = cfg;
    scan.ranges.resize(static_cast<std::size_t>(cfg.beam_count));
    if (hit_obstacle) hit_obstacle->assign(static_cast<std::size_t>(cfg.beam_count), -1);

    const Vec2 origin = pose.position();
    for (int i = 0; i < cfg.beam_count; ++i) {
        const Vec2 dir = heading_dir(pose.heading + beam_angle(cfg, i));
        double best = detail::ray_rect_exit(origin, dir, scene.bounds);
        int best_ob = -1;
        for (std::size_t k = 0; k < scene.obstacles.size(); ++k) {
            const double t = detail::ray_circle(origin, dir, scene.obstacles[k]);
            if (t < best) {
                best = t;
                best_ob = static_cast<int>(k);
            }
        }
        if (best > cfg.max_range) {
            best = cfg.max_range;
            best_ob = -1;
        }
        if (best < cfg.min_range) best = cfg.min_range;
        scan.ranges[static_cast<std::size_t>(i)] = best;
        if (hit_obstacle) (*hit_obstacle)[static_cast<std::size_t>(i)] = best_ob;
    }
    return scan;
}

/// World-frame endpoints of beams that returned a hit (range below max).
[[nodiscard]] inline std::vector<Vec2> scan_points(const DepthScan& scan, const Pose2D& pose) {
    std::vector<Vec2> points;
    points.reserve(scan.ranges.size());
    for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
        const double r = scan.ranges[i];
        if (r >= scan.config.max_range - 1e-9) continue;
        const Vec2 dir = heading_dir(pose.heading + beam_angle(scan.config, static_cast<int>(i)));
        points.push_back(pose.position() + dir * r);
    }
    return points;
}

}  // namespace navsieve
