#pragma once

#include <concepts>
#include <limits>
#include <optional>
#include <vector>

#include "navsieve/geometry.hpp"
#include "navsieve/world.hpp"

namespace navsieve {

/// Departure-angle trajectory family: turn in place-free unicycle that
/// rotates at max_yaw_rate until the commanded heading offset is reached,
/// then drives straight, at constant forward speed throughout.
struct TrajectoryConfig {
    int angle_count{51};        // odd, so angle 0 exists
    double angle_range{0.4};    // radians, symmetric
    double forward_speed{0.5};  // m/s
    double max_yaw_rate{1.0};   // rad/s
    double time_step{0.1};      // s between recorded poses
    double max_path_length{5.0};
    double robot_radius{0.18};
};

/// Evenly spaced departure angles over [-angle_range, +angle_range].
[[nodiscard]] inline std::vector<double> angle_grid(const TrajectoryConfig& cfg) {
    std::vector<double> angles(static_cast<std::size_t>(cfg.angle_count));
    for (int i = 0; i < cfg.angle_count; ++i) {
        angles[static_cast<std::size_t>(i)] =
            cfg.angle_range * (2.0 * i / static_cast<double>(cfg.angle_count - 1) - 1.0);
    }
    return angles;
}

/// Index of the grid angle nearest to a given angle.
[[nodiscard]] inline int nearest_angle_index(const TrajectoryConfig& cfg, double angle) {
    const double step = 2.0 * cfg.angle_range / static_cast<double>(cfg.angle_count - 1);
    const double raw = (angle + cfg.angle_range) / step;
    const int i = static_cast<int>(std::lround(raw));
    return std::clamp(i, 0, cfg.angle_count - 1);
}

struct PoseSequence {
    std::vector<Pose2D> poses;
    std::vector<double> cumulative_length;  // meters, per pose
};

struct TrajectoryCandidate {
    double departure_angle{0.0};
    PoseSequence poses;  // truncated at first collision
    double clear_distance{0.0};
    bool collided{false};
};

/// Per-angle clear distances plus the classification threshold.
struct DistanceLabels {
    std::vector<double> distances;
    double threshold{4.0};

    [[nodiscard]] bool positive(std::size_t i) const { return distances[i] >= threshold; }
};

namespace detail {

/// Advance a pose along a circular arc of given length (signed yaw rate),
/// closed form, constant forward speed.
inline void advance_arc(Pose2D& p, double arc_len, double yaw_rate, double speed) {
    if (arc_len <= 0.0) return;
    if (yaw_rate == 0.0) {
        p.x += arc_len * std::cos(p.heading);
        p.y += arc_len * std::sin(p.heading);
        return;
    }
    const double radius = speed / yaw_rate;  // signed
    const double h0 = p.heading;
    const double h1 = h0 + yaw_rate * (arc_len / speed);
    p.x += radius * (std::sin(h1) - std::sin(h0));
    p.y -= radius * (std::cos(h1) - std::cos(h0));
    p.heading = wrap_angle(h1);
}

}  // namespace detail

/// Roll out the two-phase trajectory for one departure angle. Poses are
/// spaced forward_speed * time_step apart in arc length (the last segment
/// may be shorter); each step is integrated with exact unicycle arcs, so a
/// phase switch inside a step loses no accuracy.
[[nodiscard]] inline PoseSequence generate_poses(const Pose2D& start, double departure_angle,
                                                 const TrajectoryConfig& cfg) {
    const double ds = cfg.forward_speed * cfg.time_step;
    const double total = cfg.max_path_length;
    const double turn_len = cfg.forward_speed * std::abs(departure_angle) / cfg.max_yaw_rate;
    const double yaw_rate = departure_angle >= 0.0 ? cfg.max_yaw_rate : -cfg.max_yaw_rate;

    PoseSequence seq;
    const auto count = static_cast<std::size_t>(std::ceil(total / ds - 1e-9)) + 1;
    seq.poses.reserve(count);
    seq.cumulative_length.reserve(count);
    seq.poses.push_back(start);
    seq.cumulative_length.push_back(0.0);

    Pose2D p = start;
    double s0 = 0.0;
    while (s0 < total - 1e-12) {
        const double s1 = std::min(s0 + ds, total);
        if (s1 <= turn_len) {
            detail::advance_arc(p, s1 - s0, yaw_rate, cfg.forward_speed);
        } else if (s0 >= turn_len) {
            detail::advance_arc(p, s1 - s0, 0.0, cfg.forward_speed);
        } else {
            detail::advance_arc(p, turn_len - s0, yaw_rate, cfg.forward_speed);
            detail::advance_arc(p, s1 - turn_len, 0.0, cfg.forward_speed);
        }
        seq.poses.push_back(p);
        seq.cumulative_length.push_back(s1);
        s0 = s1;
    }
    return seq;
}

/// Re-express a body-frame pose sequence in the world frame of `start`.
[[nodiscard]] inline PoseSequence transform_sequence(const Pose2D& start, const PoseSequence& body) {
    PoseSequence out;
    out.cumulative_length = body.cumulative_length;
    out.poses.reserve(body.poses.size());
    for (const auto& bp : body.poses) out.poses.push_back(compose(start, bp));
    return out;
}

/// Anything that can report clearance to the nearest obstacle.
template <class S>
concept ClearanceSource = requires(const S& s, Vec2 p) {
    { s.clearance(p) } -> std::convertible_to<double>;
};

/// Memoryless obstacle source: scan endpoints treated as zero-radius points.
struct PointSource {
    std::vector<Vec2> points;

    [[nodiscard]] double clearance(const Vec2& p) const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : points) best = std::min(best, distance(p, q));
        return best;
    }
};

/// Smallest pose index whose position has clearance below robot_radius, or
/// nullopt when the whole sequence stays clear.
template <ClearanceSource S>
[[nodiscard]] std::optional<std::size_t> first_collision(const PoseSequence& seq, const S& source,
                                                         double robot_radius) {
    for (std::size_t i = 0; i < seq.poses.size(); ++i) {
        if (source.clearance(seq.poses[i].position()) < robot_radius) return i;
    }
    return std::nullopt;
}

/// Roll out one departure angle against an obstacle source and truncate at
/// the first collision. The start pose is always retained, so a candidate
/// that collides immediately has clear_distance 0.
template <ClearanceSource S>
[[nodiscard]] TrajectoryCandidate rollout_candidate(const PoseSequence& world_seq,
                                                    double departure_angle, const S& source,
                                                    double robot_radius) {
    TrajectoryCandidate cand;
    cand.departure_angle = departure_angle;
    const auto hit = first_collision(world_seq, source, robot_radius);
    if (!hit) {
        cand.poses = world_seq;
        cand.collided = false;
    } else {
        const std::size_t keep = std::max<std::size_t>(*hit, 1);
        cand.poses.poses.assign(world_seq.poses.begin(),
                                world_seq.poses.begin() + static_cast<std::ptrdiff_t>(keep));
        cand.poses.cumulative_length.assign(
            world_seq.cumulative_length.begin(),
            world_seq.cumulative_length.begin() + static_cast<std::ptrdiff_t>(keep));
        cand.collided = true;
    }
    cand.clear_distance =
        distance(world_seq.poses.front().position(), cand.poses.poses.back().position());
    return cand;
}

template <ClearanceSource S>
[[nodiscard]] TrajectoryCandidate rollout_candidate(const Pose2D& start, double departure_angle,
                                                    const TrajectoryConfig& cfg, const S& source,
                                                    double robot_radius) {
    return rollout_candidate(generate_poses(start, departure_angle, cfg), departure_angle, source,
                             robot_radius);
}

/// Clear distance for every grid angle: roll out, truncate at the first
/// collision, record the Euclidean distance to the last retained pose.
[[nodiscard]] inline DistanceLabels label_scene(const Scene& scene, const Pose2D& start,
                                                const TrajectoryConfig& cfg) {
    DistanceLabels labels;
    labels.distances.reserve(static_cast<std::size_t>(cfg.angle_count));
    for (const double angle : angle_grid(cfg)) {
        labels.distances.push_back(
            rollout_candidate(start, angle, cfg, scene, cfg.robot_radius).clear_distance);
    }
    return labels;
}

}  // namespace navsieve
