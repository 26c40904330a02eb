#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

namespace navsieve {

inline constexpr double kPi = std::numbers::pi;

/// 2D vector / point, double precision.
struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }

    [[nodiscard]] constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
    [[nodiscard]] constexpr double norm_sq() const { return x * x + y * y; }
    [[nodiscard]] double norm() const { return std::sqrt(norm_sq()); }

    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

[[nodiscard]] inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Wrap an angle to (-pi, pi].
[[nodiscard]] inline double wrap_angle(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a <= 0.0) a += 2.0 * kPi;
    return a - kPi;
}

/// Planar pose: position plus heading. Heading stays in (-pi, pi];
/// every operation that writes it goes through wrap_angle.
struct Pose2D {
    double x{0.0};
    double y{0.0};
    double heading{0.0};

    [[nodiscard]] constexpr Vec2 position() const { return {x, y}; }

    friend constexpr bool operator==(const Pose2D&, const Pose2D&) = default;
};

[[nodiscard]] inline Pose2D make_pose(double x, double y, double heading) {
    return {x, y, wrap_angle(heading)};
}

/// Unit direction of a heading.
[[nodiscard]] inline Vec2 heading_dir(double heading) {
    return {std::cos(heading), std::sin(heading)};
}

/// Map a point given in the pose's body frame into the world frame.
[[nodiscard]] inline Vec2 to_world(const Pose2D& frame, const Vec2& body) {
    const double c = std::cos(frame.heading);
    const double s = std::sin(frame.heading);
    return {frame.x + c * body.x - s * body.y, frame.y + s * body.x + c * body.y};
}

/// Compose a body-frame pose onto a world-frame pose (SE(2) product).
[[nodiscard]] inline Pose2D compose(const Pose2D& frame, const Pose2D& body) {
    const Vec2 p = to_world(frame, body.position());
    return {p.x, p.y, wrap_angle(frame.heading + body.heading)};
}

/// Bearing of a world point in the pose's body frame, wrapped to (-pi, pi].
[[nodiscard]] inline double body_bearing(const Pose2D& pose, const Vec2& point) {
    return wrap_angle(std::atan2(point.y - pose.y, point.x - pose.x) - pose.heading);
}

/// Axis-aligned rectangle, lo <= hi componentwise.
struct Rect {
    Vec2 lo;
    Vec2 hi;

    [[nodiscard]] constexpr double width() const { return hi.x - lo.x; }
    [[nodiscard]] constexpr double height() const { return hi.y - lo.y; }
    [[nodiscard]] constexpr Vec2 center() const { return {(lo.x + hi.x) * 0.5, (lo.y + hi.y) * 0.5}; }

    [[nodiscard]] constexpr bool contains(const Vec2& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
    }

    [[nodiscard]] constexpr Vec2 clamp(const Vec2& p) const {
        return {p.x < lo.x ? lo.x : (p.x > hi.x ? hi.x : p.x),
                p.y < lo.y ? lo.y : (p.y > hi.y ? hi.y : p.y)};
    }

    /// Signed distance to the boundary: positive inside, negative outside.
    [[nodiscard]] constexpr double inner_clearance(const Vec2& p) const {
        const double dx = std::min(p.x - lo.x, hi.x - p.x);
        const double dy = std::min(p.y - lo.y, hi.y - p.y);
        return std::min(dx, dy);
    }
};

}  // namespace navsieve
