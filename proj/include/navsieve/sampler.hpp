#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "navsieve/geometry.hpp"
#include "navsieve/trajectory.hpp"

namespace navsieve {

enum class SamplerMode { ToGoal, GaussianBias, NaiveArgmax };

struct SamplerConfig {
    int k{5};
    double bias_sigma{0.2};
    SamplerMode mode{SamplerMode::GaussianBias};
};

/// Departure-angle candidates, ordered by descending weighted confidence.
struct CandidateSet {
    struct Entry {
        int index{0};
        double weight{0.0};
    };
    std::vector<Entry> entries;

    [[nodiscard]] bool contains(int index) const {
        return std::any_of(entries.begin(), entries.end(),
                           [index](const Entry& e) { return e.index == index; });
    }
};

/// Bearing to the goal in the body frame, clamped into the trainable range.
[[nodiscard]] inline double goal_departure_angle(const Pose2D& pose, const Vec2& goal,
                                                 double angle_range = 0.4) {
    if (distance(pose.position(), goal) <= 0.0)
        throw std::invalid_argument("goal_departure_angle: goal coincides with pose");
    return std::clamp(body_bearing(pose, goal), -angle_range, angle_range);
}

/// w_i = c_i * exp(-(theta_i - goal)^2 / (2 sigma^2)). Unnormalized; only the
/// ordering matters downstream.
[[nodiscard]] inline std::vector<double> gaussian_goal_bias(const std::vector<double>& confidences,
                                                            const std::vector<double>& angles,
                                                            double goal_angle, double sigma) {
    if (confidences.size() != angles.size())
        throw std::invalid_argument("gaussian_goal_bias: length mismatch");
    std::vector<double> weighted(confidences.size());
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (std::size_t i = 0; i < confidences.size(); ++i) {
        const double d = angles[i] - goal_angle;
        weighted[i] = confidences[i] * std::exp(-d * d * inv);
    }
    return weighted;
}

/// k largest weighted confidences; ties broken toward the goal angle, then
/// by smaller index.
[[nodiscard]] inline CandidateSet select_top_k(const std::vector<double>& weighted,
                                               const std::vector<double>& angles,
                                               double goal_angle, int k) {
    if (k < 1) throw std::invalid_argument("select_top_k: k must be >= 1");
    std::vector<int> order(weighted.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    auto better = [&](int a, int b) {
        const auto ia = static_cast<std::size_t>(a);
        const auto ib = static_cast<std::size_t>(b);
        if (weighted[ia] != weighted[ib]) return weighted[ia] > weighted[ib];
        const double da = std::abs(angles[ia] - goal_angle);
        const double db = std::abs(angles[ib] - goal_angle);
        if (da != db) return da < db;
        return a < b;
    };
    const auto keep = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep),
                      order.end(), better);
    CandidateSet set;
    set.entries.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i)
        set.entries.push_back({order[i], weighted[static_cast<std::size_t>(order[i])]});
    return set;
}

/// Append the grid angle nearest the goal when absent; idempotent.
[[nodiscard]] inline CandidateSet to_goal_augment(CandidateSet set,
                                                  const std::vector<double>& weighted,
                                                  const TrajectoryConfig& cfg, double goal_angle) {
    const int idx = nearest_angle_index(cfg, goal_angle);
    if (set.contains(idx)) return set;
    const CandidateSet::Entry entry{idx, weighted[static_cast<std::size_t>(idx)]};
    auto pos = std::find_if(set.entries.begin(), set.entries.end(),
                            [&](const CandidateSet::Entry& e) { return e.weight < entry.weight; });
    set.entries.insert(pos, entry);
    return set;
}

}  // namespace navsieve
