#pragma once

#include <optional>
#include <set>
#include <vector>

#include "navsieve/model.hpp"
#include "navsieve/occupancy.hpp"
#include "navsieve/sampler.hpp"
#include "navsieve/sensor.hpp"
#include "navsieve/trajectory.hpp"
#include "navsieve/world.hpp"

namespace navsieve {

/// Weights and shape parameters of the five-term trajectory objective.
struct CostWeights {
    double goal_heading{1.0};
    double path_heading{1.0};
    double path_distance{2.0};
    double goal_distance{2.0};
    double obstacle{3.0};
    double nose_offset{0.2};     // virtual point ahead of the robot
    double safe_clearance{0.3};  // obstacle term saturates below this
    double path_lookahead{3.0};  // local goal distance along the global path
};

enum class PlannerAlgo {
    ExhaustiveSearch,        // 200 evenly spaced angles, grid memory
    LearnedCartesian,        // model top-k, grid memory
    LearnedPerceptionSpace,  // model top-k, current scan only
    NaiveLearned             // single biased winner, no collision check
};

enum class RecoveryMode { Disabled, GlobalReplan, Rotate360 };

struct EpisodeConfig {
    double replan_period{1.0};        // Cartesian-memory planners
    double completion_fraction{0.6};  // perception-space planners
    double control_step{0.05};
    double goal_tolerance{0.5};
    double timeout{120.0};
    RecoveryMode recovery{RecoveryMode::Disabled};
};

/// A planner instantiation: the algorithm, its sampler settings, and the
/// model that drives it (classifier for top-k planners, classifier or
/// regressor for the naive planner; exhaustive search needs none).
struct PlannerSpec {
    PlannerAlgo algo{PlannerAlgo::ExhaustiveSearch};
    SamplerConfig sampler{};
    const SavedModel* model{nullptr};
    int exhaustive_candidates{200};
};

enum class Outcome { Success, Collision, Stuck, Timeout };

[[nodiscard]] inline std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Success: return "success";
        case Outcome::Collision: return "collision";
        case Outcome::Stuck: return "stuck";
        case Outcome::Timeout: return "timeout";
    }
    return "?";
}

struct TrialResult {
    Outcome outcome{Outcome::Timeout};
    double elapsed{0.0};      // simulated seconds
    double path_length{0.0};  // meters driven
    long candidates{0};       // trajectory candidates evaluated
    long replans{0};
};

/// Extra bookkeeping for the safety analysis of Collision outcomes.
struct EpisodeDiag {
    int collided_obstacle{-1};  // index into scene.obstacles, or -1 for a wall
    bool obstacle_visible_at_last_plan{false};
    bool obstacle_ever_visible{false};
};

inline constexpr double kPathSpacing = 0.05;
/// Preferred extra inflation when shaping the global path, so local goals
/// sit mid-corridor instead of grazing inflated corners. Falls back to the
/// bare rejection radius when no padded path exists.
inline constexpr double kPathInflationPad = 0.25;
/// A candidate is rejected only when its first collision falls inside this
/// arc length; it matches the distance the labels certify, and replanning
/// always fires well before it. Later collisions just truncate the
/// candidate, which the progress and obstacle terms already penalize.
inline constexpr double kRejectHorizon = 4.0;
/// Minimum index separation between Gaussian-biased picks. With a sharp
/// classifier the confidences tie at 1.0 and a pure top-k degenerates to
/// five adjacent angles that live or die together; spacing the picks keeps
/// the left/right split around obstacle shadows.
inline constexpr int kBiasSeparationSteps = 3;
/// Surface memory stores beam endpoints deduplicated at the grid's hit
/// spacing, so the true surface can bulge a little past the stored samples;
/// grid-based rejection adds that sampling slack.
inline constexpr double kGridSampleSlack = 0.02;

/// Point on the densified path path_lookahead meters past the point nearest
/// the robot; the global goal when the path is empty or ends sooner.
[[nodiscard]] inline Vec2 local_goal_on_path(const std::vector<Vec2>& path, const Vec2& robot,
                                             double lookahead, const Vec2& goal) {
    if (path.empty()) return goal;
    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < path.size(); ++i) {
        const double d = distance(path[i], robot);
        if (d < best) {
            best = d;
            nearest = i;
        }
    }
    const auto ahead = static_cast<std::size_t>(std::llround(lookahead / kPathSpacing));
    const std::size_t idx = std::min(nearest + ahead, path.size() - 1);
    return path[idx];
}

/// Weighted five-term cost of a collision-free candidate, or nullopt when
/// the candidate collided. Heading terms normalize by pi, distance terms by
/// max_path_length; the obstacle term saturates at safe_clearance.
template <ClearanceSource S>
[[nodiscard]] std::optional<double> score_candidate(const TrajectoryCandidate& candidate,
                                                    const std::vector<Vec2>& global_path,
                                                    const Vec2& goal, const CostWeights& weights,
                                                    const S& source,
                                                    double max_path_length = 5.0) {
    if (candidate.collided) return std::nullopt;
    const Pose2D& end = candidate.poses.poses.back();
    const Vec2 end_pos = end.position();

    const double goal_heading =
        std::abs(wrap_angle(end.heading - std::atan2(goal.y - end_pos.y, goal.x - end_pos.x))) /
        kPi;

    double path_heading = goal_heading;
    double path_distance = distance(end_pos, goal) / max_path_length;
    Vec2 local_goal = goal;
    if (!global_path.empty()) {
        const Vec2 nose = end_pos + heading_dir(end.heading) * weights.nose_offset;
        std::size_t near_nose = 0;
        std::size_t near_end = 0;
        double best_nose = std::numeric_limits<double>::infinity();
        double best_end = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < global_path.size(); ++i) {
            const double dn = distance(global_path[i], nose);
            if (dn < best_nose) {
                best_nose = dn;
                near_nose = i;
            }
            const double de = distance(global_path[i], end_pos);
            if (de < best_end) {
                best_end = de;
                near_end = i;
            }
        }
        if (global_path.size() > 1) {
            const std::size_t b = near_nose + 1 < global_path.size() ? near_nose : near_nose - 1;
            const Vec2 t = near_nose + 1 < global_path.size()
                               ? global_path[near_nose + 1] - global_path[near_nose]
                               : global_path[near_nose] - global_path[b];
            path_heading = std::abs(wrap_angle(end.heading - std::atan2(t.y, t.x))) / kPi;
        }
        path_distance = best_end / max_path_length;
        local_goal = local_goal_on_path(global_path, candidate.poses.poses.front().position(),
                                        weights.path_lookahead, goal);
    }
    const double goal_distance = distance(end_pos, local_goal) / max_path_length;

    double obstacle = 0.0;
    for (const auto& p : candidate.poses.poses) {
        const double c = source.clearance(p.position());
        obstacle = std::max(obstacle, std::max(0.0, weights.safe_clearance - c));
    }
    obstacle /= weights.safe_clearance;

    return weights.goal_heading * goal_heading + weights.path_heading * path_heading +
           weights.path_distance * path_distance + weights.goal_distance * goal_distance +
           weights.obstacle * obstacle;
}

struct LocalPlan {
    std::optional<TrajectoryCandidate> selected;
    double cost{0.0};
    int evaluated{0};
    std::vector<Vec2> rejection_points;  // where rejected candidates first collided
};

namespace detail {

/// Cut a rollout at the first pose inside the goal region; execution stops
/// there, so later poses are never driven and must not veto the candidate.
inline void truncate_at_goal(PoseSequence& seq, const Vec2& goal, double tolerance) {
    for (std::size_t i = 0; i < seq.poses.size(); ++i) {
        if (distance(seq.poses[i].position(), goal) <= tolerance) {
            seq.poses.resize(i + 1);
            seq.cumulative_length.resize(i + 1);
            return;
        }
    }
}

/// Roll out and score a list of departure angles; keep the cheapest
/// collision-free one.
template <ClearanceSource S>
[[nodiscard]] LocalPlan plan_scored_angles(const Pose2D& pose, const std::vector<double>& angles,
                                           const TrajectoryConfig& traj,
                                           const std::vector<Vec2>& path, const Vec2& goal,
                                           const CostWeights& weights, const S& source,
                                           double reject_radius, double goal_cutoff) {
    LocalPlan plan;
    for (const double angle : angles) {
        PoseSequence seq = generate_poses(pose, angle, traj);
        truncate_at_goal(seq, goal, goal_cutoff);
        TrajectoryCandidate cand = rollout_candidate(seq, angle, source, reject_radius);
        ++plan.evaluated;
        if (cand.collided && cand.poses.cumulative_length.back() < kRejectHorizon) {
            const Pose2D& last = cand.poses.poses.back();
            plan.rejection_points.push_back(
                last.position() + heading_dir(last.heading) *
                                      (traj.forward_speed * traj.time_step));
            continue;
        }
        // A collision beyond the horizon only truncates the candidate; the
        // scoring terms see the shorter reachable end pose.
        TrajectoryCandidate scored = cand;
        scored.collided = false;
        const auto cost =
            score_candidate(scored, path, goal, weights, source, traj.max_path_length);
        if (!plan.selected || *cost < plan.cost) {
            plan.selected = std::move(scored);
            plan.cost = *cost;
        }
    }
    return plan;
}

struct NoObstacles {
    [[nodiscard]] double clearance(const Vec2&) const {
        return std::numeric_limits<double>::infinity();
    }
};

}  // namespace detail

/// One local planning invocation. The obstacle source is the planner's own
/// world view: the occupancy distance field for Cartesian-memory planners,
/// the current scan's endpoints for perception-space ones.
template <ClearanceSource S>
[[nodiscard]] LocalPlan plan_local(const Pose2D& pose, const DepthScan& scan,
                                   const std::vector<Vec2>& path, const Vec2& goal,
                                   const PlannerSpec& spec, const TrajectoryConfig& traj,
                                   const CostWeights& weights, const S& source,
                                   double reject_radius, double goal_cutoff = 0.5) {
    const Vec2 local_goal = local_goal_on_path(path, pose.position(), weights.path_lookahead, goal);
    const double goal_angle = distance(local_goal, pose.position()) > 0.0
                                  ? goal_departure_angle(pose, local_goal, traj.angle_range)
                                  : 0.0;

    switch (spec.algo) {
        case PlannerAlgo::ExhaustiveSearch: {
            std::vector<double> angles(static_cast<std::size_t>(spec.exhaustive_candidates));
            for (int i = 0; i < spec.exhaustive_candidates; ++i) {
                angles[static_cast<std::size_t>(i)] =
                    traj.angle_range *
                    (2.0 * i / static_cast<double>(spec.exhaustive_candidates - 1) - 1.0);
            }
            return detail::plan_scored_angles(pose, angles, traj, path, goal, weights, source,
                                              reject_radius, goal_cutoff);
        }
        case PlannerAlgo::LearnedCartesian:
        case PlannerAlgo::LearnedPerceptionSpace: {
            if (!spec.model) throw std::logic_error("plan_local: learned planner needs a model");
            const std::vector<double> conf =
                predict_confidences(spec.model->params, scan, spec.model->stats);
            const std::vector<double> grid_angles = angle_grid(traj);
            CandidateSet set;
            if (spec.sampler.mode == SamplerMode::ToGoal) {
                set = select_top_k(conf, grid_angles, goal_angle, spec.sampler.k);
                set = to_goal_augment(set, conf, traj, goal_angle);
            } else {
                const auto weighted =
                    gaussian_goal_bias(conf, grid_angles, goal_angle, spec.sampler.bias_sigma);
                const CandidateSet ranked =
                    select_top_k(weighted, grid_angles, goal_angle, traj.angle_count);
                for (const auto& e : ranked.entries) {
                    if (static_cast<int>(set.entries.size()) >= spec.sampler.k) break;
                    bool spaced = true;
                    for (const auto& kept : set.entries) {
                        spaced = spaced && std::abs(kept.index - e.index) >= kBiasSeparationSteps;
                    }
                    if (spaced) set.entries.push_back(e);
                }
            }
            std::vector<double> angles;
            angles.reserve(set.entries.size());
            for (const auto& e : set.entries)
                angles.push_back(grid_angles[static_cast<std::size_t>(e.index)]);
            return detail::plan_scored_angles(pose, angles, traj, path, goal, weights, source,
                                              reject_radius, goal_cutoff);
        }
        case PlannerAlgo::NaiveLearned: {
            if (!spec.model) throw std::logic_error("plan_local: naive planner needs a model");
            LocalPlan plan;
            plan.evaluated = 1;
            double angle = 0.0;
            const HeadKind head = spec.model->params.head;
            if (head == HeadKind::RegressAngle || head == HeadKind::RegressAngleGoal) {
                angle = std::clamp(
                    predict_angle(spec.model->params, scan, spec.model->stats, goal_angle,
                                  traj.angle_range),
                    -traj.angle_range, traj.angle_range);
            } else {
                const std::vector<double> conf =
                    predict_confidences(spec.model->params, scan, spec.model->stats);
                const std::vector<double> grid_angles = angle_grid(traj);
                const auto weighted =
                    gaussian_goal_bias(conf, grid_angles, goal_angle, spec.sampler.bias_sigma);
                const CandidateSet top = select_top_k(weighted, grid_angles, goal_angle, 1);
                angle = grid_angles[static_cast<std::size_t>(top.entries.front().index)];
            }
            // Executed without scene analysis: no collision check, no scoring.
            plan.selected =
                rollout_candidate(pose, angle, traj, detail::NoObstacles{}, traj.robot_radius);
            return plan;
        }
    }
    return {};
}

namespace detail {

/// Follow the committed departure angle at constant speed for one control
/// step: finish the turn phase first, then drive straight.
inline void advance_exec(Pose2D& pose, double target_heading, double dt, double speed,
                         double max_yaw) {
    const double remaining = wrap_angle(target_heading - pose.heading);
    const double turn_time = std::abs(remaining) / max_yaw;
    const double yaw = remaining >= 0.0 ? max_yaw : -max_yaw;
    if (turn_time >= dt) {
        advance_arc(pose, speed * dt, yaw, speed);
    } else {
        advance_arc(pose, speed * turn_time, yaw, speed);
        pose.heading = target_heading;  // land exactly on the commanded offset
        advance_arc(pose, speed * (dt - turn_time), 0.0, speed);
    }
}

}  // namespace detail

struct EpisodeSetup {
    Pose2D start;
    Vec2 goal;
    PlannerSpec planner;
    EpisodeConfig episode;
    SensorConfig sensor;
    TrajectoryConfig trajectory;
    CostWeights weights;
    double grid_resolution{0.1};
    std::ostream* trace{nullptr};  // optional per-replan event log
};

/// Closed-loop navigation of one scene: sense, replan per the planner's
/// trigger, execute the selected trajectory, and classify the ending.
[[nodiscard]] inline TrialResult run_episode(const Scene& scene, const EpisodeSetup& setup,
                                             EpisodeDiag* diag = nullptr) {
    const bool uses_grid = setup.planner.algo == PlannerAlgo::ExhaustiveSearch ||
                           setup.planner.algo == PlannerAlgo::LearnedCartesian;
    const bool perception = setup.planner.algo == PlannerAlgo::LearnedPerceptionSpace;
    const bool naive = setup.planner.algo == PlannerAlgo::NaiveLearned;
    const double dt = setup.episode.control_step;
    const TrajectoryConfig& traj = setup.trajectory;
    const double reject_radius = traj.robot_radius + (uses_grid ? kGridSampleSlack : 0.0);

    OccupancyGrid grid(scene.bounds, setup.grid_resolution);
    // Wedge marks from GlobalReplan recovery: they steer the global planner
    // away from corridors the local family cannot enter, but must not poison
    // local collision checking, so they live outside the sensed grid.
    OccupancyGrid recovery_marks(scene.bounds, setup.grid_resolution);
    bool have_marks = false;
    GridSource source_grid;
    auto planning_grid = [&]() -> OccupancyGrid {
        OccupancyGrid merged;
        merged.resolution = grid.resolution;
        merged.origin = grid.origin;
        merged.nx = grid.nx;
        merged.ny = grid.ny;
        merged.cells = grid.cells;
        if (have_marks) {
            for (std::size_t i = 0; i < merged.cells.size(); ++i) {
                if (recovery_marks.cells[i] == CellState::Occupied)
                    merged.cells[i] = CellState::Occupied;
            }
        }
        return merged;
    };
    std::vector<Vec2> path;
    Pose2D pose = setup.start;

    TrialResult result;
    std::set<int> ever_visible;
    std::set<int> visible_at_plan;
    std::vector<int> scan_hits;

    auto take_scan = [&](std::set<int>* visible) {
        DepthScan scan = raycast_scan(scene, pose, setup.sensor, &scan_hits);
        for (const int h : scan_hits) {
            if (h >= 0) {
                ever_visible.insert(h);
                if (visible) visible->insert(h);
            }
        }
        return scan;
    };

    auto finish = [&](Outcome outcome) {
        result.outcome = outcome;
        if (outcome == Outcome::Collision && diag) {
            diag->collided_obstacle = -1;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < scene.obstacles.size(); ++i) {
                const double d =
                    distance(pose.position(), scene.obstacles[i].center) - scene.obstacles[i].radius;
                if (d < best) {
                    best = d;
                    diag->collided_obstacle = static_cast<int>(i);
                }
            }
            if (scene.bounds.inner_clearance(pose.position()) < best) diag->collided_obstacle = -1;
            if (diag->collided_obstacle >= 0) {
                diag->obstacle_ever_visible = ever_visible.count(diag->collided_obstacle) > 0;
                diag->obstacle_visible_at_last_plan =
                    visible_at_plan.count(diag->collided_obstacle) > 0;
            }
        }
        return result;
    };

    bool need_replan = true;
    bool executing = false;
    double target_heading = 0.0;
    double committed_length = 0.0;
    double traveled_since_plan = 0.0;
    double last_plan_time = 0.0;
    TrajectoryCandidate committed;
    int consecutive_recoveries = 0;

    while (true) {
        if (need_replan) {
            visible_at_plan.clear();
            const DepthScan scan = take_scan(&visible_at_plan);
            if (uses_grid) {
                update_occupancy(grid, pose, scan);
                source_grid = make_grid_source(grid);
            }
            path.clear();
            if (uses_grid) {
                // Prefer a generously inflated route; fall back to the local
                // rejection radius so tight-but-usable gaps stay reachable.
                const OccupancyGrid merged = planning_grid();
                auto gp = plan_global(merged, pose.position(), setup.goal,
                                      reject_radius + kPathInflationPad);
                if (!gp) gp = plan_global(merged, pose.position(), setup.goal, reject_radius);
                if (gp) path = densify_path(gp->waypoints, kPathSpacing);
            } else {
                path = densify_path({pose.position(), setup.goal}, kPathSpacing);
            }

            LocalPlan plan;
            if (perception) {
                const PointSource source{scan_points(scan, pose)};
                plan = plan_local(pose, scan, path, setup.goal, setup.planner, traj, setup.weights,
                                  source, reject_radius, setup.episode.goal_tolerance);
            } else {
                plan = plan_local(pose, scan, path, setup.goal, setup.planner, traj, setup.weights,
                                  source_grid, reject_radius, setup.episode.goal_tolerance);
            }
            ++result.replans;
            result.candidates += plan.evaluated;
            if (setup.trace) {
                *setup.trace << "t=" << result.elapsed << " pose=(" << pose.x << "," << pose.y
                             << "," << pose.heading << ") plan="
                             << (plan.selected ? "ok" : "none") << " path=" << path.size()
                             << "\n";
            }

            if (!plan.selected) {
                if (setup.episode.recovery == RecoveryMode::Disabled) return finish(Outcome::Stuck);
                if (++consecutive_recoveries > 3) return finish(Outcome::Stuck);

                // Spin in place, folding scans into the grid as they arrive.
                auto rotate_in_place = [&](double turn) -> bool {
                    const double dir = turn >= 0.0 ? 1.0 : -1.0;
                    for (double s = 0.0; s < std::abs(turn) - 1e-9; s += traj.max_yaw_rate * dt) {
                        const double step =
                            std::min(traj.max_yaw_rate * dt, std::abs(turn) - s);
                        pose.heading = wrap_angle(pose.heading + dir * step);
                        const DepthScan spin_scan = take_scan(nullptr);
                        update_occupancy(grid, pose, spin_scan);
                        result.elapsed += dt;
                        if (result.elapsed >= setup.episode.timeout) return false;
                    }
                    return true;
                };

                if (setup.trace) {
                    *setup.trace << "  recover attempt " << consecutive_recoveries << "\n";
                }
                if (setup.episode.recovery == RecoveryMode::GlobalReplan) {
                    // Mark the wedge ahead occupied: the whole fan region the
                    // local family just failed to enter. The global planner
                    // must then route outside it instead of re-proposing a
                    // corridor the steerable fan cannot reach.
                    double frontier = 0.0;
                    for (const Vec2& p : plan.rejection_points) {
                        frontier = std::max(frontier, distance(p, pose.position()));
                    }
                    const double inner = reject_radius + kPathInflationPad + 0.3;
                    const double outer = std::max(frontier + 0.3, inner + 0.3);
                    const double half_fan = setup.sensor.fov * 0.5;
                    for (int iy = 0; iy < recovery_marks.ny; ++iy) {
                        for (int ix = 0; ix < recovery_marks.nx; ++ix) {
                            const Vec2 c = recovery_marks.cell_center(ix, iy);
                            const double d = distance(c, pose.position());
                            if (d < inner || d > outer) continue;
                            if (std::abs(body_bearing(pose, c)) > half_fan) continue;
                            recovery_marks.set(ix, iy, CellState::Occupied);
                            have_marks = true;
                        }
                    }
                    const OccupancyGrid merged = planning_grid();
                    auto gp = plan_global(merged, pose.position(), setup.goal,
                                          reject_radius + kPathInflationPad);
                    if (!gp) gp = plan_global(merged, pose.position(), setup.goal, reject_radius);
                    if (!gp) return finish(Outcome::Stuck);
                    // Face the replanned route when it leaves the steerable
                    // fan; the trajectory family cannot turn in place itself.
                    const auto fresh = densify_path(gp->waypoints, kPathSpacing);
                    const Vec2 lg = local_goal_on_path(fresh, pose.position(),
                                                       setup.weights.path_lookahead, setup.goal);
                    const double bearing = body_bearing(pose, lg);
                    if (setup.trace) {
                        *setup.trace << "  global-replan: lg=(" << lg.x << "," << lg.y
                                     << ") bearing=" << bearing << "\n";
                    }
                    if (std::abs(bearing) > traj.angle_range && !rotate_in_place(bearing))
                        return finish(Outcome::Timeout);
                    if (uses_grid) source_grid = make_grid_source(grid);
                    continue;
                }
                // Rotate360: a full turn, then face the same scene again.
                if (!rotate_in_place(2.0 * kPi)) return finish(Outcome::Timeout);
                if (uses_grid) source_grid = make_grid_source(grid);
                continue;
            }

            committed = std::move(*plan.selected);
            target_heading = wrap_angle(pose.heading + committed.departure_angle);
            committed_length = committed.poses.cumulative_length.back();
            traveled_since_plan = 0.0;
            last_plan_time = result.elapsed;
            executing = true;
            consecutive_recoveries = 0;
            need_replan = false;
        }

        detail::advance_exec(pose, target_heading, dt, traj.forward_speed, traj.max_yaw_rate);
        result.elapsed += dt;
        result.path_length += traj.forward_speed * dt;
        traveled_since_plan += traj.forward_speed * dt;

        if (scene.clearance(pose.position()) < traj.robot_radius) return finish(Outcome::Collision);
        if (distance(pose.position(), setup.goal) <= setup.episode.goal_tolerance)
            return finish(Outcome::Success);
        if (result.elapsed >= setup.episode.timeout) return finish(Outcome::Timeout);

        if (perception || naive) {
            if (traveled_since_plan >=
                setup.episode.completion_fraction * std::max(committed_length, 1e-9)) {
                need_replan = true;
            } else if (perception) {
                // Re-check the remaining committed poses against the fresh scan.
                const DepthScan now = take_scan(nullptr);
                const PointSource source{scan_points(now, pose)};
                for (std::size_t i = 0; i < committed.poses.poses.size(); ++i) {
                    if (committed.poses.cumulative_length[i] < traveled_since_plan) continue;
                    if (source.clearance(committed.poses.poses[i].position()) <
                        traj.robot_radius) {
                        need_replan = true;
                        break;
                    }
                }
            }
        } else if (result.elapsed - last_plan_time >= setup.episode.replan_period - 1e-9) {
            need_replan = true;
        }
        if (executing && traveled_since_plan >= committed_length - 1e-9) need_replan = true;
    }
}

}  // namespace navsieve
