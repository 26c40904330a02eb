#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "navsieve/planner.hpp"

namespace navsieve {

/// Every tunable the CLI exposes through --config key=value files.
struct RunParams {
    SensorConfig sensor;
    TrajectoryConfig trajectory;
    CostWeights weights;
    SamplerConfig sampler;
    EpisodeConfig episode;
    double grid_resolution{0.1};
    double obstacle_radius{0.28};
};

/// Apply `key = value` lines ('#' comments allowed) onto defaults.
/// Unknown keys are errors so typos do not silently vanish.
inline void apply_config(std::istream& in, RunParams& params,
                         const std::string& origin = "<config>") {
    std::map<std::string, std::function<void(double)>> setters = {
        {"sensor.beams", [&](double v) { params.sensor.beam_count = static_cast<int>(v); }},
        {"sensor.fov", [&](double v) { params.sensor.fov = v; }},
        {"sensor.max_range", [&](double v) { params.sensor.max_range = v; }},
        {"sensor.min_range", [&](double v) { params.sensor.min_range = v; }},
        {"trajectory.angles", [&](double v) { params.trajectory.angle_count = static_cast<int>(v); }},
        {"trajectory.angle_range", [&](double v) { params.trajectory.angle_range = v; }},
        {"trajectory.speed", [&](double v) { params.trajectory.forward_speed = v; }},
        {"trajectory.max_yaw_rate", [&](double v) { params.trajectory.max_yaw_rate = v; }},
        {"trajectory.time_step", [&](double v) { params.trajectory.time_step = v; }},
        {"trajectory.max_path_length", [&](double v) { params.trajectory.max_path_length = v; }},
        {"trajectory.robot_radius", [&](double v) { params.trajectory.robot_radius = v; }},
        {"weights.goal_heading", [&](double v) { params.weights.goal_heading = v; }},
        {"weights.path_heading", [&](double v) { params.weights.path_heading = v; }},
        {"weights.path_distance", [&](double v) { params.weights.path_distance = v; }},
        {"weights.goal_distance", [&](double v) { params.weights.goal_distance = v; }},
        {"weights.obstacle", [&](double v) { params.weights.obstacle = v; }},
        {"weights.nose_offset", [&](double v) { params.weights.nose_offset = v; }},
        {"weights.safe_clearance", [&](double v) { params.weights.safe_clearance = v; }},
        {"weights.path_lookahead", [&](double v) { params.weights.path_lookahead = v; }},
        {"sampler.k", [&](double v) { params.sampler.k = static_cast<int>(v); }},
        {"sampler.bias_sigma", [&](double v) { params.sampler.bias_sigma = v; }},
        {"episode.replan_period", [&](double v) { params.episode.replan_period = v; }},
        {"episode.completion_fraction", [&](double v) { params.episode.completion_fraction = v; }},
        {"episode.control_step", [&](double v) { params.episode.control_step = v; }},
        {"episode.goal_tolerance", [&](double v) { params.episode.goal_tolerance = v; }},
        {"episode.timeout", [&](double v) { params.episode.timeout = v; }},
        {"grid.resolution", [&](double v) { params.grid_resolution = v; }},
        {"world.obstacle_radius", [&](double v) { params.obstacle_radius = v; }},
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string key, eq;
        double value = 0.0;
        std::istringstream ss(line);
        if (!(ss >> key)) continue;
        // Accept both "key = value" and "key=value".
        const auto eq_pos = key.find('=');
        if (eq_pos != std::string::npos) {
            const std::string rest = key.substr(eq_pos + 1);
            key.erase(eq_pos);
            if (!rest.empty()) {
                value = std::stod(rest);
            } else if (!(ss >> value)) {
                throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                         ": missing value");
            }
        } else {
            if (!(ss >> eq) || eq != "=" || !(ss >> value))
                throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                         ": expected key = value");
        }
        const auto it = setters.find(key);
        if (it == setters.end())
            throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                     ": unknown config key '" + key + "'");
        it->second(value);
    }
}

inline void apply_config_file(const std::string& path, RunParams& params) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    apply_config(in, params, path);
}

}  // namespace navsieve
