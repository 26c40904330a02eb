#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "navsieve/planner.hpp"

namespace navsieve {

/// Models available to the benchmark, keyed by head kind.
struct ModelSet {
    std::optional<SavedModel> collision_free;
    std::optional<SavedModel> best_angle;
    std::optional<SavedModel> regress;
    std::optional<SavedModel> regress_goal;

    void add(SavedModel model) {
        switch (model.params.head) {
            case HeadKind::CollisionFree: collision_free = std::move(model); break;
            case HeadKind::BestAngle: best_angle = std::move(model); break;
            case HeadKind::RegressAngle: regress = std::move(model); break;
            case HeadKind::RegressAngleGoal: regress_goal = std::move(model); break;
        }
    }
};

inline const std::vector<std::string>& known_planner_names() {
    static const std::vector<std::string> names = {
        "exhaustive", "cartesian-togoal", "cartesian-bias", "pips-togoal",
        "pips-bias",  "naive",            "regress",        "regress-goal"};
    return names;
}

/// Map a benchmark planner name to its algorithm, sampler mode, and model.
[[nodiscard]] inline PlannerSpec resolve_planner(const std::string& name, const ModelSet& models,
                                                 const SamplerConfig& sampler) {
    auto require = [&](const std::optional<SavedModel>& m, const char* head) -> const SavedModel* {
        if (!m) throw std::runtime_error("planner '" + name + "' needs a " + head + " model file");
        return &*m;
    };
    PlannerSpec spec;
    spec.sampler = sampler;
    if (name == "exhaustive") {
        spec.algo = PlannerAlgo::ExhaustiveSearch;
        return spec;
    }
    if (name == "cartesian-togoal" || name == "cartesian-bias" || name == "pips-togoal" ||
        name == "pips-bias") {
        spec.algo = name.rfind("cartesian", 0) == 0 ? PlannerAlgo::LearnedCartesian
                                                    : PlannerAlgo::LearnedPerceptionSpace;
        spec.sampler.mode = name.find("togoal") != std::string::npos ? SamplerMode::ToGoal
                                                                     : SamplerMode::GaussianBias;
        spec.model = require(models.collision_free, "collision-free");
        return spec;
    }
    if (name == "naive") {
        spec.algo = PlannerAlgo::NaiveLearned;
        spec.sampler.mode = SamplerMode::NaiveArgmax;
        spec.model = require(models.best_angle, "best-angle");
        return spec;
    }
    if (name == "regress") {
        spec.algo = PlannerAlgo::NaiveLearned;
        spec.model = require(models.regress, "regress");
        return spec;
    }
    if (name == "regress-goal") {
        spec.algo = PlannerAlgo::NaiveLearned;
        spec.model = require(models.regress_goal, "regress-goal");
        return spec;
    }
    throw std::runtime_error("unknown planner name: " + name);
}

enum class ScenarioKind { BarrelForest, CandidateSweep, SectorWorld, Recovery };

[[nodiscard]] inline std::string scenario_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::BarrelForest: return "barrel-forest";
        case ScenarioKind::CandidateSweep: return "sweep";
        case ScenarioKind::SectorWorld: return "sector";
        case ScenarioKind::Recovery: return "recovery";
    }
    return "?";
}

struct ScenarioConfig {
    ScenarioKind kind{ScenarioKind::BarrelForest};

    // Barrel forest: 10x6 m world, goal 8 m forward, 50 scenes per count.
    Rect world_bounds{{0.0, 0.0}, {10.0, 6.0}};
    Pose2D start{1.0, 3.0, 0.0};
    double goal_forward{8.0};
    std::vector<int> barrel_counts{3, 5, 7};
    int trials{50};
    double obstacle_radius{0.28};

    // Candidate sweep: fixed barrel count, varying k, denser spawn region.
    std::vector<int> k_values{2, 3, 5, 7};
    int sweep_barrels{5};
    bool dense_spawn{true};

    // Sector world.
    std::string world_file;
    int sector_pairs{35};

    // Recovery rerun: base sweep k, then failed trials with recovery on.
    int recovery_k{7};

    std::vector<std::string> planners{"exhaustive",    "cartesian-togoal", "cartesian-bias",
                                      "pips-togoal",   "pips-bias",        "naive",
                                      "regress",       "regress-goal"};
    std::uint64_t base_seed{1};

    SamplerConfig sampler{};
    SensorConfig sensor{};
    TrajectoryConfig trajectory{};
    CostWeights weights{};
    EpisodeConfig episode{};
    double grid_resolution{0.1};
};

struct ResultRow {
    std::string scenario;
    std::string setting;
    std::string planner;
    int trial{0};
    std::uint64_t seed{0};
    std::string outcome;
    double time_s{0.0};
    double path_m{0.0};
    long candidates{0};
    long replans{0};
};

using ResultTable = std::vector<ResultRow>;

inline constexpr const char* kResultCsvHeader =
    "scenario,setting,planner,trial,seed,outcome,time_s,path_m,candidates,replans";

[[nodiscard]] inline std::string format_row(const ResultRow& r) {
    char num[64];
    std::string line;
    line += r.scenario;
    line += ',';
    line += r.setting;
    line += ',';
    line += r.planner;
    line += ',';
    line += std::to_string(r.trial);
    line += ',';
    line += std::to_string(r.seed);
    line += ',';
    line += r.outcome;
    std::snprintf(num, sizeof(num), ",%.3f,%.3f", r.time_s, r.path_m);
    line += num;
    line += ',';
    line += std::to_string(r.candidates);
    line += ',';
    line += std::to_string(r.replans);
    return line;
}

inline void write_result_csv(const ResultTable& table, std::ostream& out) {
    out << kResultCsvHeader << "\n";
    for (const auto& r : table) out << format_row(r) << "\n";
}

inline void write_result_csv(const ResultTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_result_csv(table, out);
}

/// Read a results CSV. A malformed final line (torn by an interrupted run)
/// is dropped; malformed interior lines are errors.
[[nodiscard]] inline ResultTable read_result_csv(std::istream& in,
                                                 const std::string& origin = "<stream>") {
    ResultTable table;
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line) || line != kResultCsvHeader)
        throw std::runtime_error(origin + ":1: missing or wrong results header");
    ++line_no;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            fields.push_back(line.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        // A torn final line (interrupted write) has no trailing newline, so
        // the stream hits EOF while delivering it.
        const bool torn = in.eof();
        auto bad = [&]() -> ResultTable& {
            if (torn) return table;  // drop a torn final line
            throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                     ": malformed results row");
        };
        if (fields.size() != 10) {
            bad();
            break;
        }
        try {
            ResultRow r;
            r.scenario = fields[0];
            r.setting = fields[1];
            r.planner = fields[2];
            r.trial = std::stoi(fields[3]);
            r.seed = std::stoull(fields[4]);
            r.outcome = fields[5];
            r.time_s = std::stod(fields[6]);
            r.path_m = std::stod(fields[7]);
            r.candidates = std::stol(fields[8]);
            r.replans = std::stol(fields[9]);
            table.push_back(std::move(r));
        } catch (const std::exception&) {
            bad();
            break;
        }
    }
    return table;
}

[[nodiscard]] inline ResultTable read_result_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open results file: " + path);
    return read_result_csv(in, path);
}

namespace detail {

struct TrialJob {
    std::string setting;
    std::string planner;
    int trial{0};
    std::uint64_t seed{0};
    Scene scene;
    Pose2D start;
    Vec2 goal;
    PlannerSpec spec;
    RecoveryMode recovery{RecoveryMode::Disabled};
    int k_override{0};  // 0 keeps the configured k
};

[[nodiscard]] inline ResultRow run_job(const TrialJob& job, const ScenarioConfig& cfg,
                                       const std::string& scenario) {
    EpisodeSetup setup;
    setup.start = job.start;
    setup.goal = job.goal;
    setup.planner = job.spec;
    if (job.k_override > 0) setup.planner.sampler.k = job.k_override;
    setup.episode = cfg.episode;
    setup.episode.recovery = job.recovery;
    setup.sensor = cfg.sensor;
    setup.trajectory = cfg.trajectory;
    setup.weights = cfg.weights;
    setup.grid_resolution = cfg.grid_resolution;

    const TrialResult res = run_episode(job.scene, setup);
    ResultRow row;
    row.scenario = scenario;
    row.setting = job.setting;
    row.planner = job.planner;
    row.trial = job.trial;
    row.seed = job.seed;
    row.outcome = outcome_name(res.outcome);
    row.time_s = res.elapsed;
    row.path_m = res.path_length;
    row.candidates = res.candidates;
    row.replans = res.replans;
    return row;
}

[[nodiscard]] inline WorldSpec barrel_spec(const ScenarioConfig& cfg, int barrels,
                                           std::uint64_t seed, bool dense) {
    WorldSpec spec;
    spec.bounds = cfg.world_bounds;
    spec.start = cfg.start;
    spec.spawn_region = dense ? Rect{{1.0, -3.0}, {4.0, 3.0}} : Rect{{1.0, -3.0}, {5.0, 3.0}};
    spec.obstacle_count = barrels;
    spec.obstacle_radius = cfg.obstacle_radius;
    spec.seed = seed;
    return spec;
}

}  // namespace detail

/// Run a scenario. Rows already present in `existing` (same setting,
/// planner, trial) are reused instead of re-run, which makes interrupted
/// runs resumable; `sink` sees every row in canonical order as it becomes
/// available.
[[nodiscard]] inline ResultTable run_scenario(
    const ScenarioConfig& cfg, const ModelSet& models, const ResultTable& existing = {},
    const std::function<void(const ResultRow&)>& sink = nullptr) {
    const std::string scenario = scenario_name(cfg.kind);
    std::map<std::string, const ResultRow*> done;
    for (const auto& r : existing) {
        if (r.scenario == scenario) done[r.setting + '\n' + r.planner + '\n' + std::to_string(r.trial)] = &r;
    }

    ResultTable table;
    auto emit = [&](const detail::TrialJob& job) {
        const std::string key = job.setting + '\n' + job.planner + '\n' + std::to_string(job.trial);
        if (const auto it = done.find(key); it != done.end()) {
            table.push_back(*it->second);
        } else {
            table.push_back(detail::run_job(job, cfg, scenario));
        }
        if (sink) sink(table.back());
        return table.back();
    };

    const Vec2 forward_goal =
        Vec2{cfg.start.x, cfg.start.y} + heading_dir(cfg.start.heading) * cfg.goal_forward;

    switch (cfg.kind) {
        case ScenarioKind::BarrelForest: {
            for (const int barrels : cfg.barrel_counts) {
                const std::string setting = "barrels=" + std::to_string(barrels);
                for (int trial = 0; trial < cfg.trials; ++trial) {
                    const std::uint64_t seed =
                        cfg.base_seed + static_cast<std::uint64_t>(barrels) * 100000 +
                        static_cast<std::uint64_t>(trial);
                    const Scene scene =
                        generate_scene(detail::barrel_spec(cfg, barrels, seed, false));
                    for (const auto& name : cfg.planners) {
                        detail::TrialJob job;
                        job.setting = setting;
                        job.planner = name;
                        job.trial = trial;
                        job.seed = seed;
                        job.scene = scene;
                        job.start = cfg.start;
                        job.goal = forward_goal;
                        job.spec = resolve_planner(name, models, cfg.sampler);
                        job.recovery = cfg.episode.recovery;
                        emit(job);
                    }
                }
            }
            break;
        }
        case ScenarioKind::CandidateSweep: {
            const std::string planner = cfg.planners.empty() ? "cartesian-bias" : cfg.planners.front();
            for (const int k : cfg.k_values) {
                const std::string setting = "k=" + std::to_string(k);
                for (int trial = 0; trial < cfg.trials; ++trial) {
                    const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(trial);
                    const Scene scene = generate_scene(
                        detail::barrel_spec(cfg, cfg.sweep_barrels, seed, cfg.dense_spawn));
                    detail::TrialJob job;
                    job.setting = setting;
                    job.planner = planner;
                    job.trial = trial;
                    job.seed = seed;
                    job.scene = scene;
                    job.start = cfg.start;
                    job.goal = forward_goal;
                    job.spec = resolve_planner(planner, models, cfg.sampler);
                    job.recovery = cfg.episode.recovery;
                    job.k_override = k;
                    emit(job);
                }
            }
            break;
        }
        case ScenarioKind::SectorWorld: {
            if (cfg.world_file.empty())
                throw std::runtime_error("sector scenario needs --world-file");
            const SectorWorld world = load_world_file(cfg.world_file);
            if (world.sectors.size() < 2)
                throw std::runtime_error("sector scenario needs at least two sectors");
            // Aggregate per world, the way sector results are reported.
            std::string world_name = cfg.world_file;
            if (const auto slash = world_name.find_last_of('/'); slash != std::string::npos)
                world_name.erase(0, slash + 1);
            if (const auto dot = world_name.find_last_of('.'); dot != std::string::npos)
                world_name.erase(dot);
            for (int trial = 0; trial < cfg.sector_pairs; ++trial) {
                const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(trial);
                std::mt19937_64 rng(seed);
                std::uniform_int_distribution<std::size_t> pick(0, world.sectors.size() - 1);
                const std::size_t a = pick(rng);
                std::size_t b = pick(rng);
                while (b == a) b = pick(rng);
                auto sample_in = [&](const Rect& r) {
                    std::uniform_real_distribution<double> ux(r.lo.x, r.hi.x);
                    std::uniform_real_distribution<double> uy(r.lo.y, r.hi.y);
                    const double x = ux(rng);
                    return Vec2{x, uy(rng)};
                };
                const Vec2 start_pos = sample_in(world.sectors[a].rect);
                const Vec2 goal_pos = sample_in(world.sectors[b].rect);
                const double heading =
                    std::atan2(goal_pos.y - start_pos.y, goal_pos.x - start_pos.x);
                const std::string setting = world_name;
                for (const auto& name : cfg.planners) {
                    detail::TrialJob job;
                    job.setting = setting;
                    job.planner = name;
                    job.trial = trial;
                    job.seed = seed;
                    job.scene = world.scene;
                    job.start = make_pose(start_pos.x, start_pos.y, heading);
                    job.goal = goal_pos;
                    job.spec = resolve_planner(name, models, cfg.sampler);
                    job.recovery = cfg.episode.recovery;
                    emit(job);
                }
            }
            break;
        }
        case ScenarioKind::Recovery: {
            // Base pass: the sweep configuration at one k, recovery off.
            std::vector<int> failed;
            for (int trial = 0; trial < cfg.trials; ++trial) {
                const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(trial);
                const Scene scene = generate_scene(
                    detail::barrel_spec(cfg, cfg.sweep_barrels, seed, cfg.dense_spawn));
                detail::TrialJob job;
                job.setting = "base";
                job.planner = "cartesian-bias";
                job.trial = trial;
                job.seed = seed;
                job.scene = scene;
                job.start = cfg.start;
                job.goal = forward_goal;
                job.spec = resolve_planner(job.planner, models, cfg.sampler);
                job.recovery = RecoveryMode::Disabled;
                job.k_override = cfg.recovery_k;
                const ResultRow row = emit(job);
                if (row.outcome != "success") failed.push_back(trial);
            }
            // Rerun every failure with each recovery behavior.
            struct Pass {
                const char* setting;
                const char* planner;
                RecoveryMode mode;
            };
            const Pass passes[2] = {{"global-replan", "cartesian-bias", RecoveryMode::GlobalReplan},
                                    {"rotate360", "pips-bias", RecoveryMode::Rotate360}};
            for (const auto& pass : passes) {
                for (const int trial : failed) {
                    const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(trial);
                    const Scene scene = generate_scene(
                        detail::barrel_spec(cfg, cfg.sweep_barrels, seed, cfg.dense_spawn));
                    detail::TrialJob job;
                    job.setting = pass.setting;
                    job.planner = pass.planner;
                    job.trial = trial;
                    job.seed = seed;
                    job.scene = scene;
                    job.start = cfg.start;
                    job.goal = forward_goal;
                    job.spec = resolve_planner(job.planner, models, cfg.sampler);
                    job.recovery = pass.mode;
                    job.k_override = cfg.recovery_k;
                    emit(job);
                }
            }
            break;
        }
    }
    return table;
}

/// Per (scenario, setting, planner) aggregate, in first-appearance order.
struct SummaryRow {
    std::string scenario;
    std::string setting;
    std::string planner;
    int trials{0};
    int successes{0};
    double success_rate_pct{0.0};  // two decimals
    double mean_time_s{0.0};       // over successful trials
    double mean_candidates{0.0};
    double mean_replans{0.0};
};

[[nodiscard]] inline std::vector<SummaryRow> aggregate(const ResultTable& table) {
    if (table.empty()) throw std::invalid_argument("aggregate: empty result table");
    std::vector<SummaryRow> rows;
    std::map<std::string, std::size_t> index;
    std::vector<double> time_sums;
    std::vector<double> cand_sums;
    std::vector<double> replan_sums;
    for (const auto& r : table) {
        const std::string key = r.scenario + '\n' + r.setting + '\n' + r.planner;
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, rows.size()).first;
            rows.push_back({r.scenario, r.setting, r.planner, 0, 0, 0.0, 0.0, 0.0, 0.0});
            time_sums.push_back(0.0);
            cand_sums.push_back(0.0);
            replan_sums.push_back(0.0);
        }
        SummaryRow& s = rows[it->second];
        ++s.trials;
        if (r.outcome == "success") {
            ++s.successes;
            time_sums[it->second] += r.time_s;
        }
        cand_sums[it->second] += static_cast<double>(r.candidates);
        replan_sums[it->second] += static_cast<double>(r.replans);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        SummaryRow& s = rows[i];
        s.success_rate_pct =
            std::round(10000.0 * s.successes / static_cast<double>(s.trials)) / 100.0;
        s.mean_time_s = s.successes > 0 ? time_sums[i] / s.successes : 0.0;
        s.mean_candidates = cand_sums[i] / s.trials;
        s.mean_replans = replan_sums[i] / s.trials;
    }
    return rows;
}

}  // namespace navsieve
