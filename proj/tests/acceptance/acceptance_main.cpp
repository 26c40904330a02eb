// Acceptance suite: runs the full pipeline (dataset, training, benchmarks)
// and prints one PASS/FAIL line per criterion, plus a few labeled extra
// checks. Exit code is the number of failures.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "navsieve/bench.hpp"
#include "navsieve/dataset.hpp"
#include "navsieve/train.hpp"

namespace fs = std::filesystem;
using namespace navsieve;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
    std::printf("%-4s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

// ---------------------------------------------------------------------------
// criterion 1: coarse labeling vs a 10x finer rollout, 100 scenes
// ---------------------------------------------------------------------------
void criterion_labeling_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const TrajectoryConfig traj;
    TrajectoryConfig fine = traj;
    fine.time_step = traj.time_step / 10.0;
    const auto angles = angle_grid(traj);

    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        WorldSpec spec;
        spec.obstacle_count = 3;
        spec.seed = 9000 + seed;
        const Scene scene = generate_scene(spec);
        const DistanceLabels labels = label_scene(scene, {}, traj);
        for (std::size_t i = 0; i < angles.size(); ++i) {
            const double ref =
                rollout_candidate({}, angles[i], fine, scene, traj.robot_radius).clear_distance;
            worst = std::max(worst, std::abs(labels.distances[i] - ref));
        }
    }
    const double elapsed = seconds_since(t0);
    report("criterion 1 (labeling oracle)", worst <= 0.05 && elapsed < 60.0,
           "max |coarse - fine| = " + fmt("%.4f", worst) + " m over 100 scenes x 51 angles, " +
               fmt("%.1f", elapsed) + " s");
}

// ---------------------------------------------------------------------------
// criterion 2: analytic gradients vs central finite differences
// ---------------------------------------------------------------------------
struct GradCase {
    ModelParams params;
    std::vector<TrainExample> examples;
    std::vector<const TrainExample*> batch;
};

GradCase make_grad_case(HeadKind head, std::uint64_t seed) {
    constexpr int kBeams = 6;
    constexpr int kAngles = 5;
    GradCase c;
    c.params = init_params(head, make_architecture(head, kBeams, kAngles, {7}), kAngles, seed);
    std::mt19937_64 rng(seed * 77 + 5);
    std::uniform_real_distribution<double> uf(-1.5, 1.5);
    std::uniform_int_distribution<int> ui(0, kAngles - 1);
    std::uniform_int_distribution<int> ub(0, 1);
    for (int s = 0; s < 3; ++s) {
        TrainExample ex;
        ex.features.resize(static_cast<std::size_t>(c.params.input_size()));
        for (auto& f : ex.features) f = uf(rng);
        ex.target_index = ui(rng);
        ex.target_angle = 0.016 * (ex.target_index - 2);
        ex.binary.resize(kAngles);
        for (auto& b : ex.binary) b = static_cast<std::uint8_t>(ub(rng));
        c.examples.push_back(std::move(ex));
    }
    for (const auto& ex : c.examples) c.batch.push_back(&ex);
    return c;
}

void criterion_gradients() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const HeadKind head : {HeadKind::RegressAngle, HeadKind::RegressAngleGoal,
                                HeadKind::BestAngle, HeadKind::CollisionFree}) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            GradCase c = make_grad_case(head, seed);
            const auto [loss, grads] = loss_and_gradients(c.params, c.batch);
            (void)loss;
            std::vector<double> analytic;
            for (const auto& block : grads.layers) {
                analytic.insert(analytic.end(), block.w.begin(), block.w.end());
                analytic.insert(analytic.end(), block.b.begin(), block.b.end());
            }
            std::vector<double*> view;
            for (auto& layer : c.params.layers) {
                for (auto& w : layer.w) view.push_back(&w);
                for (auto& b : layer.b) view.push_back(&b);
            }
            const double h = 1e-5;
            for (std::size_t i = 0; i < view.size(); ++i) {
                const double saved = *view[i];
                *view[i] = saved + h;
                const double up = loss_and_gradients(c.params, c.batch).first;
                *view[i] = saved - h;
                const double down = loss_and_gradients(c.params, c.batch).first;
                *view[i] = saved;
                const double fd = (up - down) / (2.0 * h);
                worst = std::max(worst, std::abs(fd - analytic[i]) /
                                            std::max({1e-6, std::abs(fd), std::abs(analytic[i])}));
            }
        }
    }
    const double elapsed = seconds_since(t0);
    report("criterion 2 (gradient check)", worst < 1e-4 && elapsed < 60.0,
           "max relative error " + fmt("%.2e", worst) +
               " over 4 heads x 10 cases, " + fmt("%.1f", elapsed) + " s");
}

// ---------------------------------------------------------------------------
// shared pipeline state
// ---------------------------------------------------------------------------
struct Pipeline {
    Dataset dataset;
    ModelSet models;
    fs::path dir;
    ResultTable barrel;
    ResultTable sweep;
    ResultTable recovery;
};

void criterion_classifier(Pipeline& pipe) {
    WorldSpec spec;  // canonical 3-obstacle data worlds
    pipe.dataset = build_dataset(spec, 10000, 1);

    const auto t0 = std::chrono::steady_clock::now();
    TrainConfig cfg;
    const TrainResult cf = train(pipe.dataset, HeadKind::CollisionFree, cfg);
    const double train_time = seconds_since(t0);
    const double accuracy = cf.eval_accuracy.back();
    report("criterion 3 (classifier quality)",
           accuracy >= 0.90 && train_time < 900.0,
           "held-out per-angle accuracy " + fmt("%.4f", accuracy) + " after " +
               std::to_string(cf.epochs) + " epochs, trained in " + fmt("%.0f", train_time) +
               " s");

    // The 5-epoch moving average of training loss should not climb (small
    // slack for plateau wiggle).
    {
        bool monotone = true;
        double prev = 0.0;
        for (std::size_t e = 4; e < cf.train_loss.size(); ++e) {
            double avg = 0.0;
            for (std::size_t j = e - 4; j <= e; ++j) avg += cf.train_loss[j];
            avg /= 5.0;
            if (e > 4 && avg > prev * 1.05 + 1e-9) monotone = false;
            prev = avg;
        }
        report("extra (loss moving average)", monotone,
               "5-epoch moving average of training loss is non-increasing over " +
                   std::to_string(cf.epochs) + " epochs");
    }
    pipe.models.add(cf.model);

    // Behavioral spot checks on the trained classifier.
    {
        const SavedModel& model = *pipe.models.collision_free;
        Scene empty;
        empty.bounds = spec.bounds;
        const DepthScan open_scan = raycast_scan(empty, {}, pipe.dataset.sensor);
        const auto open_conf = predict_confidences(model.params, open_scan, model.stats);
        double open_mean = 0.0;
        for (const double c : open_conf) open_mean += c;
        open_mean /= static_cast<double>(open_conf.size());

        Scene wall;
        wall.bounds = spec.bounds;
        for (double y = -3.0; y <= 3.0; y += 0.56) wall.obstacles.push_back({{1.28, y}, 0.28});
        const DepthScan wall_scan = raycast_scan(wall, {}, pipe.dataset.sensor);
        const auto wall_conf = predict_confidences(model.params, wall_scan, model.stats);
        double wall_mean = 0.0;
        for (const double c : wall_conf) wall_mean += c;
        wall_mean /= static_cast<double>(wall_conf.size());

        report("extra (trained-model behavior)", open_mean >= 0.8 && wall_mean <= 0.3,
               "mean confidence: empty scene " + fmt("%.3f", open_mean) + " (>= 0.8), wall ahead " +
                   fmt("%.3f", wall_mean) + " (<= 0.3)");
    }

    // Remaining heads feed the planner comparison.
    pipe.models.add(train(pipe.dataset, HeadKind::BestAngle, cfg).model);
    pipe.models.add(train(pipe.dataset, HeadKind::RegressAngle, cfg).model);
    pipe.models.add(train(pipe.dataset, HeadKind::RegressAngleGoal, cfg).model);
}

std::map<std::string, std::pair<int, int>> pooled(const ResultTable& table) {
    std::map<std::string, std::pair<int, int>> by_planner;  // planner -> (trials, successes)
    for (const auto& r : table) {
        auto& p = by_planner[r.planner];
        ++p.first;
        p.second += r.outcome == "success" ? 1 : 0;
    }
    return by_planner;
}

double rate(const std::pair<int, int>& p) { return 100.0 * p.second / std::max(1, p.first); }

void criterion_sampling_budget(Pipeline& pipe) {
    const auto t0 = std::chrono::steady_clock::now();
    ScenarioConfig cfg;
    pipe.barrel = run_scenario(cfg, pipe.models);
    const double elapsed = seconds_since(t0);

    const auto by_planner = pooled(pipe.barrel);
    const double exhaustive = rate(by_planner.at("exhaustive"));
    const double bias = rate(by_planner.at("cartesian-bias"));

    bool budget_ok = true;
    double worst_learned = 0.0;
    for (const auto& r : pipe.barrel) {
        if (r.planner == "exhaustive") {
            budget_ok = budget_ok && r.candidates == 200 * r.replans;
        } else if (r.planner.rfind("cartesian", 0) == 0 || r.planner.rfind("pips", 0) == 0) {
            const double per = static_cast<double>(r.candidates) / std::max(1L, r.replans);
            worst_learned = std::max(worst_learned, per);
            budget_ok = budget_ok && per <= 6.0 + 1e-9;
        }
    }

    const double gap = std::abs(exhaustive - bias);
    report("criterion 4 (sampling budget)",
           gap <= 10.0 && budget_ok && 6.0 / 200.0 <= 1.0 / 33.0 && elapsed < 1800.0,
           "success exhaustive " + fmt("%.2f", exhaustive) + "% vs cartesian-bias " +
               fmt("%.2f", bias) + "% (gap " + fmt("%.2f", gap) +
               " <= 10); candidates/replan: learned <= " + fmt("%.2f", worst_learned) +
               " (<= 6) vs 200; " + fmt("%.0f", elapsed) + " s");
}

void criterion_candidate_sweep(Pipeline& pipe) {
    ScenarioConfig cfg;
    cfg.kind = ScenarioKind::CandidateSweep;
    cfg.planners = {"cartesian-bias"};
    pipe.sweep = run_scenario(cfg, pipe.models);

    std::map<int, std::pair<int, int>> by_k;
    for (const auto& r : pipe.sweep) {
        auto& p = by_k[std::stoi(r.setting.substr(2))];
        ++p.first;
        p.second += r.outcome == "success" ? 1 : 0;
    }
    const double s2 = rate(by_k.at(2)), s3 = rate(by_k.at(3));
    const double s5 = rate(by_k.at(5)), s7 = rate(by_k.at(7));
    report("criterion 5 (candidate sweep)", s2 < s3 && std::abs(s5 - s7) <= 10.0,
           "success " + fmt("%.0f", s2) + "/" + fmt("%.0f", s3) + "/" + fmt("%.0f", s5) + "/" +
               fmt("%.0f", s7) + "% at k=2/3/5/7 (k2 < k3, |k5 - k7| <= 10)");
}

void criterion_planner_ordering(Pipeline& pipe) {
    const auto by_planner = pooled(pipe.barrel);
    const double naive = rate(by_planner.at("naive"));
    const std::vector<std::string> scored = {"exhaustive", "cartesian-togoal", "cartesian-bias",
                                             "pips-togoal", "pips-bias"};
    double min_scored = 100.0;
    for (const auto& name : scored) min_scored = std::min(min_scored, rate(by_planner.at(name)));
    double min_cf = 100.0;
    for (const auto& name : {"cartesian-togoal", "cartesian-bias", "pips-togoal", "pips-bias"})
        min_cf = std::min(min_cf, rate(by_planner.at(name)));
    const double regress =
        std::max(rate(by_planner.at("regress")), rate(by_planner.at("regress-goal")));

    report("criterion 6 (planner ordering)", naive < min_scored && regress < min_cf,
           "naive " + fmt("%.2f", naive) + "% < min(scored planners) " + fmt("%.2f", min_scored) +
               "%; regressors <= " + fmt("%.2f", regress) + "% < min(collision-free planners) " +
               fmt("%.2f", min_cf) + "%");
}

void criterion_recovery(Pipeline& pipe) {
    ScenarioConfig cfg;
    cfg.kind = ScenarioKind::Recovery;
    pipe.recovery = run_scenario(cfg, pipe.models);

    std::map<int, std::string> base, replan, rotate;
    for (const auto& r : pipe.recovery) {
        if (r.setting == "base") base[r.trial] = r.outcome;
        if (r.setting == "global-replan") replan[r.trial] = r.outcome;
        if (r.setting == "rotate360") rotate[r.trial] = r.outcome;
    }
    int stuck = 0, converted = 0, rotated = 0;
    for (const auto& [trial, outcome] : base) {
        if (outcome != "stuck") continue;
        ++stuck;
        converted += replan.at(trial) == "success" ? 1 : 0;
        rotated += rotate.at(trial) == "success" ? 1 : 0;
    }
    const bool pass = stuck > 0 && converted * 4 >= stuck && rotated < converted;
    report("criterion 7 (recovery effect)", pass,
           "global-replan converts " + std::to_string(converted) + "/" + std::to_string(stuck) +
               " stuck (needs >= 25%); rotate360 on the perception-space planner converts " +
               std::to_string(rotated) + " (strictly fewer)");
}

void criterion_determinism(Pipeline& pipe) {
    const fs::path model_path = pipe.dir / "cf.txt";
    save_model(*pipe.models.collision_free, model_path.string());

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    auto bench = [&](const fs::path& out) {
        const std::string cmd = std::string(NAVSIEVE_CLI_PATH) +
                                " bench --scenario barrel-forest --trials 3 --barrels 3 --seed 11" +
                                " --planner exhaustive --planner cartesian-bias --model " +
                                model_path.string() + " --out " + out.string() +
                                " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    const fs::path a = pipe.dir / "det_a.csv";
    const fs::path b = pipe.dir / "det_b.csv";
    fs::remove(a);
    fs::remove(b);
    const bool ran = bench(a) == 0 && bench(b) == 0;
    const std::string text = slurp(a);
    report("criterion 8 (determinism)", ran && !text.empty() && text == slurp(b),
           ran ? "benchmark CLI rerun with identical flags/seed is byte-identical ("
                     + std::to_string(text.size()) + " bytes)"
               : "CLI invocation failed");
}

// Safety sweep: scored planners must never collide with an obstacle that was
// visible at the final replan before impact.
void extra_safety(Pipeline& pipe) {
    ScenarioConfig cfg;
    int collisions = 0, violations = 0, episodes = 0;
    for (const int barrels : cfg.barrel_counts) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const std::uint64_t seed = cfg.base_seed +
                                       static_cast<std::uint64_t>(barrels) * 100000 +
                                       static_cast<std::uint64_t>(trial);
            WorldSpec spec;
            spec.bounds = cfg.world_bounds;
            spec.start = cfg.start;
            spec.obstacle_count = barrels;
            spec.seed = seed;
            const Scene scene = generate_scene(spec);
            for (const char* name :
                 {"exhaustive", "cartesian-togoal", "cartesian-bias", "pips-togoal", "pips-bias"}) {
                EpisodeSetup setup;
                setup.start = cfg.start;
                setup.goal = {9.0, 3.0};
                setup.planner = resolve_planner(name, pipe.models, cfg.sampler);
                EpisodeDiag diag;
                const TrialResult res = run_episode(scene, setup, &diag);
                ++episodes;
                if (res.outcome == Outcome::Collision) {
                    ++collisions;
                    violations += diag.obstacle_visible_at_last_plan ? 1 : 0;
                }
            }
        }
    }
    report("extra (collision safety)", violations == 0,
           std::to_string(collisions) + " collisions over " + std::to_string(episodes) +
               " scored-planner episodes, " + std::to_string(violations) +
               " with the obstacle visible at the final replan");
}

}  // namespace

int main() {
    Pipeline pipe;
    pipe.dir = fs::temp_directory_path() / "navsieve_acceptance";
    fs::create_directories(pipe.dir);

    const auto t0 = std::chrono::steady_clock::now();
    criterion_labeling_oracle();
    criterion_gradients();
    criterion_classifier(pipe);
    criterion_sampling_budget(pipe);
    criterion_candidate_sweep(pipe);
    criterion_planner_ordering(pipe);
    criterion_recovery(pipe);
    criterion_determinism(pipe);
    extra_safety(pipe);

    std::printf("%s: %d criteria failed, total %.0f s\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                failures, seconds_since(t0));
    return failures;
}
