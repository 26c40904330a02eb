// navsieve command-line harness: dataset generation, training, evaluation,
// navigation benchmarks, and plot emission.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "navsieve/bench.hpp"
#include "navsieve/config.hpp"
#include "navsieve/dataset.hpp"
#include "navsieve/model.hpp"
#include "navsieve/plot.hpp"
#include "navsieve/train.hpp"

namespace {

using namespace navsieve;

struct CommonOpts {
    std::string config_file;
    std::uint64_t seed{1};
};

RunParams load_params(const CommonOpts& opts) {
    RunParams params;
    if (!opts.config_file.empty()) apply_config_file(opts.config_file, params);
    return params;
}

void print_summary(const std::vector<SummaryRow>& summary) {
    std::printf("%-14s %-16s %-18s %7s %9s %10s %11s %9s\n", "scenario", "setting", "planner",
                "trials", "success%", "avg_t(s)", "avg_cand", "avg_replan");
    for (const auto& s : summary) {
        std::printf("%-14s %-16s %-18s %7d %9.2f %10.2f %11.1f %9.1f\n", s.scenario.c_str(),
                    s.setting.c_str(), s.planner.c_str(), s.trials, s.success_rate_pct,
                    s.mean_time_s, s.mean_candidates, s.mean_replans);
    }
}

int cmd_gen_data(const CommonOpts& opts, const std::string& out_path, int scenes, int obstacles) {
    const RunParams params = load_params(opts);
    WorldSpec spec;
    spec.obstacle_count = obstacles;
    spec.obstacle_radius = params.obstacle_radius;
    const Dataset ds = build_dataset(spec, scenes, opts.seed, params.sensor, params.trajectory);
    save_dataset(ds, out_path);
    std::printf("wrote %zu samples to %s\n", ds.samples.size(), out_path.c_str());
    return 0;
}

int cmd_train(const CommonOpts& opts, const std::string& data_path, const std::string& head_str,
              const std::string& out_path, TrainConfig cfg) {
    const Dataset ds = load_dataset(data_path);
    const HeadKind head = parse_head(head_str);
    cfg.seed = opts.seed;
    const TrainResult result = train(ds, head, cfg);
    for (int e = 0; e < result.epochs; ++e) {
        std::printf("epoch %3d  train_loss %.6f  eval_loss %.6f  eval_acc %.4f\n", e + 1,
                    result.train_loss[static_cast<std::size_t>(e)],
                    result.eval_loss[static_cast<std::size_t>(e)],
                    result.eval_accuracy[static_cast<std::size_t>(e)]);
    }
    save_model(result.model, out_path);
    std::printf("wrote %s model to %s\n", head_name(head).c_str(), out_path.c_str());
    return 0;
}

int cmd_eval(const CommonOpts& opts, const std::string& data_path, const std::string& model_path) {
    const Dataset ds = load_dataset(data_path);
    const SavedModel model = load_model(model_path);
    const DatasetSplit split = split_dataset(ds, 0.1, opts.seed);
    std::vector<TrainExample> test;
    test.reserve(split.test.size());
    for (const Sample* s : split.test)
        test.push_back(make_example(*s, model.stats, ds.trajectory, model.params.head));
    const EvalResult res = evaluate(model.params, test);
    std::printf("head=%s held_out=%zu loss=%.6f accuracy=%.4f\n",
                head_name(model.params.head).c_str(), test.size(), res.loss, res.accuracy);
    return 0;
}

int cmd_bench(const CommonOpts& opts, ScenarioConfig cfg, const std::vector<std::string>& model_paths,
              const std::string& out_path) {
    const RunParams params = load_params(opts);
    cfg.sensor = params.sensor;
    cfg.trajectory = params.trajectory;
    cfg.weights = params.weights;
    cfg.episode.control_step = params.episode.control_step;
    cfg.episode.replan_period = params.episode.replan_period;
    cfg.episode.completion_fraction = params.episode.completion_fraction;
    cfg.episode.goal_tolerance = params.episode.goal_tolerance;
    cfg.episode.timeout = params.episode.timeout;
    cfg.sampler.k = params.sampler.k;
    cfg.sampler.bias_sigma = params.sampler.bias_sigma;
    cfg.grid_resolution = params.grid_resolution;
    cfg.obstacle_radius = params.obstacle_radius;
    cfg.base_seed = opts.seed;

    ModelSet models;
    for (const auto& path : model_paths) models.add(load_model(path));

    ResultTable existing;
    if (std::filesystem::exists(out_path)) existing = read_result_csv(out_path);

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    out << kResultCsvHeader << "\n";
    const ResultTable table =
        run_scenario(cfg, models, existing, [&](const ResultRow& row) {
            out << format_row(row) << "\n";
            out.flush();
        });
    print_summary(aggregate(table));
    return 0;
}

int cmd_plot(const std::string& in_path, const std::string& out_prefix) {
    const ResultTable table = read_result_csv(in_path);
    const auto summary = aggregate(table);
    emit_plot(summary, out_prefix);
    print_summary(summary);
    std::printf("wrote %s_bars.svg\n", out_prefix.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"navsieve: learned trajectory sampling vs exhaustive search, at desk scale"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* gen = app.add_subcommand("gen-data", "generate a labeled scan dataset");
    std::string gen_out = "data.txt";
    int gen_scenes = 10000;
    int gen_obstacles = 3;
    gen->add_option("--out", gen_out, "output dataset path");
    gen->add_option("--scenes", gen_scenes, "number of scenes")->check(CLI::PositiveNumber);
    gen->add_option("--obstacles", gen_obstacles, "obstacles per scene");
    gen->add_option("--seed", opts.seed, "base seed");
    gen->add_option("--config", opts.config_file, "key=value overrides");

    auto* tr = app.add_subcommand("train", "train one output head");
    std::string tr_data, tr_head = "collision-free", tr_out = "model.txt";
    TrainConfig tr_cfg;
    tr->add_option("--data", tr_data, "dataset path")->required();
    tr->add_option("--head", tr_head, "regress|regress-goal|best-angle|collision-free");
    tr->add_option("--out", tr_out, "output model path");
    tr->add_option("--epochs", tr_cfg.max_epochs, "max epochs");
    tr->add_option("--batch", tr_cfg.batch_size, "batch size");
    tr->add_option("--lr", tr_cfg.learning_rate, "learning rate");
    tr->add_option("--seed", opts.seed, "training seed");

    auto* ev = app.add_subcommand("eval", "evaluate a model on the held-out split");
    std::string ev_data, ev_model;
    ev->add_option("--data", ev_data, "dataset path")->required();
    ev->add_option("--model", ev_model, "model path")->required();
    ev->add_option("--seed", opts.seed, "split seed (match training)");

    auto* be = app.add_subcommand("bench", "run a navigation benchmark");
    ScenarioConfig bench_cfg;
    std::string be_scenario = "barrel-forest", be_out = "results.csv", be_recovery = "disabled";
    std::vector<std::string> be_models, be_planners;
    std::vector<int> be_k, be_barrels;
    be->add_option("--scenario", be_scenario, "barrel-forest|sweep|sector|recovery");
    be->add_option("--model", be_models, "model file (repeatable)");
    be->add_option("--planner", be_planners, "planner name (repeatable)");
    auto* trials_opt = be->add_option("--trials", bench_cfg.trials, "trials per setting");
    be->add_option("--k", be_k, "candidate counts for sweep (repeatable)");
    be->add_option("--barrels", be_barrels, "barrel counts (repeatable)");
    be->add_option("--world-file", bench_cfg.world_file, "sector world file");
    auto* pairs_opt = be->add_option("--pairs", bench_cfg.sector_pairs, "sector pairs");
    be->add_option("--recovery", be_recovery, "disabled|global-replan|rotate360");
    be->add_option("--out", be_out, "results CSV path");
    be->add_option("--seed", opts.seed, "base seed");
    be->add_option("--config", opts.config_file, "key=value overrides");

    auto* pl = app.add_subcommand("plot", "render summary charts from a results CSV");
    std::string pl_in, pl_out = "plot";
    pl->add_option("--in", pl_in, "results CSV path")->required();
    pl->add_option("--out", pl_out, "output path prefix");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen_data(opts, gen_out, gen_scenes, gen_obstacles);
        if (tr->parsed()) return cmd_train(opts, tr_data, tr_head, tr_out, tr_cfg);
        if (ev->parsed()) return cmd_eval(opts, ev_data, ev_model);
        if (be->parsed()) {
            if (be_scenario == "barrel-forest") {
                bench_cfg.kind = ScenarioKind::BarrelForest;
            } else if (be_scenario == "sweep") {
                bench_cfg.kind = ScenarioKind::CandidateSweep;
            } else if (be_scenario == "sector") {
                bench_cfg.kind = ScenarioKind::SectorWorld;
            } else if (be_scenario == "recovery") {
                bench_cfg.kind = ScenarioKind::Recovery;
            } else {
                throw std::runtime_error("unknown scenario: " + be_scenario);
            }
            if (be_recovery == "disabled") {
                bench_cfg.episode.recovery = RecoveryMode::Disabled;
            } else if (be_recovery == "global-replan") {
                bench_cfg.episode.recovery = RecoveryMode::GlobalReplan;
            } else if (be_recovery == "rotate360") {
                bench_cfg.episode.recovery = RecoveryMode::Rotate360;
            } else {
                throw std::runtime_error("unknown recovery mode: " + be_recovery);
            }
            if (!be_planners.empty()) bench_cfg.planners = be_planners;
            if (!be_k.empty()) bench_cfg.k_values = be_k;
            if (!be_barrels.empty()) bench_cfg.barrel_counts = be_barrels;
            // --trials doubles as the pair count for sector runs.
            if (trials_opt->count() > 0 && pairs_opt->count() == 0)
                bench_cfg.sector_pairs = bench_cfg.trials;
            if (bench_cfg.kind == ScenarioKind::CandidateSweep && be_planners.empty())
                bench_cfg.planners = {"cartesian-bias"};
            if (bench_cfg.kind == ScenarioKind::SectorWorld && be_planners.empty())
                bench_cfg.planners = {"exhaustive", "pips-togoal"};
            return cmd_bench(opts, bench_cfg, be_models, be_out);
        }
        if (pl->parsed()) return cmd_plot(pl_in, pl_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
