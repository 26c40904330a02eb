#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "navsieve/dataset.hpp"
#include "navsieve/model.hpp"

namespace navsieve {

struct TrainConfig {
    double learning_rate{0.001};
    int batch_size{64};
    int max_epochs{60};
    int plateau_epochs{5};        // window for the stop test
    double plateau_rel{1e-3};     // stop when relative improvement drops below; <= 0 disables
    double test_fraction{0.1};
    std::vector<int> hidden{256, 128};
    std::uint64_t seed{1};
};

/// One example with every head's target precomputed: the angle (and its
/// index) of the greatest clear distance, and the per-angle binary labels
/// at the distance threshold.
struct TrainExample {
    std::vector<double> features;
    double target_angle{0.0};
    int target_index{0};
    std::vector<std::uint8_t> binary;
};

[[nodiscard]] inline TrainExample make_example(const Sample& sample, const DatasetStats& stats,
                                               const TrajectoryConfig& traj, HeadKind head) {
    TrainExample ex;
    ex.features = normalize_scan(sample.scan, stats);
    if (head == HeadKind::RegressAngleGoal) {
        ex.features.push_back(sample.goal_angle.value_or(0.0) / traj.angle_range);
    }
    const auto& d = sample.labels.distances;
    std::size_t best = 0;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (d[i] > d[best]) best = i;
    }
    ex.target_index = static_cast<int>(best);
    ex.target_angle = angle_grid(traj)[best];
    ex.binary.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) ex.binary[i] = sample.labels.positive(i) ? 1 : 0;
    return ex;
}

/// Parameter-shaped gradient accumulator.
struct Gradients {
    struct Block {
        std::vector<double> w;
        std::vector<double> b;
    };
    std::vector<Block> layers;
};

[[nodiscard]] inline Gradients make_zero_gradients(const ModelParams& params) {
    Gradients g;
    g.layers.resize(params.layers.size());
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        g.layers[l].w.assign(params.layers[l].w.size(), 0.0);
        g.layers[l].b.assign(params.layers[l].b.size(), 0.0);
    }
    return g;
}

/// Mean loss over the batch plus the full gradient via reverse-mode
/// accumulation. Cross entropy is computed from logits with max-subtraction;
/// the regression loss is the squared error.
[[nodiscard]] inline std::pair<double, Gradients> loss_and_gradients(
    const ModelParams& params, std::span<const TrainExample* const> batch) {
    if (batch.empty()) throw std::invalid_argument("loss_and_gradients: empty batch");

    Gradients grads = make_zero_gradients(params);
    double total_loss = 0.0;
    Activations acts;
    std::vector<double> delta, delta_prev;

    for (const TrainExample* ex : batch) {
        std::vector<double> logits = forward_logits(params, ex->features, &acts);
        delta.assign(logits.size(), 0.0);

        switch (params.head) {
            case HeadKind::RegressAngle:
            case HeadKind::RegressAngleGoal: {
                const double err = logits[0] - ex->target_angle;
                total_loss += err * err;
                delta[0] = 2.0 * err;
                break;
            }
            case HeadKind::BestAngle: {
                std::vector<double> p = logits;
                detail::softmax_inplace(p.data(), p.data() + p.size());
                total_loss += -std::log(std::max(p[static_cast<std::size_t>(ex->target_index)],
                                                 1e-300));
                delta = p;
                delta[static_cast<std::size_t>(ex->target_index)] -= 1.0;
                break;
            }
            case HeadKind::CollisionFree: {
                const int n = params.angle_count;
                const double scale = 1.0 / static_cast<double>(n);
                double loss = 0.0;
                for (int a = 0; a < n; ++a) {
                    double pair[2] = {logits[2 * a], logits[2 * a + 1]};
                    detail::softmax_inplace(pair, pair + 2);
                    const int y = ex->binary[static_cast<std::size_t>(a)];
                    loss += -std::log(std::max(pair[y], 1e-300));
                    delta[2 * a] = scale * (pair[0] - (y == 0 ? 1.0 : 0.0));
                    delta[2 * a + 1] = scale * (pair[1] - (y == 1 ? 1.0 : 0.0));
                }
                total_loss += loss * scale;
                break;
            }
        }

        // Backward through the stack; acts.values[l] is layer l's input.
        for (std::size_t l = params.layers.size(); l-- > 0;) {
            const Layer& layer = params.layers[l];
            const std::vector<double>& x = acts.values[l];
            auto& gw = grads.layers[l].w;
            auto& gb = grads.layers[l].b;
            if (l > 0) delta_prev.assign(static_cast<std::size_t>(layer.in), 0.0);
            for (int o = 0; o < layer.out; ++o) {
                const double d = delta[static_cast<std::size_t>(o)];
                if (d == 0.0) continue;
                double* gw_row = gw.data() + static_cast<std::size_t>(o) * layer.in;
                const double* w_row = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
                gb[static_cast<std::size_t>(o)] += d;
                for (int i = 0; i < layer.in; ++i) {
                    gw_row[i] += d * x[static_cast<std::size_t>(i)];
                }
                if (l > 0) {
                    for (int i = 0; i < layer.in; ++i) {
                        delta_prev[static_cast<std::size_t>(i)] += d * w_row[i];
                    }
                }
            }
            if (l > 0) {
                // ReLU derivative: the stored post-activation is zero where inactive.
                for (int i = 0; i < layer.in; ++i) {
                    if (x[static_cast<std::size_t>(i)] <= 0.0)
                        delta_prev[static_cast<std::size_t>(i)] = 0.0;
                }
                delta.swap(delta_prev);
            }
        }
    }

    const double inv_b = 1.0 / static_cast<double>(batch.size());
    for (auto& block : grads.layers) {
        for (auto& v : block.w) v *= inv_b;
        for (auto& v : block.b) v *= inv_b;
    }
    return {total_loss * inv_b, grads};
}

/// Bias-corrected Adam accumulators.
struct AdamState {
    static constexpr double kBeta1 = 0.9;
    static constexpr double kBeta2 = 0.999;
    static constexpr double kEpsilon = 1e-8;

    Gradients m;
    Gradients v;
    long step{0};

    [[nodiscard]] static AdamState init(const ModelParams& params) {
        AdamState s;
        s.m = make_zero_gradients(params);
        s.v = make_zero_gradients(params);
        return s;
    }
};

namespace detail {

inline void adam_apply(std::vector<double>& p, std::vector<double>& m, std::vector<double>& v,
                       const std::vector<double>& g, double lr, double c1, double c2) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        m[i] = AdamState::kBeta1 * m[i] + (1.0 - AdamState::kBeta1) * g[i];
        v[i] = AdamState::kBeta2 * v[i] + (1.0 - AdamState::kBeta2) * g[i] * g[i];
        const double m_hat = m[i] / c1;
        const double v_hat = v[i] / c2;
        p[i] -= lr * m_hat / (std::sqrt(v_hat) + AdamState::kEpsilon);
    }
}

}  // namespace detail

inline void adam_update(AdamState& state, ModelParams& params, const Gradients& grads,
                        double learning_rate) {
    ++state.step;
    const double c1 = 1.0 - std::pow(AdamState::kBeta1, static_cast<double>(state.step));
    const double c2 = 1.0 - std::pow(AdamState::kBeta2, static_cast<double>(state.step));
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        detail::adam_apply(params.layers[l].w, state.m.layers[l].w, state.v.layers[l].w,
                           grads.layers[l].w, learning_rate, c1, c2);
        detail::adam_apply(params.layers[l].b, state.m.layers[l].b, state.v.layers[l].b,
                           grads.layers[l].b, learning_rate, c1, c2);
    }
}

struct EvalResult {
    double loss{0.0};
    double accuracy{0.0};  // per-angle binary for CollisionFree, top-1 for BestAngle
};

[[nodiscard]] inline EvalResult evaluate(const ModelParams& params,
                                         const std::vector<TrainExample>& examples) {
    if (examples.empty()) return {};
    double loss = 0.0;
    double correct = 0.0;
    double total = 0.0;
    for (const auto& ex : examples) {
        std::vector<double> logits = forward_logits(params, ex.features);
        switch (params.head) {
            case HeadKind::RegressAngle:
            case HeadKind::RegressAngleGoal: {
                const double err = logits[0] - ex.target_angle;
                loss += err * err;
                break;
            }
            case HeadKind::BestAngle: {
                std::vector<double> p = logits;
                detail::softmax_inplace(p.data(), p.data() + p.size());
                loss += -std::log(std::max(p[static_cast<std::size_t>(ex.target_index)], 1e-300));
                std::size_t arg = 0;
                for (std::size_t i = 1; i < p.size(); ++i) {
                    if (p[i] > p[arg]) arg = i;
                }
                correct += arg == static_cast<std::size_t>(ex.target_index) ? 1.0 : 0.0;
                total += 1.0;
                break;
            }
            case HeadKind::CollisionFree: {
                const int n = params.angle_count;
                double l = 0.0;
                for (int a = 0; a < n; ++a) {
                    double pair[2] = {logits[2 * a], logits[2 * a + 1]};
                    detail::softmax_inplace(pair, pair + 2);
                    const int y = ex.binary[static_cast<std::size_t>(a)];
                    l += -std::log(std::max(pair[y], 1e-300));
                    correct += (pair[1] >= 0.5) == (y == 1) ? 1.0 : 0.0;
                    total += 1.0;
                }
                loss += l / static_cast<double>(n);
                break;
            }
        }
    }
    EvalResult res;
    res.loss = loss / static_cast<double>(examples.size());
    res.accuracy = total > 0.0 ? correct / total : 0.0;
    return res;
}

struct TrainResult {
    SavedModel model;
    std::vector<double> train_loss;  // per epoch
    std::vector<double> eval_loss;
    std::vector<double> eval_accuracy;
    int epochs{0};
};

/// Train one head on a dataset: 90/10 split, uniformly sampled batches,
/// held-out evaluation after each epoch, stop at plateau or max_epochs.
/// Deterministic for a fixed seed.
[[nodiscard]] inline TrainResult train(const Dataset& ds, HeadKind head, const TrainConfig& cfg) {
    if (ds.samples.empty()) throw std::invalid_argument("train: empty dataset");
    if (ds.stats.mean.empty()) throw std::invalid_argument("train: dataset has no statistics");

    const DatasetSplit split = split_dataset(ds, cfg.test_fraction, cfg.seed);
    std::vector<TrainExample> train_set, test_set;
    train_set.reserve(split.train.size());
    for (const Sample* s : split.train)
        train_set.push_back(make_example(*s, ds.stats, ds.trajectory, head));
    test_set.reserve(split.test.size());
    for (const Sample* s : split.test)
        test_set.push_back(make_example(*s, ds.stats, ds.trajectory, head));

    const auto dims =
        make_architecture(head, ds.sensor.beam_count, ds.trajectory.angle_count, cfg.hidden);
    ModelParams params = init_params(head, dims, ds.trajectory.angle_count, cfg.seed);
    AdamState adam = AdamState::init(params);

    std::mt19937_64 rng(cfg.seed ^ 0xA5A5A5A5A5A5A5A5ULL);
    std::uniform_int_distribution<std::size_t> pick(0, train_set.size() - 1);
    const int steps_per_epoch =
        std::max<int>(1, static_cast<int>(train_set.size()) / cfg.batch_size);

    TrainResult result;
    std::vector<const TrainExample*> batch(static_cast<std::size_t>(cfg.batch_size));
    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        double epoch_loss = 0.0;
        for (int step = 0; step < steps_per_epoch; ++step) {
            for (auto& slot : batch) slot = &train_set[pick(rng)];
            auto [loss, grads] = loss_and_gradients(params, batch);
            adam_update(adam, params, grads, cfg.learning_rate);
            epoch_loss += loss;
        }
        result.train_loss.push_back(epoch_loss / steps_per_epoch);
        const EvalResult ev = evaluate(params, test_set);
        result.eval_loss.push_back(ev.loss);
        result.eval_accuracy.push_back(ev.accuracy);
        result.epochs = epoch + 1;

        if (cfg.plateau_rel > 0.0 && epoch >= cfg.plateau_epochs) {
            const double before =
                result.train_loss[static_cast<std::size_t>(epoch - cfg.plateau_epochs)];
            const double now = result.train_loss.back();
            if ((before - now) / std::max(std::abs(before), 1e-12) < cfg.plateau_rel) break;
        }
    }

    result.model.params = std::move(params);
    result.model.stats = ds.stats;
    return result;
}

}  // namespace navsieve
