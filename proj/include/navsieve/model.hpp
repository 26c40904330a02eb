#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "navsieve/dataset.hpp"

namespace navsieve {

/// Output head of the learner.
///   RegressAngle:     one scalar, the departure angle.
///   RegressAngleGoal: as above, input augmented with the goal bearing.
///   BestAngle:        angle_count competing logits, softmax.
///   CollisionFree:    angle_count independent binary classifiers, one
///                     softmax per (negative, positive) logit pair.
enum class HeadKind { RegressAngle, RegressAngleGoal, BestAngle, CollisionFree };

[[nodiscard]] inline std::string head_name(HeadKind head) {
    switch (head) {
        case HeadKind::RegressAngle: return "regress";
        case HeadKind::RegressAngleGoal: return "regress-goal";
        case HeadKind::BestAngle: return "best-angle";
        case HeadKind::CollisionFree: return "collision-free";
    }
    throw std::logic_error("unknown head");
}

[[nodiscard]] inline HeadKind parse_head(const std::string& name) {
    if (name == "regress") return HeadKind::RegressAngle;
    if (name == "regress-goal") return HeadKind::RegressAngleGoal;
    if (name == "best-angle") return HeadKind::BestAngle;
    if (name == "collision-free") return HeadKind::CollisionFree;
    throw std::runtime_error("unknown head kind: " + name);
}

[[nodiscard]] inline int head_output_size(HeadKind head, int angle_count) {
    switch (head) {
        case HeadKind::RegressAngle:
        case HeadKind::RegressAngleGoal: return 1;
        case HeadKind::BestAngle: return angle_count;
        case HeadKind::CollisionFree: return 2 * angle_count;
    }
    throw std::logic_error("unknown head");
}

/// Fully connected layer, weights row-major (out x in).
struct Layer {
    int in{0};
    int out{0};
    std::vector<double> w;
    std::vector<double> b;
};

struct ModelParams {
    HeadKind head{HeadKind::CollisionFree};
    int angle_count{51};
    std::vector<Layer> layers;

    [[nodiscard]] int input_size() const { return layers.front().in; }
    [[nodiscard]] int output_size() const { return layers.back().out; }

    [[nodiscard]] std::vector<int> dims() const {
        std::vector<int> d;
        d.push_back(layers.front().in);
        for (const auto& l : layers) d.push_back(l.out);
        return d;
    }
};

/// Layer sizes for a head: scan beams (plus the goal feature for the
/// goal-informed regressor) through the hidden stack to the head output.
[[nodiscard]] inline std::vector<int> make_architecture(HeadKind head, int beam_count,
                                                        int angle_count,
                                                        std::vector<int> hidden = {256, 128}) {
    std::vector<int> dims;
    dims.push_back(head == HeadKind::RegressAngleGoal ? beam_count + 1 : beam_count);
    for (const int h : hidden) dims.push_back(h);
    dims.push_back(head_output_size(head, angle_count));
    return dims;
}

/// Scaled-uniform initialization, bound sqrt(6 / (fan_in + fan_out)),
/// biases zero. Deterministic per seed.
[[nodiscard]] inline ModelParams init_params(HeadKind head, const std::vector<int>& dims,
                                             int angle_count, std::uint64_t seed) {
    if (dims.size() < 2) throw std::invalid_argument("init_params: need input and output dims");
    if (dims.back() != head_output_size(head, angle_count))
        throw std::invalid_argument("init_params: output dim does not match head");
    ModelParams params;
    params.head = head;
    params.angle_count = angle_count;
    std::mt19937_64 rng(seed);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        Layer layer;
        layer.in = dims[l];
        layer.out = dims[l + 1];
        const double bound = std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
        std::uniform_real_distribution<double> u(-bound, bound);
        layer.w.resize(static_cast<std::size_t>(layer.in) * static_cast<std::size_t>(layer.out));
        for (auto& w : layer.w) w = u(rng);
        layer.b.assign(static_cast<std::size_t>(layer.out), 0.0);
        params.layers.push_back(std::move(layer));
    }
    return params;
}

/// Post-activation values per layer, kept for backpropagation.
struct Activations {
    std::vector<std::vector<double>> values;  // values[0] = input features
};

namespace detail {

inline void affine(const Layer& layer, const std::vector<double>& x, std::vector<double>& z) {
    z.assign(static_cast<std::size_t>(layer.out), 0.0);
    for (int o = 0; o < layer.out; ++o) {
        const double* row = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
        double acc = layer.b[static_cast<std::size_t>(o)];
        for (int i = 0; i < layer.in; ++i) acc += row[i] * x[static_cast<std::size_t>(i)];
        z[static_cast<std::size_t>(o)] = acc;
    }
}

/// Stable softmax over [begin, end) of z, written in place.
inline void softmax_inplace(double* begin, double* end) {
    double m = *begin;
    for (double* p = begin; p != end; ++p) m = std::max(m, *p);
    double sum = 0.0;
    for (double* p = begin; p != end; ++p) {
        *p = std::exp(*p - m);
        sum += *p;
    }
    for (double* p = begin; p != end; ++p) *p /= sum;
}

}  // namespace detail

/// Raw head logits. Hidden layers use rectified-linear activation; the last
/// layer is linear. When acts is given, every post-activation vector
/// (including the input) is recorded for backpropagation.
[[nodiscard]] inline std::vector<double> forward_logits(const ModelParams& params,
                                                        const std::vector<double>& features,
                                                        Activations* acts = nullptr) {
    if (static_cast<int>(features.size()) != params.input_size())
        throw std::invalid_argument("forward: feature length does not match model input");
    if (acts) {
        acts->values.clear();
        acts->values.push_back(features);
    }
    std::vector<double> cur = features;
    std::vector<double> next;
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        detail::affine(params.layers[l], cur, next);
        if (l + 1 < params.layers.size()) {
            for (auto& v : next) v = v > 0.0 ? v : 0.0;
        }
        cur = next;
        if (acts && l + 1 < params.layers.size()) acts->values.push_back(cur);
    }
    return cur;
}

/// Head output as the planner consumes it: a scalar angle for the
/// regressors, class probabilities for BestAngle, and per-angle
/// positive-class probabilities for CollisionFree.
[[nodiscard]] inline std::vector<double> forward(const ModelParams& params,
                                                 const std::vector<double>& features) {
    std::vector<double> logits = forward_logits(params, features);
    switch (params.head) {
        case HeadKind::RegressAngle:
        case HeadKind::RegressAngleGoal: return {logits[0]};
        case HeadKind::BestAngle:
            detail::softmax_inplace(logits.data(), logits.data() + logits.size());
            return logits;
        case HeadKind::CollisionFree: {
            std::vector<double> pos(static_cast<std::size_t>(params.angle_count));
            for (int a = 0; a < params.angle_count; ++a) {
                double* pair = logits.data() + 2 * a;
                detail::softmax_inplace(pair, pair + 2);
                pos[static_cast<std::size_t>(a)] = pair[1];
            }
            return pos;
        }
    }
    throw std::logic_error("unknown head");
}

/// Per-angle confidences in [0, 1] from a raw scan. CollisionFree yields
/// the positive-class probabilities; BestAngle maps its softmax output
/// through the same signature.
[[nodiscard]] inline std::vector<double> predict_confidences(const ModelParams& params,
                                                             const DepthScan& scan,
                                                             const DatasetStats& stats) {
    if (params.head != HeadKind::CollisionFree && params.head != HeadKind::BestAngle)
        throw std::invalid_argument("predict_confidences: model head is not a classifier");
    return forward(params, normalize_scan(scan, stats));
}

/// Regressed departure angle from a raw scan. goal_angle feeds the extra
/// input feature of the goal-informed head (normalized by the angle range).
[[nodiscard]] inline double predict_angle(const ModelParams& params, const DepthScan& scan,
                                          const DatasetStats& stats, double goal_angle = 0.0,
                                          double angle_range = 0.4) {
    if (params.head != HeadKind::RegressAngle && params.head != HeadKind::RegressAngleGoal)
        throw std::invalid_argument("predict_angle: model head is not a regressor");
    std::vector<double> features = normalize_scan(scan, stats);
    if (params.head == HeadKind::RegressAngleGoal) features.push_back(goal_angle / angle_range);
    return forward(params, features)[0];
}

/// Trained parameters bundled with the normalization statistics they were
/// trained under; both are needed at inference time.
struct SavedModel {
    ModelParams params;
    DatasetStats stats;
};

inline void save_model(const SavedModel& model, std::ostream& out) {
    out << "navsieve-model v1 head=" << head_name(model.params.head) << " layers=";
    const auto dims = model.params.dims();
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) out << ',';
        out << dims[i];
    }
    out << " angles=" << model.params.angle_count << "\n";
    std::string line;
    auto write_vector_line = [&](const char* tag, const std::vector<double>& values) {
        line.assign(tag);
        for (const double v : values) {
            line.push_back(' ');
            detail::append_double(line, v);
        }
        line.push_back('\n');
        out << line;
    };
    write_vector_line("mean", model.stats.mean);
    write_vector_line("std", model.stats.std_dev);
    for (const auto& layer : model.params.layers) {
        write_vector_line("w", layer.w);
        write_vector_line("b", layer.b);
    }
}

inline void save_model(const SavedModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    save_model(model, out);
}

[[nodiscard]] inline SavedModel load_model(std::istream& in, const std::string& origin = "<stream>") {
    SavedModel model;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& what) {
        throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": " + what);
    };

    if (!std::getline(in, line)) {
        line_no = 1;
        fail("empty model file");
    }
    ++line_no;
    std::vector<int> dims;
    {
        std::size_t pos = 0;
        std::string tok;
        if (!detail::next_token(line, pos, tok) || tok != "navsieve-model") fail("bad magic");
        if (!detail::next_token(line, pos, tok) || tok != "v1") fail("unsupported version");
        if (!detail::next_token(line, pos, tok) || tok.rfind("head=", 0) != 0)
            fail("missing head field");
        model.params.head = parse_head(tok.substr(5));
        if (!detail::next_token(line, pos, tok) || tok.rfind("layers=", 0) != 0)
            fail("missing layers field");
        std::string list = tok.substr(7);
        std::size_t p = 0;
        while (p < list.size()) {
            std::size_t q = list.find(',', p);
            if (q == std::string::npos) q = list.size();
            dims.push_back(std::stoi(list.substr(p, q - p)));
            p = q + 1;
        }
        if (dims.size() < 2) fail("layers field needs at least two dims");
        if (detail::next_token(line, pos, tok)) {
            if (tok.rfind("angles=", 0) != 0) fail("unexpected header field");
            model.params.angle_count = std::stoi(tok.substr(7));
        }
    }

    auto read_vector_line = [&](const char* tag, std::vector<double>& values, std::size_t expect) {
        if (!std::getline(in, line)) fail(std::string("missing ") + tag + " line");
        ++line_no;
        std::size_t pos = 0;
        std::string tok;
        if (!detail::next_token(line, pos, tok) || tok != tag)
            fail(std::string("expected ") + tag + " line");
        double v = 0.0;
        values.clear();
        while (detail::next_double(line, pos, v)) values.push_back(v);
        if (values.size() != expect) fail(std::string(tag) + " line has wrong length");
    };

    const auto beams = static_cast<std::size_t>(
        model.params.head == HeadKind::RegressAngleGoal ? dims.front() - 1 : dims.front());
    read_vector_line("mean", model.stats.mean, beams);
    read_vector_line("std", model.stats.std_dev, beams);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        Layer layer;
        layer.in = dims[l];
        layer.out = dims[l + 1];
        read_vector_line("w", layer.w,
                         static_cast<std::size_t>(layer.in) * static_cast<std::size_t>(layer.out));
        read_vector_line("b", layer.b, static_cast<std::size_t>(layer.out));
        model.params.layers.push_back(std::move(layer));
    }
    if (model.params.output_size() != head_output_size(model.params.head, model.params.angle_count))
        fail("output layer size does not match head");
    return model;
}

[[nodiscard]] inline SavedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    return load_model(in, path);
}

}  // namespace navsieve
