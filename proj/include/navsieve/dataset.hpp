#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "navsieve/sensor.hpp"
#include "navsieve/trajectory.hpp"
#include "navsieve/world.hpp"

namespace navsieve {

/// One labeled training example: a scan, the per-angle clear distances it
/// implies, and an optional goal bearing for goal-informed variants.
struct Sample {
    DepthScan scan;
    DistanceLabels labels;
    std::optional<double> goal_angle;
};

struct DatasetStats {
    std::vector<double> mean;
    std::vector<double> std_dev;  // floored at 1e-6
};

struct Dataset {
    std::vector<Sample> samples;
    DatasetStats stats;
    SensorConfig sensor;
    TrajectoryConfig trajectory;
};

inline constexpr double kStdFloor = 1e-6;

/// Per-beam arithmetic mean and population standard deviation.
[[nodiscard]] inline DatasetStats compute_stats(const std::vector<Sample>& samples) {
    if (samples.empty()) throw std::invalid_argument("compute_stats: empty sample set");
    const std::size_t beams = samples.front().scan.ranges.size();
    DatasetStats stats;
    stats.mean.assign(beams, 0.0);
    stats.std_dev.assign(beams, 0.0);
    for (const auto& s : samples) {
        for (std::size_t b = 0; b < beams; ++b) stats.mean[b] += s.scan.ranges[b];
    }
    const double inv_n = 1.0 / static_cast<double>(samples.size());
    for (auto& m : stats.mean) m *= inv_n;
    for (const auto& s : samples) {
        for (std::size_t b = 0; b < beams; ++b) {
            const double d = s.scan.ranges[b] - stats.mean[b];
            stats.std_dev[b] += d * d;
        }
    }
    for (auto& v : stats.std_dev) v = std::max(std::sqrt(v * inv_n), kStdFloor);
    return stats;
}

/// (value - mean) / std per beam.
[[nodiscard]] inline std::vector<double> normalize_scan(const DepthScan& scan,
                                                        const DatasetStats& stats) {
    if (scan.ranges.size() != stats.mean.size())
        throw std::invalid_argument("normalize_scan: scan/stats length mismatch");
    std::vector<double> out(scan.ranges.size());
    for (std::size_t b = 0; b < out.size(); ++b)
        out[b] = (scan.ranges[b] - stats.mean[b]) / stats.std_dev[b];
    return out;
}

/// Generate `count` scenes seeded base_seed + index, scan each from the
/// template's start pose, and label every departure angle. A goal bearing is
/// drawn uniformly over the angle range for each sample so the same dataset
/// also trains the goal-informed head.
[[nodiscard]] inline Dataset build_dataset(const WorldSpec& spec_template, int count,
                                           std::uint64_t base_seed,
                                           const SensorConfig& sensor = {},
                                           const TrajectoryConfig& trajectory = {}) {
    if (count < 1) throw std::invalid_argument("build_dataset: count must be >= 1");
    Dataset ds;
    ds.sensor = sensor;
    ds.trajectory = trajectory;
    ds.samples.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        WorldSpec spec = spec_template;
        spec.seed = base_seed + static_cast<std::uint64_t>(i);
        const Scene scene = generate_scene(spec);
        Sample sample;
        sample.scan = raycast_scan(scene, spec.start, sensor);
        sample.labels = label_scene(scene, spec.start, trajectory);
        std::mt19937_64 goal_rng(spec.seed * 0x9E3779B97F4A7C15ULL + 1);
        sample.goal_angle = std::uniform_real_distribution<double>(
            -trajectory.angle_range, trajectory.angle_range)(goal_rng);
        ds.samples.push_back(std::move(sample));
    }
    ds.stats = compute_stats(ds.samples);
    return ds;
}

namespace detail {

inline void append_double(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

/// Parse the next whitespace-separated double starting at `pos`; advances pos.
inline bool next_double(const std::string& line, std::size_t& pos, double& v) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) return false;
    const auto res = std::from_chars(line.data() + pos, line.data() + line.size(), v);
    if (res.ec != std::errc{}) return false;
    pos = static_cast<std::size_t>(res.ptr - line.data());
    return true;
}

inline bool next_token(const std::string& line, std::size_t& pos, std::string& tok) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos == start) return false;
    tok = line.substr(start, pos - start);
    return true;
}

}  // namespace detail

inline void save_dataset(const Dataset& ds, std::ostream& out) {
    const std::size_t beams = ds.stats.mean.size();
    out << "navsieve-dataset v1 beams=" << beams << " angles=" << ds.trajectory.angle_count
        << "\n";
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
    write_vector_line("mean", ds.stats.mean);
    write_vector_line("std", ds.stats.std_dev);
    for (const auto& s : ds.samples) {
        line.clear();
        for (std::size_t b = 0; b < s.scan.ranges.size(); ++b) {
            if (b) line.push_back(' ');
            detail::append_double(line, s.scan.ranges[b]);
        }
        line.append(" |");
        for (const double d : s.labels.distances) {
            line.push_back(' ');
            detail::append_double(line, d);
        }
        if (s.goal_angle) {
            line.append(" | ");
            detail::append_double(line, *s.goal_angle);
        }
        line.push_back('\n');
        out << line;
    }
}

inline void save_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    save_dataset(ds, out);
}

[[nodiscard]] inline Dataset load_dataset(std::istream& in, const std::string& origin = "<stream>") {
    Dataset ds;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& what) {
        throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": " + what);
    };

    if (!std::getline(in, line)) {
        line_no = 1;
        fail("empty dataset file");
    }
    ++line_no;
    std::size_t beams = 0;
    int angles = 0;
    {
        std::size_t pos = 0;
        std::string tok;
        if (!detail::next_token(line, pos, tok) || tok != "navsieve-dataset") fail("bad magic");
        if (!detail::next_token(line, pos, tok) || tok != "v1") fail("unsupported version");
        if (!detail::next_token(line, pos, tok) || tok.rfind("beams=", 0) != 0)
            fail("missing beams field");
        beams = static_cast<std::size_t>(std::stoul(tok.substr(6)));
        if (!detail::next_token(line, pos, tok) || tok.rfind("angles=", 0) != 0)
            fail("missing angles field");
        angles = std::stoi(tok.substr(7));
        if (beams < 2 || angles < 3) fail("implausible header dimensions");
    }
    ds.sensor.beam_count = static_cast<int>(beams);
    ds.trajectory.angle_count = angles;

    auto read_stats_line = [&](const char* tag, std::vector<double>& values) {
        if (!std::getline(in, line)) fail(std::string("missing ") + tag + " line");
        ++line_no;
        std::size_t pos = 0;
        std::string tok;
        if (!detail::next_token(line, pos, tok) || tok != tag)
            fail(std::string("expected ") + tag + " line");
        double v = 0.0;
        while (detail::next_double(line, pos, v)) values.push_back(v);
        if (values.size() != beams) fail(std::string(tag) + " length does not match beams");
    };
    read_stats_line("mean", ds.stats.mean);
    read_stats_line("std", ds.stats.std_dev);

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        Sample s;
        s.scan.config = ds.sensor;
        s.labels.threshold = DistanceLabels{}.threshold;
        std::size_t pos = 0;
        double v = 0.0;
        while (detail::next_double(line, pos, v)) s.scan.ranges.push_back(v);
        std::string tok;
        if (!detail::next_token(line, pos, tok) || tok != "|") fail("record missing '|' separator");
        if (s.scan.ranges.size() != beams) fail("record beam count does not match header");
        while (detail::next_double(line, pos, v)) s.labels.distances.push_back(v);
        if (s.labels.distances.size() != static_cast<std::size_t>(angles))
            fail("record label count does not match header");
        if (detail::next_token(line, pos, tok)) {
            if (tok != "|") fail("unexpected trailing token in record");
            if (!detail::next_double(line, pos, v)) fail("missing goal angle after '|'");
            s.goal_angle = v;
        }
        ds.samples.push_back(std::move(s));
    }
    if (ds.samples.empty()) fail("dataset has no records");
    return ds;
}

[[nodiscard]] inline Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);
    return load_dataset(in, path);
}

/// Deterministic, disjoint train/test split (held-out fraction last).
struct DatasetSplit {
    std::vector<const Sample*> train;
    std::vector<const Sample*> test;
};

[[nodiscard]] inline DatasetSplit split_dataset(const Dataset& ds, double test_fraction,
                                                std::uint64_t seed) {
    std::vector<std::size_t> order(ds.samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    const auto test_count =
        static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(order.size())));
    DatasetSplit split;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Sample* s = &ds.samples[order[i]];
        if (i + test_count < order.size()) {
            split.train.push_back(s);
        } else {
            split.test.push_back(s);
        }
    }
    return split;
}

}  // namespace navsieve
