#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "navsieve/bench.hpp"

namespace navsieve {

namespace detail {

inline const char* plot_color(std::size_t i) {
    static const char* palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                    "#59a14f", "#edc948", "#b07aa1", "#9c755f"};
    return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

inline std::string fmt(double v, const char* spec = "%.2f") {
    char buf[32];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace detail

/// Grouped-bar success-rate chart: one group per setting, one bar per
/// planner, raw percentages written above each bar.
inline void write_success_bars_svg(const std::vector<SummaryRow>& summary, std::ostream& out) {
    if (summary.empty()) throw std::invalid_argument("write_success_bars_svg: empty summary");

    std::vector<std::string> settings, planners;
    for (const auto& s : summary) {
        if (std::find(settings.begin(), settings.end(), s.setting) == settings.end())
            settings.push_back(s.setting);
        if (std::find(planners.begin(), planners.end(), s.planner) == planners.end())
            planners.push_back(s.planner);
    }
    std::map<std::string, double> rate;
    for (const auto& s : summary) rate[s.setting + '\n' + s.planner] = s.success_rate_pct;

    const double bar_w = 26.0;
    const double group_gap = 40.0;
    const double group_w = bar_w * static_cast<double>(planners.size());
    const double plot_h = 300.0;
    const double left = 60.0, top = 40.0;
    const double width =
        left + (group_w + group_gap) * static_cast<double>(settings.size()) + 200.0;
    const double height = top + plot_h + 60.0;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<text x=\"" << left << "\" y=\"20\" font-size=\"15\">Success rate (%)</text>\n";
    for (int tick = 0; tick <= 100; tick += 25) {
        const double y = top + plot_h * (1.0 - tick / 100.0);
        out << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << width - 160 << "\" y2=\""
            << y << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << left - 34 << "\" y=\"" << y + 4 << "\">" << tick << "</text>\n";
    }
    for (std::size_t si = 0; si < settings.size(); ++si) {
        const double gx = left + (group_w + group_gap) * static_cast<double>(si);
        for (std::size_t pi = 0; pi < planners.size(); ++pi) {
            const auto it = rate.find(settings[si] + '\n' + planners[pi]);
            if (it == rate.end()) continue;
            const double h = plot_h * it->second / 100.0;
            const double x = gx + bar_w * static_cast<double>(pi);
            const double y = top + plot_h - h;
            out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w - 3
                << "\" height=\"" << h << "\" fill=\"" << detail::plot_color(pi) << "\"/>\n";
            out << "<text x=\"" << x << "\" y=\"" << y - 4 << "\" font-size=\"10\">"
                << detail::fmt(it->second) << "</text>\n";
        }
        out << "<text x=\"" << gx << "\" y=\"" << top + plot_h + 18 << "\">" << settings[si]
            << "</text>\n";
    }
    const double lx = width - 150.0;
    for (std::size_t pi = 0; pi < planners.size(); ++pi) {
        const double ly = top + 18.0 * static_cast<double>(pi);
        out << "<rect x=\"" << lx << "\" y=\"" << ly << "\" width=\"12\" height=\"12\" fill=\""
            << detail::plot_color(pi) << "\"/>\n";
        out << "<text x=\"" << lx + 18 << "\" y=\"" << ly + 11 << "\">" << planners[pi]
            << "</text>\n";
    }
    out << "</svg>\n";
}

/// Success rate against candidate count k for settings of the form "k=N".
inline void write_success_vs_k_svg(const std::vector<SummaryRow>& summary, std::ostream& out) {
    if (summary.empty()) throw std::invalid_argument("write_success_vs_k_svg: empty summary");

    struct Point {
        int k;
        double rate;
    };
    std::map<std::string, std::vector<Point>> series;
    int k_min = 0, k_max = 0;
    for (const auto& s : summary) {
        if (s.setting.rfind("k=", 0) != 0) continue;
        const int k = std::stoi(s.setting.substr(2));
        series[s.planner].push_back({k, s.success_rate_pct});
        if (k_min == 0 || k < k_min) k_min = k;
        k_max = std::max(k_max, k);
    }
    if (series.empty())
        throw std::invalid_argument("write_success_vs_k_svg: no k=N settings in summary");
    for (auto& [name, pts] : series)
        std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.k < b.k; });

    const double plot_w = 420.0, plot_h = 300.0, left = 60.0, top = 40.0;
    const double width = left + plot_w + 180.0, height = top + plot_h + 60.0;
    auto xs = [&](int k) {
        return k_max == k_min
                   ? left + plot_w * 0.5
                   : left + plot_w * (k - k_min) / static_cast<double>(k_max - k_min);
    };
    auto ys = [&](double rate) { return top + plot_h * (1.0 - rate / 100.0); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<text x=\"" << left << "\" y=\"20\" font-size=\"15\">Success rate vs candidate count"
        << "</text>\n";
    for (int tick = 0; tick <= 100; tick += 25) {
        out << "<line x1=\"" << left << "\" y1=\"" << ys(tick) << "\" x2=\"" << left + plot_w
            << "\" y2=\"" << ys(tick) << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << left - 34 << "\" y=\"" << ys(tick) + 4 << "\">" << tick
            << "</text>\n";
    }
    std::size_t pi = 0;
    for (const auto& [name, pts] : series) {
        out << "<polyline fill=\"none\" stroke=\"" << detail::plot_color(pi)
            << "\" stroke-width=\"2\" points=\"";
        for (const auto& p : pts) out << xs(p.k) << ',' << ys(p.rate) << ' ';
        out << "\"/>\n";
        for (const auto& p : pts) {
            out << "<circle cx=\"" << xs(p.k) << "\" cy=\"" << ys(p.rate)
                << "\" r=\"3\" fill=\"" << detail::plot_color(pi) << "\"/>\n";
            out << "<text x=\"" << xs(p.k) + 5 << "\" y=\"" << ys(p.rate) - 6
                << "\" font-size=\"10\">" << detail::fmt(p.rate) << "</text>\n";
            out << "<text x=\"" << xs(p.k) - 4 << "\" y=\"" << top + plot_h + 18 << "\">" << p.k
                << "</text>\n";
        }
        out << "<text x=\"" << left + plot_w + 12 << "\" y=\""
            << top + 18.0 * static_cast<double>(pi) + 11 << "\" fill=\"" << detail::plot_color(pi)
            << "\">" << name << "</text>\n";
        ++pi;
    }
    out << "</svg>\n";
}

inline void emit_plot(const std::vector<SummaryRow>& summary, const std::string& path_prefix) {
    if (summary.empty()) throw std::invalid_argument("emit_plot: empty summary");
    bool any_k = false;
    for (const auto& s : summary) any_k = any_k || s.setting.rfind("k=", 0) == 0;
    {
        std::ofstream out(path_prefix + "_bars.svg");
        if (!out) throw std::runtime_error("cannot open for writing: " + path_prefix + "_bars.svg");
        write_success_bars_svg(summary, out);
    }
    if (any_k) {
        std::ofstream out(path_prefix + "_k.svg");
        if (!out) throw std::runtime_error("cannot open for writing: " + path_prefix + "_k.svg");
        write_success_vs_k_svg(summary, out);
    }
}

}  // namespace navsieve
