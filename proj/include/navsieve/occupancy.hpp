#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "navsieve/geometry.hpp"
#include "navsieve/sensor.hpp"

namespace navsieve {

enum class CellState : std::uint8_t { Unknown = 0, Free = 1, Occupied = 2 };

/// Cartesian occupancy grid covering a world's bounds.
struct OccupancyGrid {
    double resolution{0.1};
    Vec2 origin;  // world position of cell (0, 0)'s lower corner
    int nx{0};
    int ny{0};
    std::vector<CellState> cells;
    // Remembered beam endpoints per occupied cell (up to kHitsPerCell,
    // deduplicated at kHitSpacing): sub-cell obstacle geometry for the
    // local planner's clearance queries.
    static constexpr int kHitsPerCell = 8;
    static constexpr double kHitSpacing = 0.025;
    std::vector<Vec2> hit_points;   // stride kHitsPerCell
    std::vector<std::uint8_t> hit_counts;

    OccupancyGrid() = default;

    OccupancyGrid(const Rect& bounds, double res) : resolution(res), origin(bounds.lo) {
        nx = static_cast<int>(std::ceil(bounds.width() / res - 1e-9));
        ny = static_cast<int>(std::ceil(bounds.height() / res - 1e-9));
        cells.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny),
                     CellState::Unknown);
        hit_points.assign(cells.size() * static_cast<std::size_t>(kHitsPerCell), {});
        hit_counts.assign(cells.size(), 0);
    }

    void record_hit(int ix, int iy, const Vec2& hit) {
        const std::size_t cell = index(ix, iy);
        std::uint8_t& n = hit_counts[cell];
        Vec2* pts = hit_points.data() + cell * static_cast<std::size_t>(kHitsPerCell);
        for (std::uint8_t i = 0; i < n; ++i) {
            if (distance(pts[i], hit) < kHitSpacing) return;
        }
        if (n < kHitsPerCell) pts[n++] = hit;
    }

    [[nodiscard]] bool in_grid(int ix, int iy) const {
        return ix >= 0 && ix < nx && iy >= 0 && iy < ny;
    }
    [[nodiscard]] std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx) +
               static_cast<std::size_t>(ix);
    }
    [[nodiscard]] CellState at(int ix, int iy) const { return cells[index(ix, iy)]; }
    void set(int ix, int iy, CellState s) { cells[index(ix, iy)] = s; }

    [[nodiscard]] int cell_x(double wx) const {
        return static_cast<int>(std::floor((wx - origin.x) / resolution));
    }
    [[nodiscard]] int cell_y(double wy) const {
        return static_cast<int>(std::floor((wy - origin.y) / resolution));
    }
    [[nodiscard]] Vec2 cell_center(int ix, int iy) const {
        return {origin.x + (ix + 0.5) * resolution, origin.y + (iy + 0.5) * resolution};
    }
    [[nodiscard]] int clamp_x(int ix) const { return std::clamp(ix, 0, nx - 1); }
    [[nodiscard]] int clamp_y(int iy) const { return std::clamp(iy, 0, ny - 1); }
};

/// Carve a scan into the grid: cells along each beam out to (range -
/// resolution) become free, the terminal cell becomes occupied when the beam
/// actually hit something. Occupied cells are never downgraded, so the
/// update is idempotent and insensitive to beam order.
inline void update_occupancy(OccupancyGrid& grid, const Pose2D& pose, const DepthScan& scan) {
    const Vec2 origin = pose.position();
    const double step = grid.resolution * 0.5;
    for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
        const double range = scan.ranges[i];
        const Vec2 dir =
            heading_dir(pose.heading + beam_angle(scan.config, static_cast<int>(i)));
        const double free_to = range - grid.resolution;
        for (double s = 0.0; s <= free_to; s += step) {
            const Vec2 p = origin + dir * s;
            const int ix = grid.cell_x(p.x);
            const int iy = grid.cell_y(p.y);
            if (!grid.in_grid(ix, iy)) break;
            if (grid.at(ix, iy) != CellState::Occupied) grid.set(ix, iy, CellState::Free);
        }
        if (range < scan.config.max_range - 1e-9) {
            const Vec2 hit = origin + dir * range;
            const int ix = grid.cell_x(hit.x);
            const int iy = grid.cell_y(hit.y);
            if (grid.in_grid(ix, iy)) {
                grid.record_hit(ix, iy, hit);
                grid.set(ix, iy, CellState::Occupied);
            }
        }
    }
}

/// Distance (meters) from each cell center to the nearest occupied cell
/// center, exact Euclidean via the two-pass squared-distance transform.
struct DistanceField {
    double resolution{0.1};
    Vec2 origin;
    int nx{0};
    int ny{0};
    std::vector<double> dist;  // meters

    [[nodiscard]] double clearance(const Vec2& p) const {
        if (dist.empty()) return std::numeric_limits<double>::infinity();
        const int ix = std::clamp(static_cast<int>(std::floor((p.x - origin.x) / resolution)), 0,
                                  nx - 1);
        const int iy = std::clamp(static_cast<int>(std::floor((p.y - origin.y) / resolution)), 0,
                                  ny - 1);
        return dist[static_cast<std::size_t>(iy) * nx + static_cast<std::size_t>(ix)];
    }
};

namespace detail {

/// 1D squared distance transform (Felzenszwalb-Huttenlocher lower envelope).
inline void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
                   std::vector<double>& z) {
    const int n = static_cast<int>(f.size());
    d.assign(f.size(), 0.0);
    v.assign(f.size(), 0);
    z.assign(f.size() + 1, 0.0);
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            const int p = v[static_cast<std::size_t>(k)];
            s = ((f[static_cast<std::size_t>(q)] + q * q) -
                 (f[static_cast<std::size_t>(p)] + p * p)) /
                (2.0 * q - 2.0 * p);
            if (s <= z[static_cast<std::size_t>(k)]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[static_cast<std::size_t>(k)] = q;
        z[static_cast<std::size_t>(k)] = s;
        z[static_cast<std::size_t>(k) + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[static_cast<std::size_t>(k) + 1] < q) ++k;
        const int p = v[static_cast<std::size_t>(k)];
        d[static_cast<std::size_t>(q)] =
            (q - p) * static_cast<double>(q - p) + f[static_cast<std::size_t>(p)];
    }
}

}  // namespace detail

[[nodiscard]] inline DistanceField distance_field(const OccupancyGrid& grid) {
    DistanceField field;
    field.resolution = grid.resolution;
    field.origin = grid.origin;
    field.nx = grid.nx;
    field.ny = grid.ny;

    const double inf = 1e12;
    std::vector<double> sq(grid.cells.size());
    for (std::size_t i = 0; i < grid.cells.size(); ++i)
        sq[i] = grid.cells[i] == CellState::Occupied ? 0.0 : inf;

    std::vector<double> f, d, z;
    std::vector<int> v;
    f.resize(static_cast<std::size_t>(std::max(grid.nx, grid.ny)));

    for (int iy = 0; iy < grid.ny; ++iy) {
        f.assign(sq.begin() + static_cast<std::ptrdiff_t>(grid.index(0, iy)),
                 sq.begin() + static_cast<std::ptrdiff_t>(grid.index(0, iy)) + grid.nx);
        detail::edt_1d(f, d, v, z);
        for (int ix = 0; ix < grid.nx; ++ix) sq[grid.index(ix, iy)] = d[static_cast<std::size_t>(ix)];
    }
    f.clear();
    for (int ix = 0; ix < grid.nx; ++ix) {
        f.resize(static_cast<std::size_t>(grid.ny));
        for (int iy = 0; iy < grid.ny; ++iy) f[static_cast<std::size_t>(iy)] = sq[grid.index(ix, iy)];
        detail::edt_1d(f, d, v, z);
        for (int iy = 0; iy < grid.ny; ++iy) sq[grid.index(ix, iy)] = d[static_cast<std::size_t>(iy)];
    }

    field.dist.resize(sq.size());
    for (std::size_t i = 0; i < sq.size(); ++i)
        field.dist[i] = std::sqrt(sq[i]) * grid.resolution;
    return field;
}

/// Obstacle source for grid-memory planners. Far from obstacles the
/// cell-center distance field answers; near them it measures to the exact
/// remembered hit points, so passability matches the geometry the labels
/// and the perception-space planner see instead of cell quantization.
struct GridSource {
    const OccupancyGrid* grid{nullptr};
    DistanceField field;

    static constexpr double kNearCut = 0.6;

    [[nodiscard]] double clearance(const Vec2& p) const {
        const double center_dist = field.clearance(p);
        if (center_dist > kNearCut) return center_dist;
        const int reach =
            static_cast<int>(std::ceil((kNearCut + grid->resolution) / grid->resolution));
        const int cx = grid->clamp_x(grid->cell_x(p.x));
        const int cy = grid->clamp_y(grid->cell_y(p.y));
        double best = std::numeric_limits<double>::infinity();
        for (int iy = std::max(0, cy - reach); iy <= std::min(grid->ny - 1, cy + reach); ++iy) {
            for (int ix = std::max(0, cx - reach); ix <= std::min(grid->nx - 1, cx + reach);
                 ++ix) {
                if (grid->at(ix, iy) != CellState::Occupied) continue;
                const std::size_t cell = grid->index(ix, iy);
                const std::uint8_t n = grid->hit_counts[cell];
                if (n == 0) {
                    // Occupied without a measurement: fall back to the center.
                    best = std::min(best, distance(p, grid->cell_center(ix, iy)));
                    continue;
                }
                const Vec2* pts =
                    grid->hit_points.data() + cell * static_cast<std::size_t>(OccupancyGrid::kHitsPerCell);
                for (std::uint8_t i = 0; i < n; ++i) best = std::min(best, distance(p, pts[i]));
            }
        }
        return best == std::numeric_limits<double>::infinity() ? center_dist : best;
    }
};

[[nodiscard]] inline GridSource make_grid_source(const OccupancyGrid& grid) {
    return {&grid, distance_field(grid)};
}

struct GlobalPath {
    std::vector<Vec2> waypoints;  // includes exact start and goal
    double grid_cost{0.0};        // 8-connected cost in meters, pre-shortcut
};

namespace detail {

/// Cells whose center is within `radius` of an occupied cell center.
[[nodiscard]] inline std::vector<std::uint8_t> blocked_mask(const OccupancyGrid& grid,
                                                            double radius) {
    std::vector<std::uint8_t> blocked(grid.cells.size(), 0);
    const int reach = static_cast<int>(std::floor(radius / grid.resolution + 1e-9));
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            if (grid.at(ix, iy) != CellState::Occupied) continue;
            for (int dy = -reach; dy <= reach; ++dy) {
                for (int dx = -reach; dx <= reach; ++dx) {
                    const int jx = ix + dx;
                    const int jy = iy + dy;
                    if (!grid.in_grid(jx, jy)) continue;
                    const double d = std::hypot(dx * grid.resolution, dy * grid.resolution);
                    if (d <= radius) blocked[grid.index(jx, jy)] = 1;
                }
            }
        }
    }
    return blocked;
}

[[nodiscard]] inline bool segment_clear(const OccupancyGrid& grid,
                                        const std::vector<std::uint8_t>& blocked, const Vec2& a,
                                        const Vec2& b) {
    const double len = distance(a, b);
    const int steps = std::max(1, static_cast<int>(std::ceil(len / (grid.resolution * 0.5))));
    for (int s = 0; s <= steps; ++s) {
        const double t = static_cast<double>(s) / steps;
        const Vec2 p = a + (b - a) * t;
        const int ix = grid.clamp_x(grid.cell_x(p.x));
        const int iy = grid.clamp_y(grid.cell_y(p.y));
        if (blocked[grid.index(ix, iy)]) return false;
    }
    return true;
}

}  // namespace detail

/// Shortest 8-connected grid path from start to goal, treating unknown as
/// free and inflating occupied cells by robot_radius, then smoothed by
/// greedy line-of-sight shortcutting. Returns nullopt when no path exists.
[[nodiscard]] inline std::optional<GlobalPath> plan_global(const OccupancyGrid& grid,
                                                           const Vec2& start, const Vec2& goal,
                                                           double robot_radius) {
    const auto blocked = detail::blocked_mask(grid, robot_radius);
    const int sx = grid.clamp_x(grid.cell_x(start.x));
    const int sy = grid.clamp_y(grid.cell_y(start.y));
    const int gx = grid.clamp_x(grid.cell_x(goal.x));
    const int gy = grid.clamp_y(grid.cell_y(goal.y));
    if (blocked[grid.index(sx, sy)] || blocked[grid.index(gx, gy)]) return std::nullopt;

    // A* over cell centers, octile heuristic.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> g_cost(grid.cells.size(), inf);
    std::vector<int> parent(grid.cells.size(), -1);
    auto heuristic = [&](int ix, int iy) {
        const double dx = std::abs(ix - gx) * grid.resolution;
        const double dy = std::abs(iy - gy) * grid.resolution;
        const double lo = std::min(dx, dy);
        const double hi = std::max(dx, dy);
        return (hi - lo) + lo * std::numbers::sqrt2;
    };
    using QueueEntry = std::pair<double, std::size_t>;  // (f, cell index)
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> open;
    g_cost[grid.index(sx, sy)] = 0.0;
    open.push({heuristic(sx, sy), grid.index(sx, sy)});

    const int dxs[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    const int dys[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    const std::size_t goal_idx = grid.index(gx, gy);
    while (!open.empty()) {
        const auto [f, idx] = open.top();
        open.pop();
        if (idx == goal_idx) break;
        const int ix = static_cast<int>(idx % static_cast<std::size_t>(grid.nx));
        const int iy = static_cast<int>(idx / static_cast<std::size_t>(grid.nx));
        if (f > g_cost[idx] + heuristic(ix, iy) + 1e-12) continue;  // stale entry
        for (int n = 0; n < 8; ++n) {
            const int jx = ix + dxs[n];
            const int jy = iy + dys[n];
            if (!grid.in_grid(jx, jy)) continue;
            const std::size_t jdx = grid.index(jx, jy);
            if (blocked[jdx]) continue;
            const double step =
                (n < 4 ? 1.0 : std::numbers::sqrt2) * grid.resolution;
            const double cand = g_cost[idx] + step;
            if (cand < g_cost[jdx] - 1e-12) {
                g_cost[jdx] = cand;
                parent[jdx] = static_cast<int>(idx);
                open.push({cand + heuristic(jx, jy), jdx});
            }
        }
    }
    if (g_cost[goal_idx] == inf) return std::nullopt;

    std::vector<Vec2> cells;
    for (std::size_t idx = goal_idx;;) {
        const int ix = static_cast<int>(idx % static_cast<std::size_t>(grid.nx));
        const int iy = static_cast<int>(idx / static_cast<std::size_t>(grid.nx));
        cells.push_back(grid.cell_center(ix, iy));
        if (parent[idx] < 0) break;
        idx = static_cast<std::size_t>(parent[idx]);
    }
    std::reverse(cells.begin(), cells.end());

    std::vector<Vec2> route;
    route.push_back(start);
    route.insert(route.end(), cells.begin(), cells.end());
    route.push_back(goal);

    GlobalPath path;
    path.grid_cost = g_cost[goal_idx];
    path.waypoints.push_back(route.front());
    std::size_t i = 0;
    while (i + 1 < route.size()) {
        std::size_t j = route.size() - 1;
        while (j > i + 1 && !detail::segment_clear(grid, blocked, route[i], route[j])) --j;
        path.waypoints.push_back(route[j]);
        i = j;
    }
    return path;
}

/// Resample a polyline at (roughly) uniform spacing for nearest-point and
/// lookahead queries.
[[nodiscard]] inline std::vector<Vec2> densify_path(const std::vector<Vec2>& waypoints,
                                                    double spacing) {
    std::vector<Vec2> out;
    if (waypoints.empty()) return out;
    out.push_back(waypoints.front());
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
        const Vec2 a = waypoints[i];
        const Vec2 b = waypoints[i + 1];
        const double len = distance(a, b);
        const int steps = std::max(1, static_cast<int>(std::ceil(len / spacing)));
        for (int s = 1; s <= steps; ++s) {
            out.push_back(a + (b - a) * (static_cast<double>(s) / steps));
        }
    }
    return out;
}

}  // namespace navsieve
