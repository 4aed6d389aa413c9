/*
 * Copyright 2026 The hybrid-rrt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file planner.hpp
 * @brief RRT exploration core: fixed-point states, bucket-grid nearest
 *        neighbour, kinematic extension and segment collision checks.
 *
 * One iteration is sample -> nearest -> extend -> collision check. States are
 * stored quantized (coordinates Q24.8, heading Q3.13); trigonometry runs in
 * double precision and is quantized afterwards.
 *
 * Kinematic models:
 *  - differential: unicycle driven by two wheel speeds,
 *      v = (vl + vr) / 2, w = (vr - vl) / wheel_base
 *  - quadcopter: kinematic point with bounded planar velocity, climb rate
 *    and yaw rate
 *  - fixed-wing: Dubins airplane; speed in [v_min, v_max], turn rate bounded
 *    by v / r_min, bounded flight-path angle. It cannot hover or turn in place.
 *
 * extend() tries a fixed grid of candidate controls (11 levels per control
 * axis by default) and keeps the one whose end position lies closest to the
 * target, preferring lower control effort on ties.
 */

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hybrid_rrt/error.hpp"
#include "hybrid_rrt/fixed_point.hpp"
#include "hybrid_rrt/grid.hpp"
#include "hybrid_rrt/rng.hpp"

namespace hrrt {

inline constexpr double kPi = 3.14159265358979323846;

enum class KinematicKind { kDifferential, kQuadcopter, kFixedWing };

inline std::string to_string(KinematicKind k) {
  switch (k) {
    case KinematicKind::kDifferential:
      return "differential";
    case KinematicKind::kQuadcopter:
      return "quadcopter";
    case KinematicKind::kFixedWing:
      return "fixed-wing";
  }
  return "?";
}

inline KinematicKind kinematic_from_string(const std::string& s) {
  if (s == "differential" || s == "diff") return KinematicKind::kDifferential;
  if (s == "quadcopter" || s == "quad") return KinematicKind::kQuadcopter;
  if (s == "fixed-wing" || s == "fixedwing" || s == "fwa") return KinematicKind::kFixedWing;
  throw InvalidArgument("unknown kinematics '" + s + "'");
}

struct KinematicModel {
  KinematicKind kind = KinematicKind::kDifferential;
  double step_duration = 1.0;  // seconds
  int levels = 11;             // candidate controls per axis

  // differential
  double wheel_speed_max = 6.0;
  double wheel_base = 6.0;
  // quadcopter
  double planar_speed_max = 6.0;
  double climb_rate_max = 2.0;
  double yaw_rate_max = 1.5;
  // fixed-wing
  double airspeed_min = 2.0;
  double airspeed_max = 6.0;
  double min_turn_radius = 5.0;
  double climb_angle_max = 0.3;

  static KinematicModel differential() { return KinematicModel{}; }
  static KinematicModel quadcopter() {
    KinematicModel m;
    m.kind = KinematicKind::kQuadcopter;
    return m;
  }
  static KinematicModel fixed_wing() {
    KinematicModel m;
    m.kind = KinematicKind::kFixedWing;
    return m;
  }
  static KinematicModel of(KinematicKind k) {
    KinematicModel m;
    m.kind = k;
    return m;
  }

  /// Number of position coordinates (2 on the ground, 3 in the air).
  int dims() const noexcept { return kind == KinematicKind::kDifferential ? 2 : 3; }
  /// Degrees of freedom: positions plus heading.
  int dof() const noexcept { return dims() + 1; }

  void validate() const {
    auto pos = [](double v, const char* what) {
      if (!(v > 0.0)) throw InvalidArgument(std::string("kinematics: ") + what + " must be positive");
    };
    pos(step_duration, "step_duration");
    if (levels < 2) throw InvalidArgument("kinematics: need at least 2 control levels");
    switch (kind) {
      case KinematicKind::kDifferential:
        pos(wheel_speed_max, "wheel_speed_max");
        pos(wheel_base, "wheel_base");
        break;
      case KinematicKind::kQuadcopter:
        pos(planar_speed_max, "planar_speed_max");
        pos(climb_rate_max, "climb_rate_max");
        pos(yaw_rate_max, "yaw_rate_max");
        break;
      case KinematicKind::kFixedWing:
        pos(airspeed_min, "airspeed_min");
        pos(airspeed_max, "airspeed_max");
        pos(min_turn_radius, "min_turn_radius");
        pos(climb_angle_max, "climb_angle_max");
        if (airspeed_max < airspeed_min) throw InvalidArgument("kinematics: airspeed_max < airspeed_min");
        break;
    }
  }
};

struct RobotState {
  FixedCoord x{};
  FixedCoord y{};
  FixedCoord z{};
  FixedAngle heading{};
  int dims = 2;

  int dof() const noexcept { return dims + 1; }

  static RobotState from_doubles(double x, double y, double z, double heading, int dims) {
    return RobotState{FixedCoord::from_double(x), FixedCoord::from_double(y),
                      FixedCoord::from_double(dims == 3 ? z : 0.0), angle_from_double(heading), dims};
  }

  friend bool operator==(const RobotState&, const RobotState&) = default;
};

inline bool same_position(const RobotState& a, const RobotState& b) noexcept {
  return a.x == b.x && a.y == b.y && a.z == b.z;
}

/// Euclidean distance over the position coordinates.
inline double position_distance(const RobotState& a, const RobotState& b) noexcept {
  const double dx = a.x.to_double() - b.x.to_double();
  const double dy = a.y.to_double() - b.y.to_double();
  const double dz = a.dims == 3 ? a.z.to_double() - b.z.to_double() : 0.0;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Axis-aligned sampling region; x, y in [min, max), z in [min, max].
struct StateBounds {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
  double z_min = 0.0, z_max = 0.0;

  static StateBounds of_grid(const OccupancyGrid& grid, double z_max = 32.0) {
    return StateBounds{0.0, grid.extent_x(), 0.0, grid.extent_y(), 0.0, z_max};
  }

  bool contains(const RobotState& s) const noexcept {
    const double x = s.x.to_double(), y = s.y.to_double();
    if (x < x_min || y < y_min) return false;
    if (x > x_max || y > y_max) return false;
    if ((x == x_max && x_max > x_min) || (y == y_max && y_max > y_min)) return false;
    if (s.dims == 3) {
      const double z = s.z.to_double();
      if (z < z_min || z > z_max) return false;
    }
    return true;
  }
};

inline RobotState sample_state(const StateBounds& b, int dims, Rng& rng) {
  const double x = rng.uniform(b.x_min, b.x_max);
  const double y = rng.uniform(b.y_min, b.y_max);
  const double z = dims == 3 ? rng.uniform(b.z_min, b.z_max) : 0.0;
  const double h = rng.uniform(-kPi, kPi);
  return RobotState::from_doubles(x, y, z, h, dims);
}

/**
 * Append-only tree with a bucket grid over (x, y) for nearest queries.
 */
class RrtTree {
 public:
  struct Node {
    RobotState state;
    int parent;
  };

  RrtTree(const RobotState& root, const StateBounds& bounds, double bucket_size = 8.0)
      : x0_(bounds.x_min), y0_(bounds.y_min), bucket_(bucket_size) {
    if (!(bucket_size > 0.0)) throw InvalidArgument("tree: bucket size must be positive");
    nx_ = std::max(1, static_cast<int>(std::ceil((bounds.x_max - bounds.x_min) / bucket_size)));
    ny_ = std::max(1, static_cast<int>(std::ceil((bounds.y_max - bounds.y_min) / bucket_size)));
    buckets_.resize(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_));
    nodes_.push_back(Node{root, -1});
    index_node(0);
  }

  int add(const RobotState& state, int parent) {
    if (parent < 0 || parent >= size()) throw InvalidArgument("tree: parent index out of range");
    nodes_.push_back(Node{state, parent});
    index_node(size() - 1);
    return size() - 1;
  }

  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  const Node& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }

  /**
   * Exact nearest node by position. The search box grows ring by ring around
   * the query's bucket until the best distance found is strictly inside the
   * box's inradius (anything outside the box is at least that far), or the
   * box covers the whole grid. Ties go to the lowest index.
   */
  int nearest_box(const RobotState& query) const {
    const double qx = query.x.to_double(), qy = query.y.to_double();
    const int bx = clamp_bx(qx), by = clamp_by(qy);
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();

    auto visit = [&](int cx, int cy) {
      for (int idx : buckets_[static_cast<std::size_t>(cy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(cx)]) {
        const double d = position_distance(nodes_[static_cast<std::size_t>(idx)].state, query);
        if (d < best_d || (d == best_d && idx < best)) {
          best_d = d;
          best = idx;
        }
      }
    };

    for (int r = 0;; ++r) {
      const int x_lo = bx - r, x_hi = bx + r, y_lo = by - r, y_hi = by + r;
      for (int cy = std::max(0, y_lo); cy <= std::min(ny_ - 1, y_hi); ++cy) {
        for (int cx = std::max(0, x_lo); cx <= std::min(nx_ - 1, x_hi); ++cx) {
          if (r > 0 && cx != x_lo && cx != x_hi && cy != y_lo && cy != y_hi) continue;
          visit(cx, cy);
        }
      }
      const bool covers = x_lo <= 0 && y_lo <= 0 && x_hi >= nx_ - 1 && y_hi >= ny_ - 1;
      if (covers) break;
      // Distance from the query to the nearest box side that still has buckets beyond it.
      double inradius = std::numeric_limits<double>::infinity();
      if (x_lo > 0) inradius = std::min(inradius, qx - (x0_ + x_lo * bucket_));
      if (x_hi < nx_ - 1) inradius = std::min(inradius, x0_ + (x_hi + 1) * bucket_ - qx);
      if (y_lo > 0) inradius = std::min(inradius, qy - (y0_ + y_lo * bucket_));
      if (y_hi < ny_ - 1) inradius = std::min(inradius, y0_ + (y_hi + 1) * bucket_ - qy);
      if (best >= 0 && best_d < inradius) break;
    }
    return best;
  }

 private:
  int clamp_bx(double x) const noexcept {
    return std::clamp(static_cast<int>(std::floor((x - x0_) / bucket_)), 0, nx_ - 1);
  }
  int clamp_by(double y) const noexcept {
    return std::clamp(static_cast<int>(std::floor((y - y0_) / bucket_)), 0, ny_ - 1);
  }
  void index_node(int i) {
    const auto& s = nodes_[static_cast<std::size_t>(i)].state;
    const int bx = clamp_bx(s.x.to_double()), by = clamp_by(s.y.to_double());
    buckets_[static_cast<std::size_t>(by) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(bx)].push_back(i);
  }

  std::vector<Node> nodes_;
  std::vector<std::vector<int>> buckets_;
  double x0_, y0_, bucket_;
  int nx_ = 1, ny_ = 1;
};

inline int nearest_box(const RrtTree& tree, const RobotState& query) { return tree.nearest_box(query); }

namespace detail {

inline double level(int k, int levels, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(levels - 1);
}

/// Planar motion over one step at speed v and turn rate w starting at heading h.
inline void integrate_arc(double v, double w, double h, double dt, double& dx, double& dy) {
  if (std::abs(w) < 1e-12) {
    dx = v * std::cos(h) * dt;
    dy = v * std::sin(h) * dt;
  } else {
    dx = v / w * (std::sin(h + w * dt) - std::sin(h));
    dy = -v / w * (std::cos(h + w * dt) - std::cos(h));
  }
}

struct Candidate {
  RobotState state;
  double distance = std::numeric_limits<double>::infinity();
  double effort = std::numeric_limits<double>::infinity();
  bool valid = false;

  void offer(const RobotState& s, double d, double e) {
    if (!valid || d < distance || (d == distance && e < effort)) {
      state = s;
      distance = d;
      effort = e;
      valid = true;
    }
  }
};

inline double angle_gap(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * kPi)); }

}  // namespace detail

/**
 * One kinematic step from `from` toward `toward`. Returns std::nullopt
 * (blocked) when no candidate control keeps the robot inside `bounds`.
 */
inline std::optional<RobotState> extend(const KinematicModel& model, const RobotState& from, const RobotState& toward,
                                        const StateBounds& bounds) {
  const int dims = model.dims();
  if (from.dims != dims) throw InvalidArgument("extend: state dimension does not match the kinematic model");
  const double x = from.x.to_double(), y = from.y.to_double(), z = from.z.to_double();
  const double h = from.heading.to_double();
  const double dt = model.step_duration;
  const int L = model.levels;
  detail::Candidate best;

  auto consider = [&](double nx, double ny, double nz, double nh, double effort) {
    const auto s = RobotState::from_doubles(nx, ny, nz, nh, dims);
    if (!bounds.contains(s)) return;
    best.offer(s, position_distance(s, toward), effort);
  };

  switch (model.kind) {
    case KinematicKind::kDifferential: {
      const double vm = model.wheel_speed_max;
      for (int i = 0; i < L; ++i) {
        for (int j = 0; j < L; ++j) {
          const double vl = detail::level(i, L, -vm, vm), vr = detail::level(j, L, -vm, vm);
          const double v = 0.5 * (vl + vr), w = (vr - vl) / model.wheel_base;
          double dx, dy;
          detail::integrate_arc(v, w, h, dt, dx, dy);
          consider(x + dx, y + dy, 0.0, h + w * dt, std::abs(vl) + std::abs(vr));
        }
      }
      break;
    }
    case KinematicKind::kQuadcopter: {
      // Position and yaw decouple: pick the planar velocity and climb rate by
      // distance, then the yaw rate that best faces the direction of travel.
      const double vm = model.planar_speed_max;
      const double tz = toward.z.to_double();
      double climb = 0.0, climb_err = std::numeric_limits<double>::infinity();
      for (int k = 0; k < L; ++k) {
        const double c = detail::level(k, L, -model.climb_rate_max, model.climb_rate_max);
        const double nz = z + c * dt;
        if (nz < bounds.z_min || nz > bounds.z_max) continue;
        const double err = std::abs(tz - nz);
        if (err < climb_err || (err == climb_err && std::abs(c) < std::abs(climb))) {
          climb_err = err;
          climb = c;
        }
      }
      if (!std::isfinite(climb_err)) return std::nullopt;
      for (int i = 0; i < L; ++i) {
        for (int j = 0; j < L; ++j) {
          const double vx = detail::level(i, L, -vm, vm), vy = detail::level(j, L, -vm, vm);
          if (vx * vx + vy * vy > vm * vm * (1.0 + 1e-12)) continue;
          consider(x + vx * dt, y + vy * dt, z + climb * dt, h, std::hypot(vx, vy) + std::abs(climb));
        }
      }
      if (!best.valid) return std::nullopt;
      const double dxp = best.state.x.to_double() - x, dyp = best.state.y.to_double() - y;
      const double want = (dxp == 0.0 && dyp == 0.0) ? h : std::atan2(dyp, dxp);
      double yaw = h, yaw_err = std::numeric_limits<double>::infinity();
      for (int k = 0; k < L; ++k) {
        const double r = detail::level(k, L, -model.yaw_rate_max, model.yaw_rate_max);
        const double err = detail::angle_gap(want, h + r * dt);
        if (err < yaw_err - 1e-15) {
          yaw_err = err;
          yaw = h + r * dt;
        }
      }
      best.state.heading = angle_from_double(yaw);
      break;
    }
    case KinematicKind::kFixedWing: {
      for (int a = 0; a < L; ++a) {
        const double v = detail::level(a, L, model.airspeed_min, model.airspeed_max);
        for (int g = 0; g < L; ++g) {
          const double gamma = detail::level(g, L, -model.climb_angle_max, model.climb_angle_max);
          const double vh = v * std::cos(gamma), nz = z + v * std::sin(gamma) * dt;
          // Horizontal turn radius vh / w never drops below min_turn_radius.
          const double w_max = vh / model.min_turn_radius;
          for (int t = 0; t < L; ++t) {
            const double w = detail::level(t, L, -w_max, w_max);
            double dx, dy;
            detail::integrate_arc(vh, w, h, dt, dx, dy);
            consider(x + dx, y + dy, nz, h + w * dt, v + std::abs(gamma) + std::abs(w));
          }
        }
      }
      break;
    }
  }
  if (!best.valid) return std::nullopt;
  return best.state;
}

/**
 * True iff the (x, y) segment from a to b crosses only free cells. Every cell
 * the segment touches is visited; passing exactly through a cell corner also
 * checks both side cells.
 */
inline bool collision_free(const OccupancyGrid& grid, const RobotState& a, const RobotState& b) {
  const double cs = grid.cell_size();
  const double x0 = a.x.to_double() / cs, y0 = a.y.to_double() / cs;
  const double x1 = b.x.to_double() / cs, y1 = b.y.to_double() / cs;
  const Cell start{static_cast<int>(std::floor(x0)), static_cast<int>(std::floor(y0))};
  const Cell end{static_cast<int>(std::floor(x1)), static_cast<int>(std::floor(y1))};
  if (!grid.in_bounds(start) || !grid.in_bounds(end)) throw InvalidArgument("collision_free: endpoint outside the map");

  const double dx = x1 - x0, dy = y1 - y0;
  const int step_x = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int step_y = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double t_delta_x = step_x ? 1.0 / std::abs(dx) : kInf;
  const double t_delta_y = step_y ? 1.0 / std::abs(dy) : kInf;
  double t_max_x = step_x > 0 ? (start.col + 1 - x0) / dx : (step_x < 0 ? (x0 - start.col) / -dx : kInf);
  double t_max_y = step_y > 0 ? (start.row + 1 - y0) / dy : (step_y < 0 ? (y0 - start.row) / -dy : kInf);

  auto blocked = [&](Cell c) { return grid.in_bounds(c) && grid.is_obstacle(c); };
  Cell c = start;
  const int max_steps = std::abs(end.col - start.col) + std::abs(end.row - start.row) + 2;
  for (int i = 0; i <= max_steps; ++i) {
    if (blocked(c)) return false;
    if (c == end) return true;
    if (t_max_x < t_max_y) {
      c.col += step_x;
      t_max_x += t_delta_x;
    } else if (t_max_y < t_max_x) {
      c.row += step_y;
      t_max_y += t_delta_y;
    } else {
      if (blocked({c.col + step_x, c.row}) || blocked({c.col, c.row + step_y})) return false;
      c.col += step_x;
      c.row += step_y;
      t_max_x += t_delta_x;
      t_max_y += t_delta_y;
    }
    if (std::min(t_max_x, t_max_y) > 1.0 + 1e-9 && c != end) {
      // Rounding left us one cell short of the end; the end cell decides.
      return !blocked(end);
    }
  }
  return !blocked(end);
}

/**
 * One full iteration. Returns the committed node index, or std::nullopt when
 * the extension is blocked, collides, or makes no progress.
 */
inline std::optional<int> rrt_step(RrtTree& tree, const OccupancyGrid& grid, const KinematicModel& model,
                                   const StateBounds& bounds, Rng& rng) {
  const auto sample = sample_state(bounds, model.dims(), rng);
  const int near = tree.nearest_box(sample);
  const auto& from = tree.node(near).state;
  const auto next = extend(model, from, sample, bounds);
  if (!next || same_position(*next, from)) return std::nullopt;
  if (!collision_free(grid, from, *next)) return std::nullopt;
  return tree.add(*next, near);
}

/// A planner instance: its own tree, random stream and kinematics.
class RrtExplorer {
 public:
  RrtExplorer(const OccupancyGrid& grid, const KinematicModel& model, const RobotState& root, std::uint64_t seed,
              const StateBounds& bounds)
      : grid_(&grid), model_(model), bounds_(bounds), tree_(root, bounds), rng_(seed) {
    model_.validate();
  }

  std::optional<int> step() { return rrt_step(tree_, *grid_, model_, bounds_, rng_); }

  const RrtTree& tree() const noexcept { return tree_; }
  Rng& rng() noexcept { return rng_; }
  const KinematicModel& model() const noexcept { return model_; }

 private:
  const OccupancyGrid* grid_;
  KinematicModel model_;
  StateBounds bounds_;
  RrtTree tree_;
  Rng rng_;
};

/// Length of the free straight run from (x, y) along `heading`, capped at max_len.
inline double free_ray_length(const OccupancyGrid& grid, double x, double y, double heading, double max_len) {
  const double step = 0.25 * grid.cell_size();
  const double dx = std::cos(heading) * step, dy = std::sin(heading) * step;
  double len = 0.0;
  while (len < max_len) {
    const Cell c = grid.cell_of(x + dx * (len / step + 1.0), y + dy * (len / step + 1.0));
    if (!grid.in_bounds(c) || grid.is_obstacle(c)) break;
    len += step;
  }
  return len;
}

/**
 * Root state at the centre of a grid cell, z mid-range for aircraft. The
 * heading points down the longest free ray of 16 compass directions, so a
 * vehicle that cannot turn in place does not start nose-first into a wall.
 */
inline RobotState root_at_cell(const OccupancyGrid& grid, Cell c, const KinematicModel& model,
                               const StateBounds& bounds) {
  const double cs = grid.cell_size();
  const double x = (c.col + 0.5) * cs, y = (c.row + 0.5) * cs;
  double heading = 0.0, best = -1.0;
  for (int k = 0; k < 16; ++k) {
    const double h = k * kPi / 8.0;
    const double len = free_ray_length(grid, x, y, h, 64.0 * cs);
    if (len > best) {
      best = len;
      heading = h;
    }
  }
  return RobotState::from_doubles(x, y, 0.5 * (bounds.z_min + bounds.z_max), heading, model.dims());
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// One line per node: `id parent x y [z] heading`; the root's parent is -1.
/// A non-negative max_nodes keeps only that many leading nodes.
inline void write_tree_dump(std::ostream& out, const RrtTree& tree, int max_nodes = -1) {
  const int count = max_nodes < 0 ? tree.size() : std::min(max_nodes, tree.size());
  for (int i = 0; i < count; ++i) {
    const auto& n = tree.node(i);
    out << i << ' ' << n.parent << ' ' << detail::format_double(n.state.x.to_double()) << ' '
        << detail::format_double(n.state.y.to_double());
    if (n.state.dims == 3) out << ' ' << detail::format_double(n.state.z.to_double());
    out << ' ' << detail::format_double(n.state.heading.to_double()) << '\n';
  }
}

struct DumpNode {
  int id = 0;
  int parent = -1;
  std::vector<double> values;  ///< positions then angles
};

inline std::vector<DumpNode> read_tree_dump(std::istream& in) {
  std::vector<DumpNode> nodes;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    DumpNode n;
    if (!(ls >> n.id >> n.parent)) throw InvalidArgument("tree dump: malformed line '" + line + "'");
    double v;
    while (ls >> v) n.values.push_back(v);
    if (n.values.size() < 3) throw InvalidArgument("tree dump: too few values in '" + line + "'");
    if (n.parent >= static_cast<int>(nodes.size()) || n.id != static_cast<int>(nodes.size()))
      throw InvalidArgument("tree dump: ids must be consecutive and parents earlier");
    nodes.push_back(std::move(n));
  }
  return nodes;
}

}  // namespace hrrt
