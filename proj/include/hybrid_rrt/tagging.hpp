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
 * @file tagging.hpp
 * @brief Splits N RRT seeds into the combinatorial (M) and hierarchical
 *        (N-M) blocks by BFS-estimated exploration area.
 *
 * Each seed's area is A_map / sum(d_r), where d_r is the breadth-first step
 * distance from the seed to free cell r and A_map is the free map area. A seed
 * close to everything (small distance sum) gets a large area. The M seeds with
 * the largest areas go to the combinatorial block, and the assignment is
 * valid when their mean area reaches the user threshold alpha.
 *
 * Unreachable cells are left out of the sum; obstacle cells have no distance.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "hybrid_rrt/error.hpp"
#include "hybrid_rrt/grid.hpp"
#include "hybrid_rrt/rng.hpp"

namespace hrrt {

struct SeedNode {
  int id = 0;
  Cell cell{};
  friend bool operator==(const SeedNode&, const SeedNode&) = default;
};

enum class Connectivity { kFour = 4, kEight = 8 };

/// Step distances from one seed; kUnreachable for obstacles and cut-off cells.
class DistanceField {
 public:
  static constexpr int kUnreachable = -1;

  DistanceField(int width, int height)
      : width_(width), dist_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), kUnreachable) {}

  int at(Cell c) const { return dist_.at(static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.col)); }
  bool reachable(Cell c) const { return at(c) != kUnreachable; }
  const std::vector<int>& values() const noexcept { return dist_; }
  std::vector<int>& values() noexcept { return dist_; }

 private:
  int width_;
  std::vector<int> dist_;
};

struct AreaEstimate {
  int seed_id = 0;
  double distance_sum = 0.0;
  double area = 0.0;
};

struct TagAssignment {
  std::vector<int> combinatorial_ids;
  std::vector<int> hierarchical_ids;
  double mean_combi_area = 0.0;
  std::vector<AreaEstimate> areas;  ///< one per seed, in input order
};

/// Mean area of the top-M seeds fell below alpha. Carries the assignment anyway.
class ConstraintUnmet : public Error {
 public:
  ConstraintUnmet(TagAssignment assignment, double alpha)
      : Error("mean combinatorial area " + std::to_string(assignment.mean_combi_area) + " is below alpha " +
              std::to_string(alpha)),
        assignment_(std::move(assignment)),
        alpha_(alpha) {}

  const TagAssignment& assignment() const noexcept { return assignment_; }
  double mean() const noexcept { return assignment_.mean_combi_area; }
  double alpha() const noexcept { return alpha_; }

 private:
  TagAssignment assignment_;
  double alpha_;
};

inline void check_seed(const OccupancyGrid& grid, const SeedNode& seed) {
  if (!grid.in_bounds(seed.cell)) throw InvalidArgument("seed " + std::to_string(seed.id) + " is out of bounds");
  if (grid.is_obstacle(seed.cell)) throw InvalidArgument("seed " + std::to_string(seed.id) + " is on an obstacle");
}

inline DistanceField bfs_distances(const OccupancyGrid& grid, const SeedNode& seed,
                                   Connectivity connectivity = Connectivity::kFour) {
  check_seed(grid, seed);
  DistanceField field(grid.width(), grid.height());
  auto& dist = field.values();

  static constexpr int kDc[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int kDr[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  const int neighbours = static_cast<int>(connectivity);

  std::queue<Cell> frontier;
  dist[grid.index(seed.cell)] = 0;
  frontier.push(seed.cell);
  while (!frontier.empty()) {
    const Cell c = frontier.front();
    frontier.pop();
    const int d = dist[grid.index(c)];
    for (int k = 0; k < neighbours; ++k) {
      const Cell nb{c.col + kDc[k], c.row + kDr[k]};
      if (!grid.in_bounds(nb) || grid.is_obstacle(nb)) continue;
      auto& slot = dist[grid.index(nb)];
      if (slot != DistanceField::kUnreachable) continue;
      slot = d + 1;
      frontier.push(nb);
    }
  }
  return field;
}

inline AreaEstimate area_from_field(const OccupancyGrid& grid, const DistanceField& field, int seed_id) {
  double sum = 0.0;
  for (int d : field.values())
    if (d > 0) sum += d;
  if (sum == 0.0) throw DegenerateArea("seed " + std::to_string(seed_id) + " reaches no other cell");
  return AreaEstimate{seed_id, sum, grid.free_area() / sum};
}

inline AreaEstimate area_estimate(const OccupancyGrid& grid, const SeedNode& seed,
                                  Connectivity connectivity = Connectivity::kFour) {
  return area_from_field(grid, bfs_distances(grid, seed, connectivity), seed.id);
}

/**
 * Ranks seeds by area (descending, ties by ascending id) and labels the top m
 * combinatorial. Throws ConstraintUnmet, carrying the assignment, when their
 * mean area is below alpha.
 */
inline TagAssignment assign_tags(const OccupancyGrid& grid, const std::vector<SeedNode>& seeds, int m, double alpha,
                                 Connectivity connectivity = Connectivity::kFour) {
  const int n = static_cast<int>(seeds.size());
  if (n < 1) throw InvalidArgument("assign_tags: no seeds");
  if (m < 1 || m > n) throw InvalidArgument("assign_tags: m must lie in [1, N]");
  if (!(alpha > 0.0)) throw InvalidArgument("assign_tags: alpha must be positive");
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    check_seed(grid, seeds[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (seeds[j].id == seeds[i].id) throw InvalidArgument("assign_tags: duplicate seed id");
      if (seeds[j].cell == seeds[i].cell) throw InvalidArgument("assign_tags: two seeds share a cell");
    }
  }

  TagAssignment out;
  out.areas.reserve(seeds.size());
  for (const auto& s : seeds) out.areas.push_back(area_estimate(grid, s, connectivity));

  std::vector<std::size_t> order(seeds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (out.areas[a].area != out.areas[b].area) return out.areas[a].area > out.areas[b].area;
    return seeds[a].id < seeds[b].id;
  });

  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    const auto idx = order[static_cast<std::size_t>(k)];
    if (k < m) {
      out.combinatorial_ids.push_back(seeds[idx].id);
      total += out.areas[idx].area;
    } else {
      out.hierarchical_ids.push_back(seeds[idx].id);
    }
  }
  out.mean_combi_area = total / m;
  if (out.mean_combi_area < alpha) throw ConstraintUnmet(std::move(out), alpha);
  return out;
}

/// Pluggable seed placement: (grid, n, rng seed) -> n distinct free seeds.
using SeedStrategy = std::function<std::vector<SeedNode>(const OccupancyGrid&, int, std::uint64_t)>;

/**
 * Stratified random placement. The grid is cut into rows x cols = n
 * near-equal rectangles (rows the largest divisor of n not above sqrt(n));
 * each stratum contributes one uniformly drawn free cell. A stratum without an
 * unused free cell draws from all remaining free cells instead.
 */
inline std::vector<SeedNode> seed_nodes(const OccupancyGrid& grid, int n, std::uint64_t rng_seed) {
  if (n < 1) throw InvalidArgument("seed_nodes: n must be positive");
  if (n > grid.free_count()) throw InvalidArgument("seed_nodes: n exceeds the free-cell count");

  int rows = 1;
  for (int d = 1; d * d <= n; ++d)
    if (n % d == 0) rows = d;
  int cols = n / rows;
  if (grid.height() > grid.width()) std::swap(rows, cols);

  Rng rng(derive_seed(rng_seed, {0x5eed}));
  std::vector<std::uint8_t> taken(grid.cell_count(), 0);
  std::vector<SeedNode> out;
  out.reserve(static_cast<std::size_t>(n));

  auto draw_from = [&](const std::vector<std::size_t>& pool) {
    const auto pick = pool[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1))];
    taken[pick] = 1;
    out.push_back(SeedNode{static_cast<int>(out.size()), grid.cell_at(pick)});
  };

  std::vector<std::size_t> pool;
  for (int sr = 0; sr < rows; ++sr) {
    for (int sc = 0; sc < cols; ++sc) {
      const int r0 = sr * grid.height() / rows, r1 = (sr + 1) * grid.height() / rows;
      const int c0 = sc * grid.width() / cols, c1 = (sc + 1) * grid.width() / cols;
      pool.clear();
      for (int r = r0; r < r1; ++r)
        for (int c = c0; c < c1; ++c) {
          const auto idx = grid.index({c, r});
          if (!taken[idx] && grid.is_free({c, r})) pool.push_back(idx);
        }
      if (pool.empty()) {
        for (std::size_t idx = 0; idx < grid.cell_count(); ++idx)
          if (!taken[idx] && grid.is_free(grid.cell_at(idx))) pool.push_back(idx);
      }
      draw_from(pool);
    }
  }
  return out;
}

}  // namespace hrrt
