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
 * @file bench.hpp
 * @brief Benchmark pipeline: seed, tag, split, simulate, aggregate, emit.
 *
 * A row is one (architecture, n, map, kinematics) combination. Every
 * repetition builds one planner workload per (n, map, kinematics) and runs
 * all requested architectures on it, so the architectures always see the
 * same node-generation times. Rows run on a thread pool; output order is the
 * sort order (arch, n, map, kinematics), independent of scheduling.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "hybrid_rrt/archsim.hpp"
#include "hybrid_rrt/error.hpp"
#include "hybrid_rrt/grid.hpp"
#include "hybrid_rrt/optimizer.hpp"
#include "hybrid_rrt/perf_models.hpp"
#include "hybrid_rrt/planner.hpp"
#include "hybrid_rrt/tagging.hpp"

namespace hrrt {

struct BenchmarkPlan {
  std::vector<ArchKind> architectures{ArchKind::kHierarchical, ArchKind::kCombinatorial, ArchKind::kHybrid};
  std::vector<int> n_values{4, 16, 32, 64};
  std::vector<std::string> maps;
  std::vector<KinematicKind> kinematics{KinematicKind::kDifferential};
  int target_nodes = 10000;
  int repetitions = 1000;
  double omega = 20.0;
  double alpha = 0.001;
  std::uint64_t rng_seed = 1;
  int fifo_depth = 16;
  AttemptCost attempt_cost{};
  std::string models_path;  ///< empty: built-in fits
  int threads = 0;          ///< 0: hardware concurrency

  void use_desk_scale() {
    target_nodes = 1000;
    repetitions = 30;
  }
  void use_paper_scale() {
    target_nodes = 10000;
    repetitions = 1000;
  }

  void validate() const {
    if (architectures.empty()) throw InvalidArgument("plan: no architectures");
    if (n_values.empty()) throw InvalidArgument("plan: no n values");
    for (int n : n_values)
      if (n < 1) throw InvalidArgument("plan: n values must be positive");
    if (maps.empty()) throw InvalidArgument("plan: no maps");
    if (kinematics.empty()) throw InvalidArgument("plan: no kinematics");
    if (target_nodes < 1) throw InvalidArgument("plan: target_nodes must be at least 1");
    if (repetitions < 1) throw InvalidArgument("plan: repetitions must be at least 1");
    if (!(omega > 0.0)) throw InvalidArgument("plan: omega must be positive");
    if (!(alpha > 0.0)) throw InvalidArgument("plan: alpha must be positive");
    if (fifo_depth < 1) throw InvalidArgument("plan: fifo_depth must be at least 1");
    if (attempt_cost.lo < 1 || attempt_cost.hi < attempt_cost.lo) throw InvalidArgument("plan: bad attempt cost");
  }
};

/// Reads a JSON plan. Relative map and model paths resolve against base_dir.
inline BenchmarkPlan parse_plan(const std::string& text, const std::filesystem::path& base_dir = {}) {
  BenchmarkPlan plan;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("plan: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("plan: top level must be an object");
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return (path.is_relative() && !base_dir.empty() ? base_dir / path : path).string();
  };
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const auto& key = it.key();
      const auto& v = it.value();
      if (key == "architectures") {
        plan.architectures.clear();
        for (const auto& a : v) plan.architectures.push_back(arch_from_string(a.get<std::string>()));
      } else if (key == "n_values") {
        plan.n_values = v.get<std::vector<int>>();
      } else if (key == "maps") {
        plan.maps.clear();
        for (const auto& m : v) plan.maps.push_back(resolve(m.get<std::string>()));
      } else if (key == "kinematics") {
        plan.kinematics.clear();
        for (const auto& k : v) plan.kinematics.push_back(kinematic_from_string(k.get<std::string>()));
      } else if (key == "target_nodes") {
        plan.target_nodes = v.get<int>();
      } else if (key == "repetitions") {
        plan.repetitions = v.get<int>();
      } else if (key == "omega") {
        plan.omega = v.get<double>();
      } else if (key == "alpha") {
        plan.alpha = v.get<double>();
      } else if (key == "rng_seed") {
        plan.rng_seed = v.get<std::uint64_t>();
      } else if (key == "fifo_depth") {
        plan.fifo_depth = v.get<int>();
      } else if (key == "attempt_cycles") {
        const auto range = v.get<std::vector<std::int64_t>>();
        if (range.size() != 2) throw InvalidArgument("plan: attempt_cycles needs [lo, hi]");
        plan.attempt_cost = AttemptCost{range[0], range[1]};
      } else if (key == "models") {
        plan.models_path = resolve(v.get<std::string>());
      } else if (key == "threads") {
        plan.threads = v.get<int>();
      } else {
        throw InvalidArgument("plan: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("plan: ") + e.what());
  }
  plan.validate();
  return plan;
}

inline BenchmarkPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open plan '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_plan(ss.str(), std::filesystem::path(path).parent_path());
}

struct BenchmarkRow {
  std::string arch;
  int n = 0;
  std::string map;
  std::string kinematics;
  double speedup_mean = 0.0;
  double speedup_stddev = 0.0;
  double power_model_w = 0.0;
  double efficiency = 0.0;
  std::optional<int> m_chosen;

  friend bool operator==(const BenchmarkRow&, const BenchmarkRow&) = default;
};

struct BenchmarkHooks {
  std::function<void(const std::string&)> warn;
};

namespace detail {

inline std::string map_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

/// FNV-1a; a stable stream id for a map regardless of its position in the plan.
inline std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;
};

/// Mean and sample standard deviation (0 for a single value).
inline Aggregate aggregate(const std::vector<double>& xs) {
  Aggregate a;
  for (double x : xs) a.mean += x;
  a.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - a.mean) * (x - a.mean);
    a.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return a;
}

}  // namespace detail

/// Seed cells shared by every architecture and repetition for one (n, map).
inline std::vector<SeedNode> bench_seeds(const BenchmarkPlan& plan, const OccupancyGrid& grid, const std::string& map,
                                         int n) {
  return seed_nodes(grid, n,
                    derive_seed(plan.rng_seed, {detail::name_hash(detail::map_name(map)), static_cast<std::uint64_t>(n)}));
}

/// Planner stream of one repetition; identical across architectures.
inline std::uint64_t bench_workload_seed(const BenchmarkPlan& plan, const std::string& map, int n, KinematicKind kin,
                                         int rep) {
  return derive_seed(plan.rng_seed, {detail::name_hash(detail::map_name(map)), static_cast<std::uint64_t>(n),
                                     static_cast<std::uint64_t>(kin), static_cast<std::uint64_t>(rep), 0x77});
}

inline std::vector<BenchmarkRow> run_benchmark(const BenchmarkPlan& plan, const BenchmarkHooks& hooks = {}) {
  plan.validate();
  const ArchModelSet models = plan.models_path.empty() ? ArchModelSet{} : load_models(plan.models_path);

  std::vector<OccupancyGrid> grids;
  for (const auto& m : plan.maps) grids.push_back(load_grid(m));

  // Hybrid splits depend on n only; resolve them before any simulation.
  std::vector<int> split(plan.n_values.size(), 0);
  const bool want_hybrid =
      std::find(plan.architectures.begin(), plan.architectures.end(), ArchKind::kHybrid) != plan.architectures.end();
  if (want_hybrid) {
    for (std::size_t i = 0; i < plan.n_values.size(); ++i) {
      try {
        split[i] = solve_split(ProblemSpec{plan.n_values[i], plan.omega, models}).m;
      } catch (const NoFeasibleSolution&) {
        throw InfeasiblePlan("power cap " + std::to_string(plan.omega) + " W admits no split for n = " +
                             std::to_string(plan.n_values[i]));
      }
    }
  }

  struct Group {
    std::size_t n_idx, map_idx, kin_idx;
  };
  std::vector<Group> groups;
  for (std::size_t a = 0; a < plan.n_values.size(); ++a)
    for (std::size_t b = 0; b < plan.maps.size(); ++b)
      for (std::size_t c = 0; c < plan.kinematics.size(); ++c) groups.push_back({a, b, c});

  std::vector<std::vector<BenchmarkRow>> results(groups.size());
  std::mutex warn_mutex;
  auto warn = [&](const std::string& msg) {
    if (!hooks.warn) return;
    std::lock_guard<std::mutex> lock(warn_mutex);
    hooks.warn(msg);
  };

  auto run_group = [&](std::size_t gi) {
    const auto& g = groups[gi];
    const int n = plan.n_values[g.n_idx];
    const auto& map = plan.maps[g.map_idx];
    const auto& grid = grids[g.map_idx];
    const auto kin = plan.kinematics[g.kin_idx];
    const auto model = KinematicModel::of(kin);

    const auto seeds = bench_seeds(plan, grid, map, n);
    std::vector<Cell> roots;
    for (const auto& s : seeds) roots.push_back(s.cell);

    std::vector<Architecture> archs;
    for (auto kind : plan.architectures) {
      const int m = kind == ArchKind::kHybrid ? split[g.n_idx] : 0;
      auto arch = build_architecture(kind, n, m, plan.fifo_depth, model.dof());
      if (kind == ArchKind::kHybrid) {
        TagAssignment tags;
        try {
          tags = assign_tags(grid, seeds, m, plan.alpha);
        } catch (const ConstraintUnmet& e) {
          warn("n=" + std::to_string(n) + " map=" + detail::map_name(map) + ": " + e.what() +
               "; keeping the top-" + std::to_string(m) + " assignment");
          tags = e.assignment();
        }
        arch.set_combinatorial_members(tags.combinatorial_ids);
      }
      archs.push_back(std::move(arch));
    }

    std::vector<std::vector<double>> speedups(archs.size());
    for (int rep = 0; rep < plan.repetitions; ++rep) {
      PlannerWorkload work(grid, model, roots, bench_workload_seed(plan, map, n, kin, rep), plan.attempt_cost);
      for (std::size_t a = 0; a < archs.size(); ++a)
        speedups[a].push_back(measure_speedup(archs[a], work, plan.target_nodes).speedup);
    }

    for (std::size_t a = 0; a < archs.size(); ++a) {
      BenchmarkRow row;
      row.arch = to_string(archs[a].kind);
      row.n = n;
      row.map = detail::map_name(map);
      row.kinematics = to_string(kin);
      const auto agg = detail::aggregate(speedups[a]);
      row.speedup_mean = agg.mean;
      row.speedup_stddev = agg.stddev;
      switch (archs[a].kind) {
        case ArchKind::kHierarchical:
          row.power_model_w = hierarchical_power(models, n);
          break;
        case ArchKind::kCombinatorial:
          row.power_model_w = combinatorial_power(models, n);
          break;
        case ArchKind::kHybrid:
          row.power_model_w = evaluate_hybrid(models, n, archs[a].m).p_total;
          row.m_chosen = archs[a].m;
          break;
      }
      row.efficiency = efficiency(row.speedup_mean, row.power_model_w);
      results[gi].push_back(row);
    }
  };

  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int workers = std::min<int>(plan.threads > 0 ? plan.threads : hw, static_cast<int>(groups.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(groups.size());
  auto worker = [&]() {
    for (std::size_t gi = next++; gi < groups.size(); gi = next++) {
      try {
        run_group(gi);
      } catch (...) {
        failures[gi] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  std::vector<BenchmarkRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  std::sort(rows.begin(), rows.end(), [](const BenchmarkRow& a, const BenchmarkRow& b) {
    return std::tie(a.arch, a.n, a.map, a.kinematics) < std::tie(b.arch, b.n, b.map, b.kinematics);
  });
  return rows;
}

namespace detail {

inline std::string sig6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline double round6(double v) { return std::stod(sig6(v)); }

}  // namespace detail

inline void write_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows) {
  out << "arch,n,map,kinematics,speedup_mean,speedup_stddev,power_model_w,efficiency,m_chosen\n";
  for (const auto& r : rows) {
    out << r.arch << ',' << r.n << ',' << r.map << ',' << r.kinematics << ',' << detail::sig6(r.speedup_mean) << ','
        << detail::sig6(r.speedup_stddev) << ',' << detail::sig6(r.power_model_w) << ','
        << detail::sig6(r.efficiency) << ',';
    if (r.m_chosen) out << *r.m_chosen;
    out << '\n';
  }
}

inline nlohmann::json rows_to_json(const std::vector<BenchmarkRow>& rows) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json o;
    o["arch"] = r.arch;
    o["n"] = r.n;
    o["map"] = r.map;
    o["kinematics"] = r.kinematics;
    o["speedup_mean"] = detail::round6(r.speedup_mean);
    o["speedup_stddev"] = detail::round6(r.speedup_stddev);
    o["power_model_w"] = detail::round6(r.power_model_w);
    o["efficiency"] = detail::round6(r.efficiency);
    o["m_chosen"] = r.m_chosen ? nlohmann::json(*r.m_chosen) : nlohmann::json(nullptr);
    arr.push_back(o);
  }
  return arr;
}

inline std::vector<BenchmarkRow> rows_from_json(const nlohmann::json& arr) {
  std::vector<BenchmarkRow> rows;
  try {
    for (const auto& o : arr) {
      BenchmarkRow r;
      r.arch = o.at("arch").get<std::string>();
      r.n = o.at("n").get<int>();
      r.map = o.at("map").get<std::string>();
      r.kinematics = o.at("kinematics").get<std::string>();
      r.speedup_mean = o.at("speedup_mean").get<double>();
      r.speedup_stddev = o.at("speedup_stddev").get<double>();
      r.power_model_w = o.at("power_model_w").get<double>();
      r.efficiency = o.at("efficiency").get<double>();
      if (!o.at("m_chosen").is_null()) r.m_chosen = o.at("m_chosen").get<int>();
      rows.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("results: ") + e.what());
  }
  return rows;
}

/// Same row rendered at output precision; what a CSV/JSON reader gets back.
inline BenchmarkRow rounded(BenchmarkRow r) {
  r.speedup_mean = detail::round6(r.speedup_mean);
  r.speedup_stddev = detail::round6(r.speedup_stddev);
  r.power_model_w = detail::round6(r.power_model_w);
  r.efficiency = detail::round6(r.efficiency);
  return r;
}

enum class ResultFormat { kCsv, kJson };

inline ResultFormat format_from_string(const std::string& s) {
  if (s == "csv") return ResultFormat::kCsv;
  if (s == "json") return ResultFormat::kJson;
  throw InvalidArgument("unknown format '" + s + "'");
}

inline void emit_results(const std::vector<BenchmarkRow>& rows, ResultFormat format, const std::string& path) {
  if (rows.empty()) throw InvalidArgument("emit_results: no rows");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write results to '" + path + "'");
  if (format == ResultFormat::kCsv) {
    write_csv(out, rows);
  } else {
    out << rows_to_json(rows).dump(2) << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

/// One exploration tree and the block its RRT belonged to.
struct LabeledTree {
  int rrt_id = 0;
  std::string label;  ///< "combinatorial" or "hierarchical"
  std::vector<DumpNode> nodes;
};

/**
 * Plot-ready segments, one row per node:
 * `rrt,label,id,parent,x,y,parent_x,parent_y`. A root points at itself.
 */
inline void write_tree_plot(std::ostream& out, const std::vector<LabeledTree>& trees, const OccupancyGrid& grid) {
  out << "rrt,label,id,parent,x,y,parent_x,parent_y\n";
  for (const auto& t : trees) {
    for (const auto& n : t.nodes) {
      const double x = n.values[0], y = n.values[1];
      if (x < 0 || y < 0 || x >= grid.extent_x() || y >= grid.extent_y())
        throw InvalidArgument("tree plot: node " + std::to_string(n.id) + " of RRT " + std::to_string(t.rrt_id) +
                              " lies outside the map");
      const auto& p = n.parent >= 0 ? t.nodes[static_cast<std::size_t>(n.parent)] : n;
      out << t.rrt_id << ',' << t.label << ',' << n.id << ',' << n.parent << ',' << detail::format_double(x) << ','
          << detail::format_double(y) << ',' << detail::format_double(p.values[0]) << ','
          << detail::format_double(p.values[1]) << '\n';
    }
  }
}

inline void emit_tree_plot(const std::vector<LabeledTree>& trees, const OccupancyGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write tree plot to '" + path + "'");
  write_tree_plot(out, trees, grid);
}

}  // namespace hrrt
