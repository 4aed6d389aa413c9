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

// Command-line front end: optimize, tag, simulate, bench.
// Exit codes: 0 success, 2 infeasible / constraint unmet, 1 anything else.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hybrid_rrt/hybrid_rrt.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hrrt::IoError("cannot write '" + path + "'");
  out << text;
}

json tags_to_json(const hrrt::TagAssignment& t, const std::vector<hrrt::SeedNode>& seeds, double alpha, bool ok) {
  json areas = json::array();
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    areas.push_back({{"id", seeds[i].id},
                     {"col", seeds[i].cell.col},
                     {"row", seeds[i].cell.row},
                     {"distance_sum", t.areas[i].distance_sum},
                     {"area", t.areas[i].area}});
  }
  return json{{"assignment", {{"combinatorial", t.combinatorial_ids}, {"hierarchical", t.hierarchical_ids}}},
              {"areas", areas},
              {"mean", t.mean_combi_area},
              {"alpha", alpha},
              {"eq13_satisfied", ok}};
}

struct OptimizeArgs {
  int n = 0;
  double omega = 0.0;
  std::string models;
  std::string out;
};

int run_optimize(const OptimizeArgs& a) {
  hrrt::ProblemSpec spec{a.n, a.omega, a.models.empty() ? hrrt::ArchModelSet{} : hrrt::load_models(a.models)};
  try {
    const auto s = hrrt::solve_split(spec);
    const json j{{"m", s.m},
                 {"s_total", s.evaluation.s_total},
                 {"p_total", s.evaluation.p_total},
                 {"j", s.evaluation.j},
                 {"feasible", true}};
    write_text(a.out, j.dump(2) + "\n");
    return kExitOk;
  } catch (const hrrt::NoFeasibleSolution& e) {
    const json j{{"m", nullptr}, {"s_total", nullptr}, {"p_total", nullptr}, {"j", nullptr}, {"feasible", false}};
    write_text(a.out, j.dump(2) + "\n");
    std::cerr << "optimize: " << e.what() << '\n';
    return kExitInfeasible;
  }
}

struct TagArgs {
  std::string map;
  int n = 0;
  int m = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  int connectivity = 4;
  double cell_size = 1.0;
  std::string out;
};

int run_tag(const TagArgs& a) {
  const auto grid = hrrt::load_grid(a.map, a.cell_size);
  const auto seeds = hrrt::seed_nodes(grid, a.n, a.seed);
  const auto conn = a.connectivity == 8 ? hrrt::Connectivity::kEight : hrrt::Connectivity::kFour;
  try {
    const auto t = hrrt::assign_tags(grid, seeds, a.m, a.alpha, conn);
    write_text(a.out, tags_to_json(t, seeds, a.alpha, true).dump(2) + "\n");
    return kExitOk;
  } catch (const hrrt::ConstraintUnmet& e) {
    write_text(a.out, tags_to_json(e.assignment(), seeds, a.alpha, false).dump(2) + "\n");
    std::cerr << "tag: " << e.what() << '\n';
    return kExitInfeasible;
  }
}

struct SimulateArgs {
  std::string arch;
  int n = 0;
  std::optional<int> m;
  std::string map;
  std::string kin = "differential";
  int nodes = 1000;
  std::uint64_t seed = 0;
  double omega = 20.0;
  double alpha = 0.001;
  int fifo_depth = 16;
  bool standard_fifo = false;
  std::vector<std::int64_t> attempt_cycles{20, 60};
  std::string models;
  std::string out;
  std::string events;
  std::string trees;
  std::string plot;
};

int run_simulate(const SimulateArgs& a) {
  const auto kind = hrrt::arch_from_string(a.arch);
  const auto model = hrrt::KinematicModel::of(hrrt::kinematic_from_string(a.kin));
  const auto grid = hrrt::load_grid(a.map);
  const auto models = a.models.empty() ? hrrt::ArchModelSet{} : hrrt::load_models(a.models);
  if (a.attempt_cycles.size() != 2) throw hrrt::InvalidArgument("--attempt-cycles needs lo,hi");

  const auto seeds = hrrt::seed_nodes(grid, a.n, a.seed);
  std::vector<hrrt::Cell> roots;
  for (const auto& s : seeds) roots.push_back(s.cell);

  int m = 0;
  std::optional<hrrt::TagAssignment> tags;
  bool tags_ok = true;
  if (kind == hrrt::ArchKind::kHybrid) {
    if (a.m) {
      m = *a.m;
    } else {
      try {
        m = hrrt::solve_split(hrrt::ProblemSpec{a.n, a.omega, models}).m;
      } catch (const hrrt::NoFeasibleSolution& e) {
        std::cerr << "simulate: " << e.what() << '\n';
        return kExitInfeasible;
      }
    }
    try {
      tags = hrrt::assign_tags(grid, seeds, m, a.alpha);
    } catch (const hrrt::ConstraintUnmet& e) {
      std::cerr << "simulate: warning: " << e.what() << '\n';
      tags = e.assignment();
      tags_ok = false;
    }
  }
  auto arch = hrrt::build_architecture(kind, a.n, m, a.fifo_depth, model.dof(), !a.standard_fifo);
  if (tags) arch.set_combinatorial_members(tags->combinatorial_ids);

  hrrt::PlannerWorkload work(grid, model, roots, hrrt::derive_seed(a.seed, {1}),
                             hrrt::AttemptCost{a.attempt_cycles[0], a.attempt_cycles[1]});
  hrrt::SimOptions opts;
  opts.record_events = !a.events.empty();
  const auto trace = hrrt::run_simulation(arch, work, a.nodes, opts);
  const auto speed = hrrt::measure_speedup(arch, work, a.nodes);

  double power = 0.0;
  switch (kind) {
    case hrrt::ArchKind::kHierarchical:
      power = hrrt::hierarchical_power(models, a.n);
      break;
    case hrrt::ArchKind::kCombinatorial:
      power = hrrt::combinatorial_power(models, a.n);
      break;
    case hrrt::ArchKind::kHybrid:
      power = hrrt::evaluate_hybrid(models, a.n, m).p_total;
      break;
  }

  if (!a.events.empty()) {
    std::ofstream out(a.events, std::ios::binary);
    if (!out) throw hrrt::IoError("cannot write event log '" + a.events + "'");
    hrrt::write_event_log(out, trace.events);
  }

  std::vector<hrrt::LabeledTree> labeled;
  for (int i = 0; i < a.n; ++i) {
    std::ostringstream dump;
    // Root plus the committed nodes; later nodes were generated by other runs.
    hrrt::write_tree_dump(dump, work.tree(i), 1 + trace.per_rrt_commits[static_cast<std::size_t>(i)]);
    const bool combi = std::find(arch.combinatorial_rrts.begin(), arch.combinatorial_rrts.end(), i) !=
                       arch.combinatorial_rrts.end();
    if (!a.trees.empty()) {
      std::filesystem::create_directories(a.trees);
      write_text((std::filesystem::path(a.trees) / ("rrt" + std::to_string(i) + ".tree")).string(), dump.str());
    }
    std::istringstream in(dump.str());
    labeled.push_back(hrrt::LabeledTree{i, combi ? "combinatorial" : "hierarchical", hrrt::read_tree_dump(in)});
  }
  if (!a.plot.empty()) hrrt::emit_tree_plot(labeled, grid, a.plot);

  json summary{{"arch", hrrt::to_string(kind)},
               {"n", a.n},
               {"m", kind == hrrt::ArchKind::kHybrid ? json(m) : json(nullptr)},
               {"map", std::filesystem::path(a.map).stem().string()},
               {"kinematics", hrrt::to_string(model.kind)},
               {"nodes", a.nodes},
               {"seed", a.seed},
               {"total_cycles", trace.total_cycles},
               {"t1", speed.t1},
               {"speedup", speed.speedup},
               {"power_model_w", power},
               {"efficiency", hrrt::efficiency(speed.speedup, power)},
               {"per_rrt_commits", trace.per_rrt_commits},
               {"bank_occupancy", trace.bank_occupancy},
               {"combinatorial_rrts", arch.combinatorial_rrts}};
  if (tags) summary["eq13_satisfied"] = tags_ok;
  write_text(a.out, summary.dump(2) + "\n");
  return kExitOk;
}

struct BenchArgs {
  std::string plan;
  std::string out;
  std::string format = "csv";
  bool desk = false;
  bool paper = false;
  int threads = 0;
};

int run_bench(const BenchArgs& a) {
  auto plan = hrrt::load_plan(a.plan);
  if (a.desk) plan.use_desk_scale();
  if (a.paper) plan.use_paper_scale();
  if (a.threads > 0) plan.threads = a.threads;
  const auto format = hrrt::format_from_string(a.format);
  hrrt::BenchmarkHooks hooks;
  hooks.warn = [](const std::string& msg) { std::cerr << "bench: warning: " << msg << '\n'; };
  const auto rows = hrrt::run_benchmark(plan, hooks);
  hrrt::emit_results(rows, format, a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid parallel RRT: models, split optimizer, tagging and architecture simulator"};
  app.require_subcommand(1);

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "Choose the combinatorial/hierarchical split under a power cap");
  optimize->add_option("--n", opt.n, "Total RRT count")->required();
  optimize->add_option("--omega", opt.omega, "Power cap in watts")->required();
  optimize->add_option("--models", opt.models, "Model coefficient file");
  optimize->add_option("--out", opt.out, "Output file (default stdout)");

  TagArgs tag;
  auto* tagc = app.add_subcommand("tag", "Assign seeded RRTs to blocks by BFS exploration area");
  tagc->add_option("--map", tag.map, "Grid file (text or PGM)")->required();
  tagc->add_option("--n", tag.n, "Number of RRTs")->required();
  tagc->add_option("--m", tag.m, "Combinatorial block size")->required();
  tagc->add_option("--alpha", tag.alpha, "Minimum mean area of the combinatorial block")->required();
  tagc->add_option("--seed", tag.seed, "Seed placement RNG seed")->required();
  tagc->add_option("--connectivity", tag.connectivity, "BFS neighbourhood")->check(CLI::IsMember({4, 8}));
  tagc->add_option("--cell-size", tag.cell_size, "Cell edge length in map units");
  tagc->add_option("--out", tag.out, "Output file (default stdout)");

  SimulateArgs sim;
  auto* simc = app.add_subcommand("simulate", "Run one architecture simulation with real RRT workloads");
  simc->add_option("--arch", sim.arch, "hierarchical | combinatorial | hybrid")->required();
  simc->add_option("--n", sim.n, "Number of RRTs")->required();
  simc->add_option("--m", sim.m, "Hybrid combinatorial block size (default: optimizer)");
  simc->add_option("--map", sim.map, "Grid file")->required();
  simc->add_option("--kin", sim.kin, "differential | quadcopter | fixed-wing");
  simc->add_option("--nodes", sim.nodes, "Target committed nodes K");
  simc->add_option("--seed", sim.seed, "RNG seed")->required();
  simc->add_option("--omega", sim.omega, "Power cap used when --m is absent");
  simc->add_option("--alpha", sim.alpha, "Tagging area threshold");
  simc->add_option("--fifo-depth", sim.fifo_depth, "FIFO capacity");
  simc->add_flag("--standard-fifo", sim.standard_fifo, "Add a read cycle per FIFO hop instead of FWFT");
  simc->add_option("--attempt-cycles", sim.attempt_cycles, "Planner attempt cost range lo,hi")->delimiter(',');
  simc->add_option("--models", sim.models, "Model coefficient file");
  simc->add_option("--out", sim.out, "Summary JSON (default stdout)");
  simc->add_option("--events", sim.events, "Write the event log CSV here");
  simc->add_option("--trees", sim.trees, "Directory for per-RRT tree dumps");
  simc->add_option("--plot", sim.plot, "Write labeled tree segments for plotting");

  BenchArgs bench;
  auto* benchc = app.add_subcommand("bench", "Run a benchmark plan");
  benchc->add_option("--plan", bench.plan, "Plan JSON")->required();
  benchc->add_option("--out", bench.out, "Results file")->required();
  benchc->add_option("--format", bench.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  auto* desk = benchc->add_flag("--desk", bench.desk, "K = 1000, R = 30");
  benchc->add_flag("--paper-scale", bench.paper, "K = 10000, R = 1000")->excludes(desk);
  benchc->add_option("--threads", bench.threads, "Worker threads (default: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*optimize) return run_optimize(opt);
    if (*tagc) return run_tag(tag);
    if (*simc) return run_simulate(sim);
    if (*benchc) return run_bench(bench);
  } catch (const hrrt::InfeasiblePlan& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const hrrt::NoFeasibleSolution& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
