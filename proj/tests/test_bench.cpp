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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hybrid_rrt/bench.hpp"

namespace {

using namespace hrrt;
namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  // ctest runs tests as parallel processes; keep their files apart.
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const auto dir = fs::path(::testing::TempDir()) / "hrrt_bench" / (std::string(info->test_suite_name()) + "." + info->name());
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path small_map() {
  const auto p = scratch("small.map");
  std::ofstream(p) << std::string(40, '.') + "\n" + std::string(40, '.') + "\n" +
                          std::string(15, '.') + std::string(10, '#') + std::string(15, '.') + "\n" +
                          std::string(40, '.') + "\n" + std::string(40, '.') + "\n";
  return p;
}

BenchmarkPlan tiny_plan() {
  BenchmarkPlan p;
  p.maps = {small_map().string()};
  p.n_values = {2, 4};
  p.target_nodes = 60;
  p.repetitions = 3;
  p.omega = 20;
  p.threads = 2;
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + HRRT_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Plan, ParsesAllKeys) {
  const auto plan = parse_plan(R"({"architectures": ["hybrid", "combinatorial"], "n_values": [4, 8],
      "maps": ["a.map", "/abs/b.map"], "kinematics": ["quadcopter", "fixed-wing"], "target_nodes": 50,
      "repetitions": 2, "omega": 12.5, "alpha": 0.5, "rng_seed": 9, "fifo_depth": 4,
      "attempt_cycles": [3, 7], "models": "m.conf", "threads": 3})",
                               "/base");
  EXPECT_EQ(plan.architectures, (std::vector<ArchKind>{ArchKind::kHybrid, ArchKind::kCombinatorial}));
  EXPECT_EQ(plan.n_values, (std::vector<int>{4, 8}));
  EXPECT_EQ(plan.maps, (std::vector<std::string>{"/base/a.map", "/abs/b.map"}));
  EXPECT_EQ(plan.kinematics, (std::vector<KinematicKind>{KinematicKind::kQuadcopter, KinematicKind::kFixedWing}));
  EXPECT_EQ(plan.target_nodes, 50);
  EXPECT_EQ(plan.repetitions, 2);
  EXPECT_DOUBLE_EQ(plan.omega, 12.5);
  EXPECT_EQ(plan.rng_seed, 9u);
  EXPECT_EQ(plan.fifo_depth, 4);
  EXPECT_EQ(plan.attempt_cost.lo, 3);
  EXPECT_EQ(plan.attempt_cost.hi, 7);
  EXPECT_EQ(plan.models_path, "/base/m.conf");
  EXPECT_EQ(plan.threads, 3);
}

TEST(Plan, RejectsBadInput) {
  EXPECT_THROW(parse_plan("{"), InvalidArgument);
  EXPECT_THROW(parse_plan("[]"), InvalidArgument);
  EXPECT_THROW(parse_plan(R"({"maps": ["a"], "speed": 1})"), InvalidArgument);
  EXPECT_THROW(parse_plan(R"({"n_values": [4]})"), InvalidArgument);
  EXPECT_THROW(parse_plan(R"({"maps": ["a"], "n_values": [0]})"), InvalidArgument);
  EXPECT_THROW(parse_plan(R"({"maps": ["a"], "architectures": ["systolic"]})"), InvalidArgument);
  EXPECT_THROW(parse_plan(R"({"maps": ["a"], "kinematics": ["boat"]})"), InvalidArgument);
  EXPECT_THROW(parse_plan(R"({"maps": ["a"], "attempt_cycles": [5]})"), InvalidArgument);
  EXPECT_THROW(parse_plan(R"({"maps": ["a"], "omega": "high"})"), InvalidArgument);
  EXPECT_THROW(load_plan(scratch("missing.json").string()), IoError);
}

TEST(Plan, BundledDeskPlanLoads) {
  const auto plan = load_plan(std::string(HRRT_SOURCE_DIR) + "/configs/desk_plan.json");
  EXPECT_EQ(plan.n_values, (std::vector<int>{4, 8, 16}));
  EXPECT_EQ(plan.maps.size(), 3u);
  EXPECT_EQ(plan.kinematics.size(), 3u);
  for (const auto& m : plan.maps) EXPECT_TRUE(fs::exists(m)) << m;
}

TEST(Bench, SingleRrtSpeedupIsOne) {
  auto plan = tiny_plan();
  plan.n_values = {1};
  plan.architectures = {ArchKind::kHierarchical, ArchKind::kCombinatorial};
  const auto rows = run_benchmark(plan);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.speedup_mean, 1.0);
    EXPECT_EQ(r.speedup_stddev, 0.0);
  }
}

TEST(Bench, RowsAreConsistent) {
  const auto plan = tiny_plan();
  const auto rows = run_benchmark(plan);
  ASSERT_EQ(rows.size(), 6u);
  const ArchModelSet models;
  for (const auto& r : rows) {
    EXPECT_DOUBLE_EQ(r.efficiency, r.speedup_mean / r.power_model_w);
    EXPECT_GT(r.speedup_mean, 0.0);
    if (r.arch == "hybrid") {
      ASSERT_TRUE(r.m_chosen.has_value());
      EXPECT_EQ(*r.m_chosen, solve_split(ProblemSpec{r.n, plan.omega, models}).m);
      EXPECT_LE(r.power_model_w, plan.omega);
    } else {
      EXPECT_FALSE(r.m_chosen.has_value());
    }
    if (r.arch == "hierarchical") {
      EXPECT_DOUBLE_EQ(r.power_model_w, 1.8 + 0.17 * r.n);
    }
  }
  EXPECT_TRUE(std::is_sorted(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.arch, a.n) < std::tie(b.arch, b.n);
  }));
}

TEST(Bench, ThreadCountDoesNotChangeResults) {
  auto plan = tiny_plan();
  plan.kinematics = {KinematicKind::kDifferential, KinematicKind::kQuadcopter};
  plan.threads = 1;
  const auto serial = run_benchmark(plan);
  plan.threads = 4;
  EXPECT_EQ(run_benchmark(plan), serial);
}

TEST(Bench, InfeasibleCapAborts) {
  auto plan = tiny_plan();
  plan.omega = 1.0;
  EXPECT_THROW(run_benchmark(plan), InfeasiblePlan);
  plan.architectures = {ArchKind::kCombinatorial};
  EXPECT_NO_THROW(run_benchmark(plan));
}

TEST(Bench, UnmetAreaConstraintWarnsAndContinues) {
  auto plan = tiny_plan();
  plan.alpha = 1e9;
  plan.architectures = {ArchKind::kHybrid};
  std::vector<std::string> warnings;
  BenchmarkHooks hooks;
  hooks.warn = [&](const std::string& m) { warnings.push_back(m); };
  const auto rows = run_benchmark(plan, hooks);
  EXPECT_EQ(rows.size(), 2u);
  EXPECT_EQ(warnings.size(), 2u);
}

TEST(Output, CsvShape) {
  BenchmarkRow r{"combinatorial", 4, "open", "differential", 3.999, 0.01, 4.0838464, 0.979, std::nullopt};
  std::ostringstream ss;
  write_csv(ss, {r});
  EXPECT_EQ(ss.str(),
            "arch,n,map,kinematics,speedup_mean,speedup_stddev,power_model_w,efficiency,m_chosen\n"
            "combinatorial,4,open,differential,3.999,0.01,4.08385,0.979,\n");
  r.m_chosen = 2;
  std::ostringstream s2;
  write_csv(s2, {r});
  EXPECT_NE(s2.str().find(",0.979,2\n"), std::string::npos);
}

TEST(Output, JsonRoundTrip) {
  const auto rows = run_benchmark(tiny_plan());
  const auto path = scratch("rows.json");
  emit_results(rows, ResultFormat::kJson, path.string());
  const auto back = rows_from_json(nlohmann::json::parse(slurp(path)));
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(back[i], rounded(rows[i]));
  EXPECT_THROW(emit_results({}, ResultFormat::kCsv, scratch("none.csv").string()), InvalidArgument);
  EXPECT_THROW(emit_results(rows, ResultFormat::kCsv, "/nonexistent-dir/x.csv"), IoError);
  EXPECT_THROW(format_from_string("xml"), InvalidArgument);
}

TEST(TreePlot, SingleNode) {
  const auto g = OccupancyGrid::empty(10, 10);
  LabeledTree t{0, "hierarchical", {DumpNode{0, -1, {2.5, 3.5, 0, 0}}}};
  std::ostringstream ss;
  write_tree_plot(ss, {t}, g);
  EXPECT_EQ(ss.str(), "rrt,label,id,parent,x,y,parent_x,parent_y\n0,hierarchical,0,-1,2.5,3.5,2.5,3.5\n");
  t.nodes[0].values[0] = 10.0;
  std::ostringstream bad;
  EXPECT_THROW(write_tree_plot(bad, {t}, g), InvalidArgument);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("optimize --n 64 --omega 20"), 0);
  EXPECT_EQ(run_cli("optimize --n 64 --omega 10"), 2);
  EXPECT_EQ(run_cli("optimize --n 64"), 1);
  EXPECT_EQ(run_cli("optimize --n 4 --omega 20 --models /nonexistent.conf"), 1);
  const auto map = small_map().string();
  EXPECT_EQ(run_cli("tag --map " + map + " --n 4 --m 2 --alpha 0.001 --seed 3"), 0);
  EXPECT_EQ(run_cli("tag --map " + map + " --n 4 --m 2 --alpha 1e9 --seed 3"), 2);
  EXPECT_EQ(run_cli("tag --map /nonexistent.map --n 4 --m 2 --alpha 1 --seed 3"), 1);
  EXPECT_EQ(run_cli("simulate --arch hybrid --n 4 --map " + map + " --nodes 50 --seed 2"), 0);
  EXPECT_EQ(run_cli("simulate --arch hybrid --n 4 --map " + map + " --nodes 50 --seed 2 --omega 1"), 2);
  EXPECT_EQ(run_cli("simulate --arch mesh --n 4 --map " + map + " --seed 2"), 1);
  EXPECT_EQ(run_cli("bench --plan /nonexistent.json --out " + scratch("x.csv").string()), 1);
}

TEST(Cli, TagLabelsMatchPlot) {
  const auto map = small_map().string();
  const auto tag_out = scratch("tag.json"), plot = scratch("plot.csv"), sum = scratch("sum.json");
  ASSERT_EQ(run_cli("tag --map " + map + " --n 4 --m 2 --alpha 0.001 --seed 5 --out " + tag_out.string()), 0);
  ASSERT_EQ(run_cli("simulate --arch hybrid --n 4 --m 2 --map " + map + " --nodes 40 --seed 5 --plot " +
                    plot.string() + " --out " + sum.string()),
            0);
  const auto tags = nlohmann::json::parse(slurp(tag_out));
  const auto combi = tags.at("assignment").at("combinatorial").get<std::vector<int>>();
  std::istringstream in(slurp(plot));
  std::string line;
  std::getline(in, line);
  std::set<int> labeled_combi;
  while (std::getline(in, line)) {
    const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
    if (line.substr(c1 + 1, c2 - c1 - 1) == "combinatorial") labeled_combi.insert(std::stoi(line.substr(0, c1)));
  }
  EXPECT_EQ(labeled_combi, std::set<int>(combi.begin(), combi.end()));
}

}  // namespace
