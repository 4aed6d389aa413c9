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

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "hybrid_rrt/archsim.hpp"
#include "hybrid_rrt/tagging.hpp"

namespace {

using namespace hrrt;

std::vector<SimEvent> expected_combinatorial(int n, int g, int k) {
  std::vector<SimEvent> ev;
  int acked = 0;
  for (int round = 1; acked < k; ++round) {
    const int c = round * g;
    for (int i = 0; i < n; ++i) ev.push_back({c, "rrt", "request", i});
    std::vector<int> got;
    for (int i = 0; i < n && acked < k; ++i, ++acked) {
      ev.push_back({c, "arbiter", "ack", i});
      got.push_back(i);
    }
    for (int i : got) ev.push_back({c + 1, "memory", "commit", i});
  }
  return ev;
}

// Two RRTs under one POLL: RRT0 wins even cycles, RRT1 slips one cycle once
// and then stays on odd cycles.
std::vector<SimEvent> expected_hier_two(int g, int k) {
  std::vector<SimEvent> ev;
  ev.push_back({g, "rrt", "request", 0});
  ev.push_back({g, "rrt", "request", 1});
  ev.push_back({g, "P0", "ack", 0});
  ev.push_back({g + 1, "memory", "commit", 0});
  ev.push_back({g + 1, "P0", "ack", 1});
  ev.push_back({g + 2, "memory", "commit", 1});
  for (int round = 2, acked = 2; acked < k; ++round) {
    const int c = round * g;
    ev.push_back({c, "rrt", "request", 0});
    ev.push_back({c, "P0", "ack", 0});
    ++acked;
    ev.push_back({c + 1, "memory", "commit", 0});
    if (acked < k) {
      ev.push_back({c + 1, "rrt", "request", 1});
      ev.push_back({c + 1, "P0", "ack", 1});
      ++acked;
      ev.push_back({c + 2, "memory", "commit", 1});
    }
  }
  return ev;
}

SimTrace traced(const Architecture& a, Workload& w, int k) {
  SimOptions o;
  o.record_events = true;
  o.record_payloads = true;
  return run_simulation(a, w, k, o);
}

std::string log_text(const std::vector<SimEvent>& ev) {
  std::ostringstream ss;
  write_event_log(ss, ev);
  return ss.str();
}

TEST(ArchSim, DecodeGrants) {
  EXPECT_EQ(decode_grants({true, false, true}), (std::vector<bool>{true, false, true}));
  EXPECT_EQ(decode_grants(std::vector<bool>(5, false)), std::vector<bool>(5, false));
  EXPECT_EQ(decode_grants(std::vector<bool>(8, true)), std::vector<bool>(8, true));
  EXPECT_THROW(decode_grants({}), InvalidArgument);
}

TEST(ArchSim, AllEightCommitTogether) {
  DeterministicWorkload w(8, 10);
  const auto t = traced(build_architecture(ArchKind::kCombinatorial, 8), w, 8);
  EXPECT_EQ(t.total_cycles, 11);
  int commits = 0;
  for (const auto& e : t.events) commits += e.event == "commit" && e.cycle == 11;
  EXPECT_EQ(commits, 8);
  EXPECT_EQ(t.bank_occupancy, std::vector<std::size_t>(8, 1));
}

TEST(ArchSim, HierarchicalStructure) {
  const auto a = build_architecture(ArchKind::kHierarchical, 8);
  EXPECT_EQ(a.count(Stage::Kind::kPoll), 4);
  EXPECT_EQ(a.count(Stage::Kind::kFifo, 1), 2);
  EXPECT_EQ(a.count(Stage::Kind::kFifo, 2), 1);
  EXPECT_EQ(a.depth, 3);
  EXPECT_EQ(a.stages.front().name, "F10");
  const auto& root = a.stages.front();
  EXPECT_EQ((std::set<std::string>{a.stages[static_cast<std::size_t>(root.children[0])].name,
                                   a.stages[static_cast<std::size_t>(root.children[1])].name}),
            (std::set<std::string>{"F00", "F01"}));
  std::set<std::string> names;
  for (const auto& s : a.stages) names.insert(s.name);
  EXPECT_EQ(names, (std::set<std::string>{"F10", "F00", "F01", "P0", "P1", "P2", "P3"}));
  EXPECT_EQ(a.banks, 1);

  const auto two = build_architecture(ArchKind::kHierarchical, 2);
  ASSERT_EQ(two.stages.size(), 1u);
  EXPECT_EQ(two.stages[0].kind, Stage::Kind::kPoll);

  const auto one = build_architecture(ArchKind::kHierarchical, 1);
  ASSERT_EQ(one.stages.size(), 1u);
  EXPECT_EQ(one.stages[0].children[1], Stage::kInert);
}

TEST(ArchSim, PaddedLeavesAreInert) {
  const auto a = build_architecture(ArchKind::kHierarchical, 5);
  EXPECT_EQ(a.count(Stage::Kind::kPoll), 4);
  int active_polls = 0;
  for (const auto& s : a.stages)
    if (s.kind == Stage::Kind::kPoll && s.active) ++active_polls;
  EXPECT_EQ(active_polls, 3);
  DeterministicWorkload w(5, 7);
  const auto t = traced(a, w, 50);
  EXPECT_EQ(t.committed_nodes, 50);
  for (int c : t.per_rrt_commits) EXPECT_GT(c, 0);
}

TEST(ArchSim, BuildRejectsBadArguments) {
  EXPECT_THROW(build_architecture(ArchKind::kHybrid, 4, 0), InvalidArgument);
  EXPECT_THROW(build_architecture(ArchKind::kHybrid, 4, 5), InvalidArgument);
  EXPECT_THROW(build_architecture(ArchKind::kCombinatorial, 0), InvalidArgument);
  EXPECT_THROW(build_architecture(ArchKind::kHierarchical, 4, 0, 0), InvalidArgument);
  auto h = build_architecture(ArchKind::kHybrid, 6, 2);
  EXPECT_EQ(h.banks, 3);
  EXPECT_THROW(h.set_combinatorial_members({1}), InvalidArgument);
  EXPECT_THROW(h.set_combinatorial_members({1, 1}), InvalidArgument);
  EXPECT_THROW(h.set_combinatorial_members({1, 6}), InvalidArgument);
  h.set_combinatorial_members({5, 2});
  EXPECT_EQ(h.combinatorial_rrts, (std::vector<int>{2, 5}));
  EXPECT_EQ(h.hierarchical_rrts, (std::vector<int>{0, 1, 3, 4}));
  auto c = build_architecture(ArchKind::kCombinatorial, 3);
  EXPECT_THROW(c.set_combinatorial_members({0, 1, 2}), InvalidArgument);
}

TEST(ArchSim, CombinatorialHandTraces) {
  for (int n : {1, 2, 4}) {
    DeterministicWorkload w(n, 10);
    const auto t = traced(build_architecture(ArchKind::kCombinatorial, n), w, 100);
    EXPECT_EQ(t.total_cycles, (100 + n - 1) / n * 10 + 1) << n;
    EXPECT_EQ(log_text(t.events), log_text(expected_combinatorial(n, 10, 100))) << n;
  }
}

TEST(ArchSim, HierarchicalTwoHandTrace) {
  DeterministicWorkload w(2, 10);
  const auto t = traced(build_architecture(ArchKind::kHierarchical, 2), w, 100);
  EXPECT_EQ(t.total_cycles, 502);
  EXPECT_EQ(log_text(t.events), log_text(expected_hier_two(10, 100)));
  const auto s = measure_speedup(build_architecture(ArchKind::kHierarchical, 2), w, 100);
  EXPECT_EQ(s.t1, 1001);
  EXPECT_GE(s.speedup, 1.9);
  EXPECT_LE(s.speedup, 2.0);
}

TEST(ArchSim, SpeedupExamples) {
  DeterministicWorkload w(4, 10);
  const auto c = measure_speedup(build_architecture(ArchKind::kCombinatorial, 4), w, 100);
  EXPECT_EQ(c.tn, 251);
  EXPECT_NEAR(c.speedup, 4.0, 0.08);
  const auto h = measure_speedup(build_architecture(ArchKind::kHierarchical, 4), w, 100);
  EXPECT_GT(h.speedup, 2.0);
  EXPECT_LT(h.speedup, 4.0);
  for (auto kind : {ArchKind::kCombinatorial, ArchKind::kHierarchical, ArchKind::kHybrid}) {
    const auto one = build_architecture(kind, 1, kind == ArchKind::kHybrid ? 1 : 0);
    EXPECT_EQ(measure_speedup(one, w, 100).speedup, 1.0);
  }
}

TEST(ArchSim, SingleRrtSameTimeEverywhere) {
  DeterministicWorkload w(1, 13);
  const auto hc = run_simulation(build_architecture(ArchKind::kCombinatorial, 1), w, 40).total_cycles;
  EXPECT_EQ(hc, 40 * 13 + 1);
  EXPECT_EQ(run_simulation(build_architecture(ArchKind::kHierarchical, 1), w, 40).total_cycles, hc);
  EXPECT_EQ(run_simulation(build_architecture(ArchKind::kHybrid, 1, 1), w, 40).total_cycles, hc);
}

TEST(ArchSim, HybridAllCombinatorialMatchesCombinatorial) {
  const auto g = OccupancyGrid::empty(64, 64);
  const auto seeds = seed_nodes(g, 8, 4);
  std::vector<Cell> roots;
  for (const auto& s : seeds) roots.push_back(s.cell);
  PlannerWorkload w(g, KinematicModel::differential(), roots, 77);
  const auto c = traced(build_architecture(ArchKind::kCombinatorial, 8), w, 300);
  const auto h = traced(build_architecture(ArchKind::kHybrid, 8, 8), w, 300);
  EXPECT_EQ(c.total_cycles, h.total_cycles);
  EXPECT_EQ(c.events, h.events);
  EXPECT_EQ(c.committed, h.committed);
}

TEST(ArchSim, CombinatorialLatencyIsConstant) {
  const auto g = OccupancyGrid::empty(64, 64);
  PlannerWorkload w(g, KinematicModel::quadcopter(), {{3, 3}, {40, 9}, {20, 50}, {60, 60}, {1, 33}}, 5);
  const auto t = traced(build_architecture(ArchKind::kCombinatorial, 5, 0, 16, 4), w, 400);
  std::map<int, std::vector<std::int64_t>> acks, commits;
  for (const auto& e : t.events) {
    if (e.event == "ack") acks[e.rrt_id].push_back(e.cycle);
    if (e.event == "commit") commits[e.rrt_id].push_back(e.cycle);
  }
  for (auto& [rrt, a] : acks) {
    ASSERT_EQ(a.size(), commits[rrt].size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(commits[rrt][i], a[i] + 1);
  }
}

class ArchInvariants : public ::testing::TestWithParam<std::tuple<ArchKind, int, int>> {};

TEST_P(ArchInvariants, IntegrityBanksAndThroughput) {
  const auto [kind, n, m] = GetParam();
  const auto g = OccupancyGrid::from_rows(std::vector<std::string>(48, "................#######........................."));
  const auto seeds = seed_nodes(g, n, 12);
  std::vector<Cell> roots;
  for (const auto& s : seeds) roots.push_back(s.cell);
  PlannerWorkload w(g, KinematicModel::differential(), roots, 31);
  const auto arch = build_architecture(kind, n, m, 4);
  const int k = 500;
  const auto t = traced(arch, w, k);

  EXPECT_EQ(t.committed_nodes, k);
  int sum = 0;
  for (int c : t.per_rrt_commits) sum += c;
  EXPECT_EQ(sum, k);
  EXPECT_GE(t.total_cycles * n, k);

  auto committed = t.committed, acked = t.acknowledged;
  ASSERT_EQ(committed.size(), acked.size());
  std::sort(committed.begin(), committed.end());
  std::sort(acked.begin(), acked.end());
  EXPECT_EQ(committed, acked);
  EXPECT_EQ(std::adjacent_find(committed.begin(), committed.end()), committed.end());

  MultiPortMemory probe(arch.banks, arch.dof);
  std::size_t stored = 0;
  for (auto b : t.bank_occupancy) {
    EXPECT_LE(b, probe.bank_capacity());
    stored += b;
  }
  EXPECT_EQ(stored, static_cast<std::size_t>(k));
  EXPECT_EQ(static_cast<int>(t.bank_occupancy.size()), arch.banks);

  // Per-RRT order is preserved end to end.
  std::map<int, int> last;
  for (const auto& r : t.committed) {
    auto it = last.find(r.rrt_id);
    if (it != last.end()) {
      EXPECT_EQ(r.seq, it->second + 1);
    }
    last[r.rrt_id] = r.seq;
  }

  std::map<std::int64_t, int> tree_commits;
  std::map<std::pair<std::string, std::int64_t>, int> stage_acks;
  for (const auto& e : t.events) {
    if (e.event == "ack" && e.component != "arbiter") ++stage_acks[{e.component, e.cycle}];
  }
  for (const auto& [key, count] : stage_acks) EXPECT_EQ(count, 1) << key.first << "@" << key.second;
  if (kind == ArchKind::kHierarchical) {
    for (const auto& e : t.events)
      if (e.event == "commit") ++tree_commits[e.cycle];
    for (const auto& [cycle, count] : tree_commits) EXPECT_EQ(count, 1) << cycle;
  }
}

INSTANTIATE_TEST_SUITE_P(Kinds, ArchInvariants,
                         ::testing::Values(std::make_tuple(ArchKind::kHierarchical, 2, 0),
                                           std::make_tuple(ArchKind::kHierarchical, 7, 0),
                                           std::make_tuple(ArchKind::kHierarchical, 16, 0),
                                           std::make_tuple(ArchKind::kCombinatorial, 6, 0),
                                           std::make_tuple(ArchKind::kHybrid, 8, 3),
                                           std::make_tuple(ArchKind::kHybrid, 5, 1)));

TEST(ArchSim, StallDetection) {
  DeterministicWorkload w(4, 3);
  SimOptions o;
  o.disable_root_commit = true;
  EXPECT_THROW(run_simulation(build_architecture(ArchKind::kHierarchical, 4, 0, 2), w, 50, o), DeadlockDetected);
  EXPECT_THROW(run_simulation(build_architecture(ArchKind::kHybrid, 4, 1, 2), w, 50, o), DeadlockDetected);
}

TEST(ArchSim, StandardFifoAddsLatency) {
  DeterministicWorkload w(8, 10);
  const auto fwft = run_simulation(build_architecture(ArchKind::kHierarchical, 8, 0, 16, 3, true), w, 200);
  const auto std_mode = run_simulation(build_architecture(ArchKind::kHierarchical, 8, 0, 16, 3, false), w, 200);
  EXPECT_GT(std_mode.total_cycles, fwft.total_cycles);
}

TEST(ArchSim, ShallowFifoBackpressure) {
  DeterministicWorkload w(16, 2);
  const auto deep = run_simulation(build_architecture(ArchKind::kHierarchical, 16, 0, 16), w, 400);
  const auto shallow = run_simulation(build_architecture(ArchKind::kHierarchical, 16, 0, 1), w, 400);
  EXPECT_EQ(shallow.committed_nodes, 400);
  EXPECT_GE(shallow.total_cycles, deep.total_cycles);
  // The root drains one item per cycle, so saturation caps throughput.
  EXPECT_GE(deep.total_cycles, 400);
}

TEST(ArchSim, MemoryInterleaving) {
  MultiPortMemory mem(4, 3);
  EXPECT_DOUBLE_EQ(mem.bank_size_kb(), 300.0);
  EXPECT_EQ(mem.bank_capacity(), 300u * 1024u / 16u);
  std::set<int> banks;
  for (std::uint64_t a = 8; a < 12; ++a) banks.insert(mem.bank_of(a));
  EXPECT_EQ(banks.size(), 4u);
  EXPECT_EQ(mem.local_of(9), 2u);
  for (std::uint64_t a = 0; a < 6; ++a) mem.write(a, NodeRecord{0, static_cast<int>(a), -1, 3, {}});
  EXPECT_EQ(mem.read(5).seq, 5);
  EXPECT_EQ(mem.occupancy(), (std::vector<std::size_t>{2, 2, 1, 1}));
  EXPECT_THROW(mem.write(10, NodeRecord{}), Error);
  EXPECT_EQ(record_bytes(4), 20u);
  MultiPortMemory tiny(400 * 3 * 1024 / 16, 3);
  EXPECT_EQ(tiny.bank_capacity(), 1u);
  tiny.write(0, NodeRecord{});
  EXPECT_THROW(tiny.write(static_cast<std::uint64_t>(tiny.banks()), NodeRecord{}), Error);
}

TEST(ArchSim, Deterministic) {
  const auto g = OccupancyGrid::empty(64, 64);
  auto run = [&] {
    PlannerWorkload w(g, KinematicModel::fixed_wing(), {{5, 5}, {50, 50}, {10, 40}, {40, 10}}, 9);
    return traced(build_architecture(ArchKind::kHybrid, 4, 2, 16, 4), w, 200);
  };
  const auto a = run(), b = run();
  EXPECT_EQ(a.events, b.events);
  EXPECT_EQ(a.committed, b.committed);
}

TEST(ArchSim, OrderingOnAverage) {
  const auto g = OccupancyGrid::empty(128, 128);
  const auto seeds = seed_nodes(g, 4, 1);
  std::vector<Cell> roots;
  for (const auto& s : seeds) roots.push_back(s.cell);
  double c = 0, h = 0, hy = 0;
  for (int rep = 0; rep < 8; ++rep) {
    PlannerWorkload w(g, KinematicModel::differential(), roots, 100 + rep);
    c += measure_speedup(build_architecture(ArchKind::kCombinatorial, 4), w, 300).speedup;
    h += measure_speedup(build_architecture(ArchKind::kHierarchical, 4), w, 300).speedup;
    hy += measure_speedup(build_architecture(ArchKind::kHybrid, 4, 2), w, 300).speedup;
  }
  EXPECT_GE(c, hy);
  EXPECT_GE(hy, h);
}

TEST(ArchSim, WorkloadChecks) {
  const auto g = OccupancyGrid::from_rows({"..#", "..."});
  EXPECT_THROW(PlannerWorkload(g, KinematicModel::differential(), {{2, 0}}, 1), InvalidArgument);
  EXPECT_THROW(PlannerWorkload(g, KinematicModel::differential(), {}, 1), InvalidArgument);
  EXPECT_THROW(PlannerWorkload(g, KinematicModel::differential(), {{0, 0}}, 1, AttemptCost{5, 4}), InvalidArgument);
  DeterministicWorkload w(2, 5);
  EXPECT_THROW(run_simulation(build_architecture(ArchKind::kCombinatorial, 3), w, 10), InvalidArgument);
  EXPECT_THROW(run_simulation(build_architecture(ArchKind::kCombinatorial, 2), w, 0), InvalidArgument);
  EXPECT_THROW(run_simulation(build_architecture(ArchKind::kCombinatorial, 2, 0, 16, 4), w, 10), InvalidArgument);
  EXPECT_THROW(DeterministicWorkload(0, 5), InvalidArgument);
  EXPECT_THROW(DeterministicWorkload(2, 0), InvalidArgument);
}

TEST(ArchSim, PlannerWorkloadSharedAcrossRuns) {
  const auto g = OccupancyGrid::empty(64, 64);
  PlannerWorkload a(g, KinematicModel::differential(), {{3, 3}, {60, 60}}, 4, AttemptCost{25, 25});
  PlannerWorkload b(g, KinematicModel::differential(), {{3, 3}, {60, 60}}, 4, AttemptCost{25, 25});
  // Query order must not change the answers.
  const auto late = a.generation_cycles(1, 30);
  for (int j = 0; j <= 30; ++j) b.generation_cycles(0, j);
  EXPECT_EQ(b.generation_cycles(1, 30), late);
  EXPECT_EQ(a.payload(0, 3), b.payload(0, 3));
  EXPECT_EQ(a.generation_cycles(0, 0) % 25, 0);
}

TEST(ArchSim, EventLogFormat) {
  DeterministicWorkload w(1, 4);
  const auto t = traced(build_architecture(ArchKind::kCombinatorial, 1), w, 1);
  EXPECT_EQ(log_text(t.events), "cycle,component,event,rrt_id\n4,rrt,request,0\n4,arbiter,ack,0\n5,memory,commit,0\n");
}

}  // namespace
