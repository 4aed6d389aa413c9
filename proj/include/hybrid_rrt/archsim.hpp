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
 * @file archsim.hpp
 * @brief Cycle-level model of the three write-access architectures.
 *
 * Timing used throughout (cycle t):
 *  - an RRT's request becomes visible G cycles after its previous ack (the
 *    first one at cycle G) and stays up until acknowledged; the next
 *    generation starts in the ack cycle.
 *  - combinatorial: every visible request is granted and acked at t, the
 *    write lands in memory at t + 1.
 *  - hierarchical: POLL stages sit above pairs of RRTs, FIFO stages above
 *    those. A stage inspects child (t % 2) and takes at most one item; an
 *    item entering a stage at t is visible to the parent from t + 1 (FWFT),
 *    or t + 2 with a standard FIFO. The root writes one item per cycle.
 *  - hybrid: the combinatorial members are acked as above; the hierarchical
 *    root pops into the merge port at t and the write lands at t + 1. The
 *    global memory has one bank per combinatorial member plus one.
 *
 * A stage with a single live child inspects it every cycle; padded (inert)
 * slots are never inspected. Once K requests are acked no more are granted,
 * so exactly K nodes commit.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "hybrid_rrt/error.hpp"
#include "hybrid_rrt/grid.hpp"
#include "hybrid_rrt/planner.hpp"
#include "hybrid_rrt/rng.hpp"

namespace hrrt {

enum class ArchKind { kHierarchical, kCombinatorial, kHybrid };

inline std::string to_string(ArchKind k) {
  switch (k) {
    case ArchKind::kHierarchical:
      return "hierarchical";
    case ArchKind::kCombinatorial:
      return "combinatorial";
    case ArchKind::kHybrid:
      return "hybrid";
  }
  return "?";
}

inline ArchKind arch_from_string(const std::string& s) {
  if (s == "hierarchical" || s == "hier") return ArchKind::kHierarchical;
  if (s == "combinatorial" || s == "combi") return ArchKind::kCombinatorial;
  if (s == "hybrid") return ArchKind::kHybrid;
  throw InvalidArgument("unknown architecture '" + s + "'");
}

/// Payload of one write: the node's F state values and its parent index.
struct NodeRecord {
  int rrt_id = 0;
  int seq = 0;
  int parent = -1;
  int dof = 0;
  std::array<std::int32_t, 4> values{};

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
  friend auto operator<=>(const NodeRecord&, const NodeRecord&) = default;
};

/// Bytes per stored record: F 32-bit values and a 32-bit parent index.
constexpr std::size_t record_bytes(int dof) noexcept { return 4u * static_cast<std::size_t>(dof + 1); }

/// Request vector to grant vector. Every requester is granted.
inline std::vector<bool> decode_grants(const std::vector<bool>& requests) {
  if (requests.empty()) throw InvalidArgument("decode_grants: width must be at least 1");
  return requests;
}

/**
 * Global memory split into B single-channel banks, interleaved by address:
 * bank = addr % B, local slot = addr / B. Each bank holds (400 F) / B KB.
 * Reads do not contend with writes.
 */
class MultiPortMemory {
 public:
  MultiPortMemory(int banks, int dof) : dof_(dof), banks_(static_cast<std::size_t>(banks)) {
    if (banks < 1) throw InvalidArgument("memory: need at least one bank");
    if (dof < 1 || dof > 4) throw InvalidArgument("memory: dof must lie in [1, 4]");
  }

  int banks() const noexcept { return static_cast<int>(banks_.size()); }
  double bank_size_kb() const noexcept { return 400.0 * dof_ / banks(); }
  std::size_t bank_capacity() const noexcept {
    return static_cast<std::size_t>(bank_size_kb() * 1024.0) / record_bytes(dof_);
  }

  int bank_of(std::uint64_t addr) const noexcept { return static_cast<int>(addr % banks_.size()); }
  std::uint64_t local_of(std::uint64_t addr) const noexcept { return addr / banks_.size(); }

  void write(std::uint64_t addr, const NodeRecord& rec) {
    auto& bank = banks_[static_cast<std::size_t>(bank_of(addr))];
    if (local_of(addr) != bank.size()) throw Error("memory: non-sequential write to bank " + std::to_string(bank_of(addr)));
    if (bank.size() >= bank_capacity()) throw Error("memory: bank " + std::to_string(bank_of(addr)) + " is full");
    bank.push_back(rec);
  }

  const NodeRecord& read(std::uint64_t addr) const {
    const auto& bank = banks_.at(static_cast<std::size_t>(bank_of(addr)));
    return bank.at(static_cast<std::size_t>(local_of(addr)));
  }

  std::vector<std::size_t> occupancy() const {
    std::vector<std::size_t> out;
    for (const auto& b : banks_) out.push_back(b.size());
    return out;
  }

 private:
  int dof_;
  std::vector<std::vector<NodeRecord>> banks_;
};

/**
 * Node-generation model: how many cycles RRT i needs for its j-th node and
 * what that node is. Answers depend only on (i, j), never on the
 * architecture, so the same workload can drive several simulations.
 */
class Workload {
 public:
  virtual ~Workload() = default;
  virtual int rrt_count() const = 0;
  virtual int dof() const = 0;
  virtual std::int64_t generation_cycles(int rrt, int seq) = 0;
  virtual NodeRecord payload(int rrt, int seq) = 0;
};

/// Every node takes exactly G cycles; payloads are synthetic.
class DeterministicWorkload : public Workload {
 public:
  DeterministicWorkload(int rrts, std::int64_t cycles, int dof = 3) : rrts_(rrts), cycles_(cycles), dof_(dof) {
    if (rrts < 1) throw InvalidArgument("workload: need at least one RRT");
    if (cycles < 1) throw InvalidArgument("workload: generation time must be at least one cycle");
  }
  int rrt_count() const override { return rrts_; }
  int dof() const override { return dof_; }
  std::int64_t generation_cycles(int rrt, int) override {
    check(rrt);
    return cycles_;
  }
  NodeRecord payload(int rrt, int seq) override {
    check(rrt);
    NodeRecord r;
    r.rrt_id = rrt;
    r.seq = seq;
    r.parent = seq;
    r.dof = dof_;
    r.values = {rrt, seq, 0, 0};
    return r;
  }

 private:
  void check(int rrt) const {
    if (rrt < 0 || rrt >= rrts_) throw InvalidArgument("workload: rrt id out of range");
  }
  int rrts_;
  std::int64_t cycles_;
  int dof_;
};

/// Cycles charged per planner attempt; lo == hi gives a fixed cost.
struct AttemptCost {
  std::int64_t lo = 20;
  std::int64_t hi = 60;
};

/**
 * Real RRT exploration. RRT i grows its own tree from roots[i]; each attempt
 * (accepted or rejected) costs a draw from AttemptCost, and a node's
 * generation time is the sum over the attempts that produced it.
 */
class PlannerWorkload : public Workload {
 public:
  static constexpr int kMaxAttemptsPerNode = 20000;

  PlannerWorkload(const OccupancyGrid& grid, const KinematicModel& model, const std::vector<Cell>& roots,
                  std::uint64_t seed, AttemptCost cost = {}, double z_max = 32.0)
      : grid_(&grid), model_(model), cost_(cost) {
    if (roots.empty()) throw InvalidArgument("workload: need at least one RRT");
    if (cost.lo < 1 || cost.hi < cost.lo) throw InvalidArgument("workload: bad attempt cost range");
    model_.validate();
    const auto bounds = StateBounds::of_grid(grid, z_max);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (!grid.in_bounds(roots[i]) || grid.is_obstacle(roots[i]))
        throw InvalidArgument("workload: root " + std::to_string(i) + " is not a free cell");
      const auto root = root_at_cell(grid, roots[i], model_, bounds);
      rrts_.push_back(Instance{RrtExplorer(grid, model_, root, derive_seed(seed, {i, 0}), bounds),
                               Rng(derive_seed(seed, {i, 1})), {}, 0});
    }
  }

  int rrt_count() const override { return static_cast<int>(rrts_.size()); }
  int dof() const override { return model_.dof(); }

  std::int64_t generation_cycles(int rrt, int seq) override {
    auto& inst = at(rrt);
    while (static_cast<int>(inst.durations.size()) <= seq) {
      std::int64_t total = 0;
      for (int attempt = 0;; ++attempt) {
        if (attempt == kMaxAttemptsPerNode)
          throw Error("workload: RRT " + std::to_string(rrt) + " cannot extend its tree");
        total += inst.cost_rng.uniform_int(cost_.lo, cost_.hi);
        if (inst.explorer.step()) break;
        ++inst.rejected;
      }
      inst.durations.push_back(total);
    }
    return inst.durations[static_cast<std::size_t>(seq)];
  }

  NodeRecord payload(int rrt, int seq) override {
    generation_cycles(rrt, seq);
    const auto& node = at(rrt).explorer.tree().node(seq + 1);
    NodeRecord r;
    r.rrt_id = rrt;
    r.seq = seq;
    r.parent = node.parent;
    r.dof = model_.dof();
    int k = 0;
    r.values[static_cast<std::size_t>(k++)] = node.state.x.raw();
    r.values[static_cast<std::size_t>(k++)] = node.state.y.raw();
    if (node.state.dims == 3) r.values[static_cast<std::size_t>(k++)] = node.state.z.raw();
    r.values[static_cast<std::size_t>(k)] = node.state.heading.raw();
    return r;
  }

  const RrtTree& tree(int rrt) const { return rrts_.at(static_cast<std::size_t>(rrt)).explorer.tree(); }
  std::int64_t rejected_attempts(int rrt) const { return rrts_.at(static_cast<std::size_t>(rrt)).rejected; }

 private:
  struct Instance {
    RrtExplorer explorer;
    Rng cost_rng;
    std::vector<std::int64_t> durations;
    std::int64_t rejected;
  };
  Instance& at(int rrt) {
    if (rrt < 0 || rrt >= rrt_count()) throw InvalidArgument("workload: rrt id out of range");
    return rrts_[static_cast<std::size_t>(rrt)];
  }

  const OccupancyGrid* grid_;
  KinematicModel model_;
  AttemptCost cost_;
  std::vector<Instance> rrts_;
};

/// One POLL or FIFO stage of the hierarchical tree.
struct Stage {
  enum class Kind { kPoll, kFifo };
  static constexpr int kInert = -1;

  Kind kind = Kind::kPoll;
  std::string name;
  /// >= 0: child stage index; <= -2: leaf slot (-2 - child); kInert: padding.
  std::array<int, 2> children{kInert, kInert};
  bool active = false;
  int capacity = 1;
  int level = 0;  ///< 0 for POLLs, FIFO levels count up from 1

  static constexpr int leaf(int slot) noexcept { return -2 - slot; }
  static constexpr bool is_leaf(int c) noexcept { return c <= -2; }
  static constexpr int slot_of(int c) noexcept { return -2 - c; }
};

struct Architecture {
  ArchKind kind = ArchKind::kCombinatorial;
  int n = 1;
  int m = 0;
  int fifo_depth = 16;
  int dof = 3;
  bool fwft = true;
  std::vector<int> combinatorial_rrts;  ///< served by the arbiter
  std::vector<int> hierarchical_rrts;   ///< leaf slot -> rrt id
  std::vector<Stage> stages;            ///< top-down order, root first
  int banks = 1;
  int depth = 1;  ///< tree levels, 1 without a tree

  int count(Stage::Kind k, int level = -1) const {
    return static_cast<int>(std::count_if(stages.begin(), stages.end(), [&](const Stage& s) {
      return s.kind == k && (level < 0 || s.level == level);
    }));
  }

  /// Reassigns which RRTs form the combinatorial block of a hybrid.
  void set_combinatorial_members(std::vector<int> ids);
};

namespace detail {

inline int next_pow2(int v) {
  int p = 1;
  while (p < v) p <<= 1;
  return p;
}

/// Builds the POLL/FIFO tree over `slots` leaves, padded to a power of two.
inline void build_tree(Architecture& a, int slots) {
  a.stages.clear();
  if (slots == 0) {
    a.depth = 1;
    return;
  }
  const int leaves = std::max(2, next_pow2(slots));
  // Bottom-up construction, flipped to top-down at the end.
  std::vector<Stage> built;
  std::vector<int> level_ids;
  for (int i = 0; i < leaves / 2; ++i) {
    Stage s;
    s.kind = Stage::Kind::kPoll;
    s.name = "P" + std::to_string(i);
    s.children = {2 * i < slots ? Stage::leaf(2 * i) : Stage::kInert,
                  2 * i + 1 < slots ? Stage::leaf(2 * i + 1) : Stage::kInert};
    s.active = 2 * i < slots;
    s.capacity = 1;
    s.level = 0;
    level_ids.push_back(static_cast<int>(built.size()));
    built.push_back(s);
  }
  int level = 0;
  while (level_ids.size() > 1) {
    ++level;
    std::vector<int> next;
    for (std::size_t i = 0; i < level_ids.size() / 2; ++i) {
      Stage s;
      s.kind = Stage::Kind::kFifo;
      s.name = "F" + std::to_string(level - 1) + std::to_string(i);
      const int l = level_ids[2 * i], r = level_ids[2 * i + 1];
      s.children = {built[static_cast<std::size_t>(l)].active ? l : Stage::kInert,
                    built[static_cast<std::size_t>(r)].active ? r : Stage::kInert};
      s.active = built[static_cast<std::size_t>(l)].active || built[static_cast<std::size_t>(r)].active;
      s.capacity = a.fifo_depth;
      s.level = level;
      next.push_back(static_cast<int>(built.size()));
      built.push_back(s);
    }
    level_ids = std::move(next);
  }
  a.depth = level + 1;
  // Reverse so the root comes first; remap child indices.
  const int total = static_cast<int>(built.size());
  std::reverse(built.begin(), built.end());
  for (auto& s : built)
    for (auto& c : s.children)
      if (c >= 0) c = total - 1 - c;
  a.stages = std::move(built);
}

inline void assign_members(Architecture& a, std::vector<int> combi) {
  std::sort(combi.begin(), combi.end());
  if (static_cast<int>(combi.size()) != a.m) throw InvalidArgument("architecture: member list must have m entries");
  if (std::adjacent_find(combi.begin(), combi.end()) != combi.end())
    throw InvalidArgument("architecture: duplicate combinatorial member");
  for (int id : combi)
    if (id < 0 || id >= a.n) throw InvalidArgument("architecture: member id out of range");
  a.combinatorial_rrts = combi;
  a.hierarchical_rrts.clear();
  for (int id = 0; id < a.n; ++id)
    if (!std::binary_search(combi.begin(), combi.end(), id)) a.hierarchical_rrts.push_back(id);
}

}  // namespace detail

inline void Architecture::set_combinatorial_members(std::vector<int> ids) {
  if (kind != ArchKind::kHybrid) throw InvalidArgument("architecture: only a hybrid has selectable members");
  detail::assign_members(*this, std::move(ids));
}

/**
 * Hierarchical: a tree over n RRTs. Combinatorial: arbiter plus n banks.
 * Hybrid: RRTs 0..m-1 on the arbiter (reassign with
 * set_combinatorial_members), the rest on a tree, m + 1 banks.
 */
inline Architecture build_architecture(ArchKind kind, int n, int m = 0, int fifo_depth = 16, int dof = 3,
                                       bool fwft = true) {
  if (n < 1) throw InvalidArgument("architecture: n must be at least 1");
  if (fifo_depth < 1) throw InvalidArgument("architecture: FIFO depth must be at least 1");
  if (dof < 1 || dof > 4) throw InvalidArgument("architecture: dof must lie in [1, 4]");
  Architecture a;
  a.kind = kind;
  a.n = n;
  a.fifo_depth = fifo_depth;
  a.dof = dof;
  a.fwft = fwft;
  switch (kind) {
    case ArchKind::kHierarchical:
      a.m = 0;
      detail::assign_members(a, {});
      a.banks = 1;
      break;
    case ArchKind::kCombinatorial:
      a.m = n;
      a.combinatorial_rrts.resize(static_cast<std::size_t>(n));
      std::iota(a.combinatorial_rrts.begin(), a.combinatorial_rrts.end(), 0);
      a.banks = n;
      break;
    case ArchKind::kHybrid: {
      if (m < 1 || m > n) throw InvalidArgument("architecture: hybrid needs 1 <= m <= n");
      a.m = m;
      std::vector<int> ids(static_cast<std::size_t>(m));
      std::iota(ids.begin(), ids.end(), 0);
      detail::assign_members(a, ids);
      a.banks = m + 1;
      break;
    }
  }
  detail::build_tree(a, static_cast<int>(a.hierarchical_rrts.size()));
  return a;
}

struct SimEvent {
  std::int64_t cycle = 0;
  std::string component;
  std::string event;
  int rrt_id = 0;
  friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct SimOptions {
  bool record_events = false;
  bool record_payloads = false;
  bool disable_root_commit = false;  ///< debug: starves the memory to exercise stall detection
};

struct SimTrace {
  std::int64_t total_cycles = 0;
  int committed_nodes = 0;
  std::vector<int> per_rrt_commits;
  std::vector<SimEvent> events;
  std::vector<NodeRecord> committed;     ///< commit order, when recorded
  std::vector<NodeRecord> acknowledged;  ///< ack order, when recorded
  std::vector<std::size_t> bank_occupancy;
};

inline void write_event_log(std::ostream& out, const std::vector<SimEvent>& events) {
  out << "cycle,component,event,rrt_id\n";
  for (const auto& e : events) out << e.cycle << ',' << e.component << ',' << e.event << ',' << e.rrt_id << '\n';
}

namespace detail {

class Simulator {
 public:
  Simulator(const Architecture& arch, Workload& work, int target, const SimOptions& opts)
      : arch_(arch), work_(work), target_(target), opts_(opts), memory_(arch.banks, arch.dof) {
    if (target < 1) throw InvalidArgument("simulation: K must be at least 1");
    if (work.rrt_count() < arch.n) throw InvalidArgument("simulation: workload has fewer RRTs than the architecture");
    if (work.dof() != arch.dof) throw InvalidArgument("simulation: workload dof does not match the architecture");
    rrts_.resize(static_cast<std::size_t>(arch.n));
    queues_.resize(arch.stages.size());
    trace_.per_rrt_commits.assign(static_cast<std::size_t>(arch.n), 0);
    for (int i = 0; i < arch.n; ++i) rrts_[static_cast<std::size_t>(i)].ready_at = work.generation_cycles(i, 0);
    stall_limit_ = 2 * (arch.depth + 2);
  }

  SimTrace run() {
    std::int64_t t = next_ready();
    last_event_ = t;
    for (;;) {
      commit_phase(t);
      if (trace_.committed_nodes == target_) {
        trace_.total_cycles = t;
        break;
      }
      log_requests(t);
      tree_phase(t);
      arbiter_phase(t);

      const bool busy = in_flight() || (acked_ < target_ && any_visible(t));
      if (busy && t - last_event_ > stall_limit_)
        throw DeadlockDetected("no progress for " + std::to_string(t - last_event_) + " cycles at cycle " +
                               std::to_string(t) + " with writes pending");
      if (busy) {
        ++t;
      } else {
        const auto nr = next_ready();
        if (nr == kNever) throw DeadlockDetected("simulation has no further work before reaching K");
        t = std::max(t + 1, nr);
        last_event_ = t;
      }
    }
    trace_.bank_occupancy = memory_.occupancy();
    return std::move(trace_);
  }

 private:
  static constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();

  struct RrtState {
    std::int64_t ready_at = 0;
    int seq = 0;
    bool logged = false;
  };
  struct Item {
    NodeRecord rec;
    std::int64_t visible_at;
  };
  struct Pending {
    std::int64_t commit_at;
    NodeRecord rec;
  };

  void emit(std::int64_t t, const std::string& component, const char* what, int rrt) {
    last_event_ = t;
    if (opts_.record_events) trace_.events.push_back(SimEvent{t, component, what, rrt});
  }

  std::int64_t next_ready() const {
    if (acked_ >= target_) return kNever;
    std::int64_t best = kNever;
    for (const auto& r : rrts_) best = std::min(best, r.ready_at);
    return best;
  }

  bool visible(int rrt, std::int64_t t) const {
    return acked_ < target_ && rrts_[static_cast<std::size_t>(rrt)].ready_at <= t;
  }
  bool any_visible(std::int64_t t) const {
    for (int i = 0; i < arch_.n; ++i)
      if (visible(i, t)) return true;
    return false;
  }
  bool in_flight() const {
    if (!merge_.empty()) return true;
    for (const auto& q : queues_)
      if (!q.empty()) return true;
    return false;
  }

  /// Takes RRT `rrt`'s request at cycle t and starts its next generation.
  NodeRecord acknowledge(int rrt, std::int64_t t, const std::string& by) {
    auto& st = rrts_[static_cast<std::size_t>(rrt)];
    NodeRecord rec = work_.payload(rrt, st.seq);
    emit(t, by, "ack", rrt);
    if (opts_.record_payloads) trace_.acknowledged.push_back(rec);
    ++acked_;
    ++st.seq;
    st.logged = false;
    st.ready_at = acked_ < target_ ? t + work_.generation_cycles(rrt, st.seq) : kNever;
    return rec;
  }

  void commit(const NodeRecord& rec, std::int64_t t) {
    memory_.write(static_cast<std::uint64_t>(trace_.committed_nodes), rec);
    ++trace_.committed_nodes;
    ++trace_.per_rrt_commits[static_cast<std::size_t>(rec.rrt_id)];
    if (opts_.record_payloads) trace_.committed.push_back(rec);
    emit(t, "memory", "commit", rec.rrt_id);
  }

  void commit_phase(std::int64_t t) {
    while (!merge_.empty() && merge_.front().commit_at <= t && trace_.committed_nodes < target_) {
      commit(merge_.front().rec, t);
      merge_.pop_front();
    }
    if (arch_.stages.empty() || opts_.disable_root_commit) return;
    auto& root = queues_[0];
    if (root.empty() || root.front().visible_at > t) return;
    const auto rec = root.front().rec;
    root.pop_front();
    if (arch_.kind == ArchKind::kHybrid) {
      emit(t, "merge", "push", rec.rrt_id);
      merge_.push_back(Pending{t + 1, rec});
    } else {
      commit(rec, t);
    }
  }

  void log_requests(std::int64_t t) {
    for (int i = 0; i < arch_.n; ++i) {
      auto& st = rrts_[static_cast<std::size_t>(i)];
      if (!st.logged && visible(i, t)) {
        st.logged = true;
        if (opts_.record_events) trace_.events.push_back(SimEvent{st.ready_at, "rrt", "request", i});
      }
    }
  }

  void tree_phase(std::int64_t t) {
    const std::int64_t hop = arch_.fwft ? 1 : 2;
    for (std::size_t s = 0; s < arch_.stages.size(); ++s) {
      const auto& stage = arch_.stages[s];
      if (!stage.active) continue;
      auto& q = queues_[s];
      if (static_cast<int>(q.size()) >= stage.capacity) continue;
      int child = stage.children[static_cast<std::size_t>(t % 2)];
      if (stage.children[0] == Stage::kInert) child = stage.children[1];
      if (stage.children[1] == Stage::kInert) child = stage.children[0];
      if (child == Stage::kInert) continue;

      if (Stage::is_leaf(child)) {
        const int rrt = arch_.hierarchical_rrts[static_cast<std::size_t>(Stage::slot_of(child))];
        if (!visible(rrt, t)) continue;
        q.push_back(Item{acknowledge(rrt, t, stage.name), t + 1});
      } else {
        auto& cq = queues_[static_cast<std::size_t>(child)];
        if (cq.empty() || cq.front().visible_at > t) continue;
        const auto rec = cq.front().rec;
        cq.pop_front();
        emit(t, stage.name, "push", rec.rrt_id);
        q.push_back(Item{rec, t + (stage.kind == Stage::Kind::kFifo ? hop : 1)});
      }
    }
  }

  void arbiter_phase(std::int64_t t) {
    for (int rrt : arch_.combinatorial_rrts) {
      if (!visible(rrt, t)) continue;
      merge_.push_back(Pending{t + 1, acknowledge(rrt, t, "arbiter")});
    }
  }

  const Architecture& arch_;
  Workload& work_;
  int target_;
  SimOptions opts_;
  MultiPortMemory memory_;
  std::vector<RrtState> rrts_;
  std::vector<std::deque<Item>> queues_;
  std::deque<Pending> merge_;
  SimTrace trace_;
  int acked_ = 0;
  std::int64_t last_event_ = 0;
  std::int64_t stall_limit_ = 0;
};

}  // namespace detail

/// Runs RRTs 0..n-1 of `work` on `arch` until K nodes have committed.
inline SimTrace run_simulation(const Architecture& arch, Workload& work, int target_nodes,
                               const SimOptions& opts = {}) {
  return detail::Simulator(arch, work, target_nodes, opts).run();
}

struct SpeedupResult {
  std::int64_t t1 = 0;
  std::int64_t tn = 0;
  double speedup = 0.0;
};

/// T(1) / T(N); T(1) runs RRT 0 alone on the same kind of architecture.
inline SpeedupResult measure_speedup(const Architecture& arch, Workload& work, int target_nodes) {
  auto single = build_architecture(arch.kind, 1, arch.kind == ArchKind::kHybrid ? 1 : 0, arch.fifo_depth, arch.dof,
                                   arch.fwft);
  SpeedupResult r;
  r.t1 = run_simulation(single, work, target_nodes).total_cycles;
  r.tn = arch.n == 1 ? r.t1 : run_simulation(arch, work, target_nodes).total_cycles;
  r.speedup = static_cast<double>(r.t1) / static_cast<double>(r.tn);
  return r;
}

}  // namespace hrrt
