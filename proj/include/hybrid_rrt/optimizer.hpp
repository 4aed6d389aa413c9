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
 * @file optimizer.hpp
 * @brief Chooses the hybrid split M that maximizes J(M) subject to
 *        1 <= M <= N and P_total(M) <= power cap.
 *
 * The search is a branch and bound over integer intervals of M. An interval
 * [lo, hi] is bounded by
 *
 *     J(m) <= S_total(hi) + 1 / min(P_total(lo), P_total(hi))
 *
 * and discarded outright when min(P_total(lo), P_total(hi)) exceeds the cap.
 * Both rules need S_total nondecreasing and P_total monotone on [1, N]. That
 * is certified up front with interval arithmetic on the derivative
 * polynomials; when certification fails (e.g. user-fitted curves with a
 * hump) the solver falls back to the exhaustive scan.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "hybrid_rrt/error.hpp"
#include "hybrid_rrt/perf_models.hpp"

namespace hrrt {

struct ProblemSpec {
  int n_total = 1;
  double power_cap = 1.0;
  ArchModelSet models{};

  void validate() const {
    if (n_total < 1) throw InvalidArgument("problem: n_total must be >= 1");
    if (!(power_cap > 0.0)) throw InvalidArgument("problem: power_cap must be > 0");
  }
};

struct SplitSolution {
  int m = 0;
  HybridEvaluation evaluation{};
  /// Distinct J(m) evaluations performed by the search.
  int nodes_explored = 0;
  /// True when monotonicity could not be certified and the scan was used.
  bool exhaustive_fallback = false;
};

struct IntegerInterval {
  int lo = 0;
  int hi = 0;
  int size() const noexcept { return hi - lo + 1; }
  friend bool operator==(const IntegerInterval&, const IntegerInterval&) = default;
};

/// Scans every m in [1, N]; ties in J go to the smaller m.
inline SplitSolution enumerate_oracle(const ProblemSpec& spec) {
  spec.validate();
  std::optional<SplitSolution> best;
  for (int m = 1; m <= spec.n_total; ++m) {
    const auto e = evaluate_hybrid(spec.models, spec.n_total, m);
    if (e.p_total > spec.power_cap) continue;
    if (!best || e.j > best->evaluation.j) best = SplitSolution{m, e, 0, false};
  }
  if (!best) throw NoFeasibleSolution("no split in [1, N] satisfies the power cap");
  best->nodes_explored = spec.n_total;
  return *best;
}

/// Longest run of consecutive feasible m (first one on ties); empty if none.
inline std::optional<IntegerInterval> feasible_region(const ProblemSpec& spec) {
  spec.validate();
  std::optional<IntegerInterval> best;
  int run_start = 0;
  for (int m = 1; m <= spec.n_total + 1; ++m) {
    const bool ok = m <= spec.n_total && evaluate_hybrid(spec.models, spec.n_total, m).p_total <= spec.power_cap;
    if (ok && run_start == 0) run_start = m;
    if (!ok && run_start != 0) {
      IntegerInterval run{run_start, m - 1};
      if (!best || run.size() > best->size()) best = run;
      run_start = 0;
    }
  }
  return best;
}

namespace detail {

struct Range {
  double lo;
  double hi;
};

/// Natural interval extension of p over [a, b] with 0 <= a <= b.
inline Range poly_range(const PolynomialModel& p, double a, double b) {
  Range r{0.0, 0.0};
  double pa = 1.0, pb = 1.0;
  for (double c : p.coefficients()) {
    const double x = c * pa, y = c * pb;
    r.lo += std::min(x, y);
    r.hi += std::max(x, y);
    pa *= a;
    pb *= b;
  }
  return r;
}

/**
 * Proves sign * (f'(x) - g'(n - x)) >= 0 for x in [a, b] by bisection, where
 * the f argument is shifted by `f_shift`. Returns false when a subinterval
 * cannot be resolved within the budget or a sample point violates the sign.
 */
inline bool certify_sign(const PolynomialModel& df, double f_shift, const PolynomialModel& dg, double n, double a,
                         double b, double sign) {
  std::vector<std::pair<double, double>> work{{a, b}};
  int budget = 4096;
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    const auto rf = poly_range(df, lo + f_shift, hi + f_shift);
    const auto rg = poly_range(dg, n - hi, n - lo);
    const double lower = sign > 0 ? rf.lo - rg.hi : -(rf.hi - rg.lo);
    if (lower >= 0.0) continue;
    const double mid = 0.5 * (lo + hi);
    const double at_mid = sign * (df(mid + f_shift) - dg(n - mid));
    if (at_mid < 0.0 || --budget <= 0 || hi - lo < 1e-6) return false;
    work.emplace_back(lo, mid);
    work.emplace_back(mid, hi);
  }
  return true;
}

/// Direction of the smooth part over m in [1, n-1]: +1 increasing, -1 decreasing, 0 not certified.
inline int certified_direction(const PolynomialModel& hier, const PolynomialModel& combi, int n, int combi_shift) {
  if (n <= 2) return 1;
  const auto dh = hier.derivative();
  const auto dc = combi.derivative();
  for (double sign : {1.0, -1.0})
    if (certify_sign(dc, combi_shift, dh, n, 1.0, n - 1.0, sign)) return static_cast<int>(sign);
  return 0;
}

}  // namespace detail

/// True when the endpoint bound is valid for this problem.
inline bool bound_is_certified(const ProblemSpec& spec) {
  const auto& md = spec.models;
  const int n = spec.n_total;
  if (n == 1) return true;
  // The hierarchical block vanishes at m = n, so both curves jump there. The
  // speed bound S(hi) needs S(n) >= S(n-1). The power bound min(P(lo), P(hi))
  // only breaks when P falls towards n-1 and then jumps back up.
  const auto at_n = evaluate_hybrid(md, n, n), before = evaluate_hybrid(md, n, n - 1);
  const int s_dir = detail::certified_direction(md.s_hier, md.s_combi, n, 0);
  const int p_dir = detail::certified_direction(md.p_hier, md.p_combi, n, 1);
  const bool speed_ok = s_dir > 0 && at_n.s_total >= before.s_total;
  const bool power_ok = p_dir > 0 || (p_dir < 0 && at_n.p_total <= before.p_total);
  return speed_ok && power_ok;
}

inline SplitSolution solve_split(const ProblemSpec& spec) {
  spec.validate();
  if (!bound_is_certified(spec)) {
    auto s = enumerate_oracle(spec);
    s.exhaustive_fallback = true;
    return s;
  }

  const int n = spec.n_total;
  std::vector<std::optional<HybridEvaluation>> cache(static_cast<std::size_t>(n) + 1);
  int evaluations = 0;
  auto eval = [&](int m) -> const HybridEvaluation& {
    auto& slot = cache[static_cast<std::size_t>(m)];
    if (!slot) {
      slot = evaluate_hybrid(spec.models, n, m);
      ++evaluations;
    }
    return *slot;
  };

  std::optional<SplitSolution> incumbent;
  auto consider = [&](int m) {
    const auto& e = eval(m);
    if (e.p_total > spec.power_cap) return;
    if (!incumbent || e.j > incumbent->evaluation.j || (e.j == incumbent->evaluation.j && m < incumbent->m))
      incumbent = SplitSolution{m, e, 0, false};
  };

  std::vector<IntegerInterval> stack{{1, n}};
  while (!stack.empty()) {
    const auto [lo, hi] = stack.back();
    stack.pop_back();
    consider(lo);
    consider(hi);
    if (hi - lo <= 1) continue;

    const double p_min = std::min(eval(lo).p_total, eval(hi).p_total);
    if (p_min > spec.power_cap) continue;
    const double bound =
        p_min > 0.0 ? eval(hi).s_total + 1.0 / p_min : std::numeric_limits<double>::infinity();
    if (incumbent) {
      const double best = incumbent->evaluation.j;
      if (bound < best || (bound == best && lo + 1 > incumbent->m)) continue;
    }

    const int mid = lo + (hi - lo) / 2;
    stack.push_back({lo, mid});
    stack.push_back({mid, hi});  // upper half first: S_total grows with m
  }

  if (!incumbent) throw NoFeasibleSolution("no split in [1, N] satisfies the power cap");
  incumbent->nodes_explored = evaluations;
  return *incumbent;
}

}  // namespace hrrt
