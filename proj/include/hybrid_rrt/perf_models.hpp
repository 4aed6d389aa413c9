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
 * @file perf_models.hpp
 * @brief Analytical speed-up and power curves of the hierarchical and
 *        combinatorial write architectures, and the hybrid cost function.
 *
 * A hybrid design with N RRT modules places M of them on a combinatorial
 * block and N-M on a hierarchical tree. Its speed-up and power are the sums
 * of the two blocks' curves; the merge stage counts as one more
 * combinatorial block on the power side only:
 *
 *     S_total(M) = S_hier(N-M) + S_combi(M)
 *     P_total(M) = P_hier(N-M) + P_combi(M+1)
 *     J(M)       = S_total(M) + 1 / P_total(M)
 *
 * An empty block (count 0) contributes nothing, which makes the hybrid
 * collapse to the pure combinatorial curves at M = N.
 */

#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hybrid_rrt/error.hpp"

namespace hrrt {

/// Polynomial in one variable, coefficients lowest degree first.
class PolynomialModel {
 public:
  PolynomialModel() = default;
  PolynomialModel(std::initializer_list<double> coefficients) : coefficients_(coefficients) {}
  explicit PolynomialModel(std::vector<double> coefficients) : coefficients_(std::move(coefficients)) {}

  const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  std::size_t degree() const noexcept { return coefficients_.empty() ? 0 : coefficients_.size() - 1; }

  /// Horner evaluation at a real argument.
  double operator()(double x) const noexcept {
    double acc = 0.0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// First derivative as a new polynomial.
  PolynomialModel derivative() const {
    std::vector<double> d;
    for (std::size_t k = 1; k < coefficients_.size(); ++k) d.push_back(static_cast<double>(k) * coefficients_[k]);
    return PolynomialModel(std::move(d));
  }

  friend bool operator==(const PolynomialModel&, const PolynomialModel&) = default;

 private:
  std::vector<double> coefficients_;
};

/// The four fitted curves. Defaults are the published fits.
struct ArchModelSet {
  PolynomialModel s_hier{2.8, 0.41, 0.0019};
  PolynomialModel p_hier{1.8, 0.17};
  PolynomialModel s_combi{3.3, 5.7, 0.0, 0.021};
  PolynomialModel p_combi{1.0, 0.79, -0.0048, 1.6e-5};

  friend bool operator==(const ArchModelSet&, const ArchModelSet&) = default;
};

/// How many combinatorial blocks a split with M = 0 is charged for.
enum class MergeConvention {
  kLiteral,           ///< always M+1 (the merge block survives at M = 0)
  kPureHierarchical,  ///< M = 0 is plain hierarchical, no merge block
};

struct HybridEvaluation {
  int n_total = 0;
  int m_combi = 0;
  double s_total = 0.0;
  double p_total = 0.0;
  double j = 0.0;
};

inline double eval_model(const PolynomialModel& model, int n) {
  if (n < 0) throw InvalidArgument("eval_model: n must be >= 0");
  return model(static_cast<double>(n));
}

/// Curve value for a block of `count` modules; an empty block contributes 0.
inline double block_contribution(const PolynomialModel& model, int count) {
  if (count < 0) throw InvalidArgument("block_contribution: count must be >= 0");
  return count == 0 ? 0.0 : eval_model(model, count);
}

inline HybridEvaluation evaluate_hybrid(const ArchModelSet& models, int n, int m,
                                        MergeConvention convention = MergeConvention::kLiteral) {
  if (n < 1) throw InvalidArgument("evaluate_hybrid: n must be >= 1");
  if (m < 0 || m > n) throw InvalidArgument("evaluate_hybrid: m must lie in [0, n]");
  const int combi_blocks = (m == 0 && convention == MergeConvention::kPureHierarchical) ? 0 : m + 1;

  HybridEvaluation e;
  e.n_total = n;
  e.m_combi = m;
  e.s_total = block_contribution(models.s_hier, n - m) + block_contribution(models.s_combi, m);
  e.p_total = block_contribution(models.p_hier, n - m) + block_contribution(models.p_combi, combi_blocks);
  if (e.p_total == 0.0) throw InvalidArgument("evaluate_hybrid: total power is zero, J is undefined");
  e.j = e.s_total + 1.0 / e.p_total;
  return e;
}

/// Performance per watt.
inline double efficiency(double speedup, double power) {
  if (!(power > 0.0)) throw InvalidArgument("efficiency: power must be > 0");
  return speedup / power;
}

/// Modeled power of a pure architecture with n modules.
inline double hierarchical_power(const ArchModelSet& models, int n) { return block_contribution(models.p_hier, n); }
inline double combinatorial_power(const ArchModelSet& models, int n) { return block_contribution(models.p_combi, n); }

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace detail

/**
 * Parses a model override file. One entry per line:
 *
 *     hier.speedup  = 2.8, 0.41, 0.0019
 *     combi.power   = 1, 0.79, -0.0048, 1.6e-5
 *
 * Architecture is `hier`/`hierarchical` or `combi`/`combinatorial`, metric is
 * `speedup` or `power`. Lines starting with `#` are comments. Keys not present
 * keep their defaults.
 */
inline ArchModelSet parse_models(std::istream& in, const std::string& origin = "<stream>") {
  ArchModelSet models;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto where = origin + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidArgument(where + ": expected 'key = coefficients'");
    const auto key = detail::trim(line.substr(0, eq));
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw InvalidArgument(where + ": key must be architecture.metric");
    const auto arch = key.substr(0, dot);
    const auto metric = key.substr(dot + 1);

    std::vector<double> coefficients;
    std::stringstream values(line.substr(eq + 1));
    std::string item;
    while (std::getline(values, item, ',')) {
      item = detail::trim(item);
      if (item.empty()) throw InvalidArgument(where + ": empty coefficient");
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size()) throw InvalidArgument(where + ": bad coefficient '" + item + "'");
      coefficients.push_back(v);
    }
    if (coefficients.empty()) throw InvalidArgument(where + ": no coefficients");

    PolynomialModel poly(std::move(coefficients));
    const bool hier = arch == "hier" || arch == "hierarchical";
    const bool combi = arch == "combi" || arch == "combinatorial";
    if (hier && metric == "speedup") {
      models.s_hier = poly;
    } else if (hier && metric == "power") {
      models.p_hier = poly;
    } else if (combi && metric == "speedup") {
      models.s_combi = poly;
    } else if (combi && metric == "power") {
      models.p_combi = poly;
    } else {
      throw InvalidArgument(where + ": unknown key '" + key + "'");
    }
  }
  return models;
}

inline ArchModelSet load_models(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file '" + path + "'");
  return parse_models(in, path);
}

}  // namespace hrrt
