// Copyright 2026 The btlrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Gaussian multiplier bootstrap for the maximum score-difference statistic
// over a declared edge set, with empirical quantiles and tail p-values.

#ifndef BTLRANK_BOOTSTRAP_HPP_
#define BTLRANK_BOOTSTRAP_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "btlrank/model.hpp"

namespace btlrank {

// Ordered item pairs the max statistic ranges over.
struct EdgeSetSpec {
  enum class Kind { kStar, kFull, kExplicit };

  Kind kind = Kind::kFull;
  int center = -1;  // Star only
  std::vector<std::pair<int, int>> pairs;  // Explicit only

  // All (i, j), j != i.
  static EdgeSetSpec star(int i);
  // All ordered pairs (i, j), i != j.
  static EdgeSetSpec full();
  static EdgeSetSpec explicit_pairs(std::vector<std::pair<int, int>> pairs);

  void validate(int n) const;
};

struct BootstrapDraws {
  Eigen::VectorXd draws;
  EdgeSetSpec edge_set;
  int B = 0;
  std::uint64_t seed = 0;
  double scale = 0.0;  // sqrt(n p / L) factor baked into the draws
};

// Per-replicate gradient-style residuals: row l is
//   sum over edges (m, k), m < k, of (-y_mk^(l) + sigma(theta_k - theta_m))
//   (e_k - e_m).
// Rows sum to zero and average to gradient(theta_hat, data).
Eigen::MatrixXd residual_profile(const ScoreVector& theta_hat,
                                 const ComparisonDataset& data);

// Draw b is
//   W_b = max over (i, j) in the edge set of
//         (1/sqrt(L)) sum_l z_l * s_l(i, j),
//   s_l(i, j) = -sqrt(scale_np) ([Theta11]_i - [Theta11]_j) r^(l),
// with z_l i.i.d. standard normal, counter-based on (seed, b, l).
BootstrapDraws draw_max_statistics(const Eigen::MatrixXd& profile,
                                   const Eigen::MatrixXd& theta11,
                                   const EdgeSetSpec& edge_set,
                                   double scale_np, int B,
                                   std::uint64_t seed);

// Empirical (1-alpha) quantile: ascending order statistic at index
// ceil((1-alpha) B), clamped; no interpolation.
double quantile_cw(const BootstrapDraws& draws, double alpha);

// Add-one-smoothed bootstrap tail mass (1 + #{W_b >= t}) / (B + 1).
double p_value(const BootstrapDraws& draws, double t_obs);

}  // namespace btlrank

#endif  // BTLRANK_BOOTSTRAP_HPP_
