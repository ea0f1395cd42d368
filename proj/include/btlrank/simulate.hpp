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

// Synthetic data generation and signal-strength diagnostics. All sampling
// is counter-based, so outputs depend only on the seed, never on iteration
// order or thread count.

#ifndef BTLRANK_SIMULATE_HPP_
#define BTLRANK_SIMULATE_HPP_

#include <cstdint>

#include "btlrank/model.hpp"

namespace btlrank {

// Erdos-Renyi graph: each unordered pair is an edge independently with
// probability p. Requires n >= 2 and p in (0, 1].
ComparisonGraph generate_graph(int n, double p, std::uint64_t seed);

// For each edge (i, j), i < j, draws L Bernoulli outcomes with success
// probability sigma(theta_j - theta_i) (success = higher-indexed item wins).
ComparisonDataset generate_outcomes(const ComparisonGraph& graph,
                                    const ScoreVector& scores, int L,
                                    std::uint64_t seed);

// Gap between the null and the alternative for a single property:
// |theta_i - theta_j| for a pairwise preference, |theta_i - theta_(K+1)|
// for a top-K membership (theta_(K+1) = (K+1)-th largest score).
// Errors on an exact tie across the property boundary.
double signal_distance(const ScoreVector& scores, const RankingProperty& prop);

// Minimum signal distance over the items whose property holds; for a full
// top-K family this is the gap theta_(K) - theta_(K+1).
double multiple_testing_signal(const ScoreVector& scores,
                               const std::vector<RankingProperty>& props);

// Families with a closed-form divider-set cardinality. Both require a
// two-block score vector (leaders tied at one value, the rest tied at a
// lower value).
//   kTopK:      K leaders; cardinality K * (n - K).
//   kAboveItem: parametrized by the 1-based rank k of the reference item,
//               so k - 1 leaders; cardinality (k - 1) * (n - k) + 1.
enum class DividerFamily { kTopK, kAboveItem };

long divider_cardinality(const ScoreVector& scores, DividerFamily family,
                         int k);

// Experiment helpers: i.i.d. uniform [lo, hi] scores recentered to sum
// zero, and tied-block designs ({count, value} pairs), also recentered.
ScoreVector scores_uniform(int n, double lo, double hi, std::uint64_t seed);
ScoreVector scores_blocks(const std::vector<std::pair<int, double>>& blocks);

}  // namespace btlrank

#endif  // BTLRANK_SIMULATE_HPP_
