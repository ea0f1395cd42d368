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

// Core domain types: latent score vectors, comparison graphs and datasets,
// ranking properties. Item indices are 0-based everywhere. All types are
// immutable after construction and safe to share across threads.

#ifndef BTLRANK_MODEL_HPP_
#define BTLRANK_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace btlrank {

// Latent log-preference scores theta in R^n. Item j beats item i with
// probability sigma(theta_j - theta_i). The vector is "identified" when it
// sums to zero, since only score differences are observable.
struct ScoreVector {
  Eigen::VectorXd values;

  ScoreVector() = default;
  explicit ScoreVector(Eigen::VectorXd v);

  int n() const { return static_cast<int>(values.size()); }
  bool is_identified(double tol = 1e-9) const;

  // Returns a copy shifted to sum zero.
  ScoreVector centered() const;
};

// Undirected comparison graph on n items. Edges are stored as (i, j) with
// i < j, sorted, without duplicates.
struct ComparisonGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::optional<double> p_known;

  ComparisonGraph() = default;
  ComparisonGraph(int n_items, std::vector<std::pair<int, int>> edge_list,
                  std::optional<double> p = std::nullopt);

  int edge_count() const { return static_cast<int>(edges.size()); }

  // Empirical edge density 2|E| / (n(n-1)).
  double density() const;

  // Design probability when known, otherwise the empirical density.
  double effective_p() const { return p_known ? *p_known : density(); }
};

// A comparison graph with L replicate outcomes per edge. For edge (i, j)
// with i < j, outcome 1 means the higher-indexed item j was preferred.
struct ComparisonDataset {
  ComparisonGraph graph;
  int L = 0;
  // outcomes[e][l] in {0, 1}, one row per edge in graph.edges order.
  std::vector<std::vector<std::uint8_t>> outcomes;
  // Per-edge means ybar_ij, computed from the stored replicates.
  Eigen::VectorXd means;

  ComparisonDataset() = default;
  ComparisonDataset(ComparisonGraph g, int replicates,
                    std::vector<std::vector<std::uint8_t>> outcome_rows);

  int n() const { return graph.n; }
};

enum class PropertyKind { kPairwisePreferred, kTopK };

// A ranking property of a single item: either "item i is preferred over
// item j" or "item i ranks among the top K".
struct RankingProperty {
  PropertyKind kind = PropertyKind::kPairwisePreferred;
  int item = 0;  // the item the property is about
  int other = 0; // comparison item (PairwisePreferred only)
  int k = 0;     // K (TopK only)

  static RankingProperty pairwise_preferred(int i, int j);
  static RankingProperty top_k(int i, int k);

  void validate(int n) const;
};

// Rank per item, 1 = highest score. Ties broken by smaller index first, so
// the output is always a permutation of 1..n.
std::vector<int> rank_of(const ScoreVector& scores);

// Evaluates the property under the ranking induced by `scores`.
bool property_holds(const ScoreVector& scores, const RankingProperty& prop);

}  // namespace btlrank

#endif  // BTLRANK_MODEL_HPP_
