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

#include "btlrank/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "btlrank/errors.hpp"

namespace btlrank {

ScoreVector::ScoreVector(Eigen::VectorXd v) : values(std::move(v)) {
  if (values.size() == 0) {
    throw InvalidArgumentError("score vector must be non-empty");
  }
  if (!values.allFinite()) {
    throw InvalidArgumentError("score vector entries must be finite");
  }
}

bool ScoreVector::is_identified(double tol) const {
  return std::abs(values.sum()) <= tol;
}

ScoreVector ScoreVector::centered() const {
  Eigen::VectorXd v = values.array() - values.mean();
  return ScoreVector(std::move(v));
}

ComparisonGraph::ComparisonGraph(int n_items,
                                 std::vector<std::pair<int, int>> edge_list,
                                 std::optional<double> p)
    : n(n_items), edges(std::move(edge_list)), p_known(p) {
  if (n < 2) throw InvalidArgumentError("graph needs at least 2 items");
  if (p_known && (*p_known <= 0.0 || *p_known > 1.0)) {
    throw InvalidArgumentError("edge probability must be in (0, 1]");
  }
  for (auto& [i, j] : edges) {
    if (i == j) throw InvalidArgumentError("self-loop in edge list");
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n) throw InvalidArgumentError("edge index out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw InvalidArgumentError("duplicate edge in edge list");
  }
}

double ComparisonGraph::density() const {
  return 2.0 * static_cast<double>(edges.size()) /
         (static_cast<double>(n) * (n - 1));
}

ComparisonDataset::ComparisonDataset(
    ComparisonGraph g, int replicates,
    std::vector<std::vector<std::uint8_t>> outcome_rows)
    : graph(std::move(g)), L(replicates), outcomes(std::move(outcome_rows)) {
  if (L < 1) throw InvalidArgumentError("need at least one replicate");
  if (outcomes.size() != graph.edges.size()) {
    throw InvalidArgumentError("one outcome row per edge required");
  }
  means.resize(static_cast<Eigen::Index>(outcomes.size()));
  for (std::size_t e = 0; e < outcomes.size(); ++e) {
    if (static_cast<int>(outcomes[e].size()) != L) {
      throw InvalidArgumentError("edge " + std::to_string(e) +
                                 " does not have exactly L outcomes");
    }
    long sum = 0;
    for (std::uint8_t y : outcomes[e]) {
      if (y > 1) throw InvalidArgumentError("outcomes must be 0 or 1");
      sum += y;
    }
    means[static_cast<Eigen::Index>(e)] = static_cast<double>(sum) / L;
  }
}

RankingProperty RankingProperty::pairwise_preferred(int i, int j) {
  RankingProperty prop;
  prop.kind = PropertyKind::kPairwisePreferred;
  prop.item = i;
  prop.other = j;
  return prop;
}

RankingProperty RankingProperty::top_k(int i, int k) {
  RankingProperty prop;
  prop.kind = PropertyKind::kTopK;
  prop.item = i;
  prop.k = k;
  return prop;
}

void RankingProperty::validate(int n) const {
  if (item < 0 || item >= n) {
    throw IndexOutOfRangeError("property item index out of range");
  }
  switch (kind) {
    case PropertyKind::kPairwisePreferred:
      if (other < 0 || other >= n) {
        throw IndexOutOfRangeError("comparison item index out of range");
      }
      if (other == item) {
        throw InvalidArgumentError("pairwise property needs distinct items");
      }
      break;
    case PropertyKind::kTopK:
      if (k < 1 || k > n - 1) {
        throw InvalidArgumentError("K must be in [1, n-1]");
      }
      break;
    default:
      throw UnsupportedPropertyError("unknown ranking property kind");
  }
}

std::vector<int> rank_of(const ScoreVector& scores) {
  const int n = scores.n();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return scores.values[a] > scores.values[b];
  });
  std::vector<int> ranks(n);
  for (int pos = 0; pos < n; ++pos) ranks[order[pos]] = pos + 1;
  return ranks;
}

bool property_holds(const ScoreVector& scores, const RankingProperty& prop) {
  prop.validate(scores.n());
  switch (prop.kind) {
    case PropertyKind::kPairwisePreferred:
      return scores.values[prop.item] > scores.values[prop.other];
    case PropertyKind::kTopK:
      return rank_of(scores)[prop.item] <= prop.k;
    default:
      throw UnsupportedPropertyError("unknown ranking property kind");
  }
}

}  // namespace btlrank
