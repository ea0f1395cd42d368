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

#include "btlrank/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "btlrank/errors.hpp"
#include "btlrank/rng.hpp"

namespace btlrank {

namespace {

double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// (K+1)-th largest entry, K in [1, n-1].
double kth_plus_one_largest(const Eigen::VectorXd& v, int k) {
  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  return sorted[static_cast<std::size_t>(k)];
}

}  // namespace

ComparisonGraph generate_graph(int n, double p, std::uint64_t seed) {
  if (n < 2) throw InvalidArgumentError("need at least 2 items");
  if (!(p > 0.0) || p > 1.0) {
    throw InvalidArgumentError("edge probability must be in (0, 1]");
  }
  std::vector<std::pair<int, int>> edges;
  const std::uint64_t stream = rng::stream_id(rng::Stream::kGraph);
  std::uint64_t pair_index = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++pair_index) {
      if (rng::u01(seed, stream, pair_index) < p) edges.emplace_back(i, j);
    }
  }
  return ComparisonGraph(n, std::move(edges), p);
}

ComparisonDataset generate_outcomes(const ComparisonGraph& graph,
                                    const ScoreVector& scores, int L,
                                    std::uint64_t seed) {
  if (L < 1) throw InvalidArgumentError("need at least one replicate");
  if (scores.n() != graph.n) {
    throw InvalidArgumentError("score vector size does not match graph");
  }
  std::vector<std::vector<std::uint8_t>> outcomes(graph.edges.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto [i, j] = graph.edges[e];
    const double q = logistic(scores.values[j] - scores.values[i]);
    const std::uint64_t stream = rng::stream_id(rng::Stream::kOutcome, e);
    auto& row = outcomes[e];
    row.resize(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l) {
      row[static_cast<std::size_t>(l)] =
          rng::u01(seed, stream, static_cast<std::uint64_t>(l)) < q ? 1 : 0;
    }
  }
  return ComparisonDataset(graph, L, std::move(outcomes));
}

double signal_distance(const ScoreVector& scores,
                       const RankingProperty& prop) {
  prop.validate(scores.n());
  switch (prop.kind) {
    case PropertyKind::kPairwisePreferred: {
      const double gap =
          scores.values[prop.item] - scores.values[prop.other];
      if (gap == 0.0) {
        throw InvalidArgumentError(
            "exact score tie across the property boundary");
      }
      return std::abs(gap);
    }
    case PropertyKind::kTopK: {
      const double boundary = kth_plus_one_largest(scores.values, prop.k);
      const double gap = scores.values[prop.item] - boundary;
      if (gap == 0.0) {
        throw InvalidArgumentError(
            "exact score tie across the property boundary");
      }
      return std::abs(gap);
    }
    default:
      throw UnsupportedPropertyError("unknown ranking property kind");
  }
}

double multiple_testing_signal(const ScoreVector& scores,
                               const std::vector<RankingProperty>& props) {
  if (props.empty()) throw InvalidArgumentError("empty property family");
  std::set<int> items;
  for (const auto& prop : props) {
    prop.validate(scores.n());
    if (prop.kind != props.front().kind) {
      throw InvalidArgumentError("property family must have a uniform kind");
    }
    if (!items.insert(prop.item).second) {
      throw InvalidArgumentError("one property per item required");
    }
  }
  bool any = false;
  double signal = 0.0;
  for (const auto& prop : props) {
    if (!property_holds(scores, prop)) continue;
    const double d = signal_distance(scores, prop);
    signal = any ? std::min(signal, d) : d;
    any = true;
  }
  if (!any) {
    throw InvalidArgumentError("no property in the family holds");
  }
  return signal;
}

long divider_cardinality(const ScoreVector& scores, DividerFamily family,
                         int k) {
  const int n = scores.n();
  std::set<double> distinct(scores.values.data(),
                            scores.values.data() + scores.values.size());
  if (distinct.size() != 2) {
    throw InvalidArgumentError(
        "scores must form two tied blocks (leaders and the rest)");
  }
  const double hi = *distinct.rbegin();
  const long leaders = (scores.values.array() == hi).count();
  switch (family) {
    case DividerFamily::kTopK:
      if (k < 1 || k > n - 1) throw InvalidArgumentError("K out of range");
      if (leaders != k) {
        throw InvalidArgumentError("top block must have exactly K items");
      }
      return static_cast<long>(k) * (n - k);
    case DividerFamily::kAboveItem:
      if (k < 2 || k > n) {
        throw InvalidArgumentError("reference rank k out of range");
      }
      if (leaders != k - 1) {
        throw InvalidArgumentError("top block must have exactly k-1 items");
      }
      return static_cast<long>(k - 1) * (n - k) + 1;
    default:
      throw InvalidArgumentError("unknown divider family");
  }
}

ScoreVector scores_uniform(int n, double lo, double hi, std::uint64_t seed) {
  if (n < 2) throw InvalidArgumentError("need at least 2 items");
  if (!(hi >= lo)) throw InvalidArgumentError("need hi >= lo");
  Eigen::VectorXd v(n);
  const std::uint64_t stream = rng::stream_id(rng::Stream::kScores);
  for (int i = 0; i < n; ++i) {
    v[i] = lo + (hi - lo) * rng::u01(seed, stream, static_cast<std::uint64_t>(i));
  }
  return ScoreVector(std::move(v)).centered();
}

ScoreVector scores_blocks(const std::vector<std::pair<int, double>>& blocks) {
  std::vector<double> values;
  for (const auto& [count, value] : blocks) {
    if (count < 1) throw InvalidArgumentError("block count must be positive");
    values.insert(values.end(), static_cast<std::size_t>(count), value);
  }
  if (values.size() < 2) throw InvalidArgumentError("need at least 2 items");
  Eigen::VectorXd v =
      Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return ScoreVector(std::move(v)).centered();
}

}  // namespace btlrank
