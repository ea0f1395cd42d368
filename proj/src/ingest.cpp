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

#include "btlrank/ingest.hpp"

#include <algorithm>
#include <string>

#include "btlrank/errors.hpp"
#include "btlrank/estimate.hpp"
#include "btlrank/rng.hpp"
#include "btlrank/simulate.hpp"

namespace btlrank {

namespace {

// Partial Fisher-Yates: the first `take` entries are a uniform sample
// without replacement, deterministic in (seed, stream). Taking everything
// keeps the original order.
template <typename T>
void sample_prefix(std::vector<T>& pool, int take, std::uint64_t seed,
                   std::uint64_t stream) {
  const int m = static_cast<int>(pool.size());
  if (take >= m) return;
  for (int t = 0; t < take; ++t) {
    const double u = rng::u01(seed, stream, static_cast<std::uint64_t>(t));
    const int pick = t + std::min(m - t - 1, static_cast<int>(u * (m - t)));
    std::swap(pool[static_cast<std::size_t>(t)],
              pool[static_cast<std::size_t>(pick)]);
  }
}

}  // namespace

IngestResult ratings_to_comparisons(const std::vector<Rating>& ratings,
                                    int n_items, double p, int L,
                                    std::uint64_t seed,
                                    bool drop_deficient_edges) {
  if (L < 1) throw InvalidArgumentError("need at least one replicate");
  // Per-item (user, rating) lists sorted by user for pairwise intersection.
  std::vector<std::vector<std::pair<int, double>>> by_item(
      static_cast<std::size_t>(n_items));
  for (const auto& rating : ratings) {
    if (rating.item < 0 || rating.item >= n_items) {
      throw InvalidArgumentError("item id " + std::to_string(rating.item) +
                                 " out of range");
    }
    by_item[static_cast<std::size_t>(rating.item)].emplace_back(rating.user,
                                                                rating.rating);
  }
  for (auto& list : by_item) {
    std::sort(list.begin(), list.end());
    for (std::size_t idx = 1; idx < list.size(); ++idx) {
      if (list[idx].first == list[idx - 1].first) {
        throw InvalidArgumentError("duplicate rating for a (user, item) pair");
      }
    }
  }

  const ComparisonGraph proposal = generate_graph(n_items, p, seed);
  std::vector<std::pair<int, int>> kept_edges;
  std::vector<std::vector<std::uint8_t>> outcome_rows;
  std::vector<std::pair<int, int>> dropped;

  for (std::size_t e = 0; e < proposal.edges.size(); ++e) {
    const auto [i, j] = proposal.edges[e];
    const auto& left = by_item[static_cast<std::size_t>(i)];
    const auto& right = by_item[static_cast<std::size_t>(j)];
    // Co-raters with distinct ratings on the pair; outcome 1 iff the
    // higher-indexed item j got the higher rating.
    std::vector<std::uint8_t> candidates;
    std::size_t a = 0, b = 0;
    while (a < left.size() && b < right.size()) {
      if (left[a].first < right[b].first) {
        ++a;
      } else if (right[b].first < left[a].first) {
        ++b;
      } else {
        if (left[a].second != right[b].second) {
          candidates.push_back(right[b].second > left[a].second ? 1 : 0);
        }
        ++a;
        ++b;
      }
    }
    if (static_cast<int>(candidates.size()) < L) {
      if (!drop_deficient_edges) {
        throw InsufficientUsersError(
            "edge (" + std::to_string(i) + ", " + std::to_string(j) +
            ") has only " + std::to_string(candidates.size()) +
            " untied co-raters, need " + std::to_string(L));
      }
      dropped.emplace_back(i, j);
      continue;
    }
    sample_prefix(candidates, L, seed, rng::stream_id(rng::Stream::kSubsample, e));
    candidates.resize(static_cast<std::size_t>(L));
    kept_edges.emplace_back(i, j);
    outcome_rows.push_back(std::move(candidates));
  }

  ComparisonGraph graph(n_items, std::move(kept_edges), p);
  if (!check_connected(graph)) {
    throw DisconnectedGraphError(
        "comparison graph is not connected after dropping " +
        std::to_string(dropped.size()) + " deficient edges");
  }
  return IngestResult{ComparisonDataset(std::move(graph), L,
                                        std::move(outcome_rows)),
                      std::move(dropped)};
}

ComparisonDataset equalize_replicates(
    const ComparisonGraph& graph,
    const std::vector<std::vector<std::uint8_t>>& raw, std::uint64_t seed) {
  if (raw.size() != graph.edges.size()) {
    throw InvalidArgumentError("one outcome list per edge required");
  }
  std::size_t min_len = SIZE_MAX;
  for (const auto& row : raw) {
    if (row.empty()) throw InvalidArgumentError("empty outcome list");
    min_len = std::min(min_len, row.size());
  }
  const int L = static_cast<int>(min_len);
  std::vector<std::vector<std::uint8_t>> rows(raw.size());
  for (std::size_t e = 0; e < raw.size(); ++e) {
    std::vector<std::uint8_t> pool = raw[e];
    sample_prefix(pool, L, seed, rng::stream_id(rng::Stream::kSubsample, e));
    pool.resize(static_cast<std::size_t>(L));
    rows[e] = std::move(pool);
  }
  return ComparisonDataset(graph, L, std::move(rows));
}

}  // namespace btlrank
