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

// Conversion of user x item rating tables into pairwise-comparison
// datasets: draw a comparison graph, then for each edge sample users who
// rated both endpoints with distinct ratings.

#ifndef BTLRANK_INGEST_HPP_
#define BTLRANK_INGEST_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "btlrank/model.hpp"

namespace btlrank {

struct Rating {
  int user = 0;
  int item = 0;
  double rating = 0.0;
};

struct IngestResult {
  ComparisonDataset dataset;
  // Edges removed because fewer than L users rated both endpoints with
  // distinct ratings.
  std::vector<std::pair<int, int>> dropped_edges;
};

// Draws an Erdos-Renyi graph on n_items at probability p, then fills each
// edge (i, j) with L outcomes from L distinct users sampled uniformly
// among those who rated both items with unequal ratings (ties never
// contribute). Outcome 1 means the user rated item j strictly higher.
//
// Edges short of L usable users are dropped and reported when
// drop_deficient_edges is true (the default); otherwise
// InsufficientUsersError. Throws DisconnectedGraphError if the surviving
// graph is not connected.
IngestResult ratings_to_comparisons(const std::vector<Rating>& ratings,
                                    int n_items, double p, int L,
                                    std::uint64_t seed,
                                    bool drop_deficient_edges = true);

// Trims variable-length per-edge outcome lists to a common L = min length
// by seeded subsampling without replacement.
ComparisonDataset equalize_replicates(
    const ComparisonGraph& graph,
    const std::vector<std::vector<std::uint8_t>>& raw, std::uint64_t seed);

}  // namespace btlrank

#endif  // BTLRANK_INGEST_HPP_
