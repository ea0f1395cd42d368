#include <doctest.h>

#include <cmath>

#include "btlrank/errors.hpp"
#include "btlrank/estimate.hpp"
#include "btlrank/ingest.hpp"

using namespace btlrank;

namespace {

// Full rating table with no (user, pair) ties: rating of item t by user u
// is ((37 u + 17 t) mod 101) / 10, injective in t for fixed u.
std::vector<Rating> synthetic_raters(int users, int items) {
  std::vector<Rating> ratings;
  for (int u = 0; u < users; ++u) {
    for (int t = 0; t < items; ++t) {
      ratings.push_back(Rating{u, t, ((37 * u + 17 * t) % 101) / 10.0});
    }
  }
  return ratings;
}

}  // namespace

TEST_CASE("two opposing raters give a split edge") {
  const std::vector<Rating> ratings = {
      {0, 0, 5.0}, {0, 1, 3.0},   // user 0 prefers item 0
      {1, 0, 2.0}, {1, 1, 4.0},   // user 1 prefers item 1
  };
  const auto result = ratings_to_comparisons(ratings, 2, 1.0, 2, 7);
  CHECK(result.dropped_edges.empty());
  CHECK(result.dataset.L == 2);
  CHECK(result.dataset.means[0] == 0.5);
}

TEST_CASE("a tied rating contributes no comparison") {
  // User 2 rates both items 4.0; only two usable raters remain, so L = 3
  // cannot be met and the lone edge is dropped.
  const std::vector<Rating> ratings = {
      {0, 0, 5.0}, {0, 1, 3.0}, {1, 0, 2.0}, {1, 1, 4.0},
      {2, 0, 4.0}, {2, 1, 4.0},
  };
  CHECK_THROWS_AS(ratings_to_comparisons(ratings, 2, 1.0, 3, 7),
                  DisconnectedGraphError);
  CHECK_THROWS_AS(ratings_to_comparisons(ratings, 2, 1.0, 3, 7,
                                         /*drop_deficient_edges=*/false),
                  InsufficientUsersError);
  // With L = 2 the tie is simply skipped.
  const auto ok = ratings_to_comparisons(ratings, 2, 1.0, 2, 7);
  CHECK(ok.dataset.means[0] == 0.5);
}

TEST_CASE("full-rater fixture fills every edge with exactly L outcomes") {
  const auto ratings = synthetic_raters(50, 10);
  const auto result = ratings_to_comparisons(ratings, 10, 0.6, 20, 11);
  CHECK(result.dropped_edges.empty());
  CHECK(result.dataset.L == 20);
  CHECK(result.dataset.graph.n == 10);
  CHECK(check_connected(result.dataset.graph));
  for (const auto& row : result.dataset.outcomes) {
    CHECK(row.size() == 20);
  }

  // Deterministic in the seed.
  const auto again = ratings_to_comparisons(ratings, 10, 0.6, 20, 11);
  CHECK(again.dataset.outcomes == result.dataset.outcomes);
  const auto other = ratings_to_comparisons(ratings, 10, 0.6, 20, 12);
  CHECK(other.dataset.outcomes != result.dataset.outcomes);
}

TEST_CASE("ratings validation") {
  CHECK_THROWS_AS(ratings_to_comparisons({{0, 5, 1.0}}, 2, 1.0, 1, 0),
                  InvalidArgumentError);
  const std::vector<Rating> duplicate = {{0, 0, 1.0}, {0, 0, 2.0}};
  CHECK_THROWS_AS(ratings_to_comparisons(duplicate, 2, 1.0, 1, 0),
                  InvalidArgumentError);
}

TEST_CASE("equalize_replicates keeps equal-length lists untouched") {
  const ComparisonGraph graph(3, {{0, 1}, {0, 2}, {1, 2}});
  const std::vector<std::vector<std::uint8_t>> raw = {
      {1, 0, 1, 1, 0}, {0, 0, 1, 0, 1}, {1, 1, 1, 0, 0}};
  const auto data = equalize_replicates(graph, raw, 5);
  CHECK(data.L == 5);
  CHECK(data.outcomes == raw);
}

TEST_CASE("equalize_replicates trims to the shortest list") {
  const ComparisonGraph graph(3, {{0, 1}, {0, 2}, {1, 2}});
  const std::vector<std::vector<std::uint8_t>> raw = {
      {1, 0, 1, 1, 0}, {0, 1, 1}, {1, 1, 1, 0, 0, 1, 0}};
  const auto data = equalize_replicates(graph, raw, 5);
  CHECK(data.L == 3);
  for (const auto& row : data.outcomes) CHECK(row.size() == 3);

  const std::vector<std::vector<std::uint8_t>> with_empty = {{1}, {}, {0}};
  CHECK_THROWS_AS(equalize_replicates(graph, with_empty, 5),
                  InvalidArgumentError);
}

TEST_CASE("subsampling is uniform: hypergeometric mean check") {
  // One edge with 30 wins then 30 losses; trimming to L = 20 must sample
  // uniformly, so the subsample mean stays near 1/2 on average.
  const ComparisonGraph graph(3, {{0, 1}, {0, 2}, {1, 2}});
  std::vector<std::uint8_t> long_row(60, 0);
  for (int i = 0; i < 30; ++i) long_row[static_cast<std::size_t>(i)] = 1;
  std::vector<std::uint8_t> short_row(20, 1);
  std::vector<std::uint8_t> mid_row(25, 0);

  double total = 0.0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    const auto data = equalize_replicates(
        graph, {long_row, short_row, mid_row}, static_cast<std::uint64_t>(s));
    total += data.means[0];
  }
  const double mean = total / seeds;
  // sd of one subsample mean, with the finite-population correction.
  const double sd = std::sqrt(0.25 / 20.0 * (60.0 - 20.0) / (60.0 - 1.0));
  CHECK(std::abs(mean - 0.5) <= 3.0 * sd / std::sqrt(seeds));
}
