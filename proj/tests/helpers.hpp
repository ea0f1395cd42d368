#ifndef BTLRANK_TESTS_HELPERS_HPP_
#define BTLRANK_TESTS_HELPERS_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "btlrank/estimate.hpp"
#include "btlrank/model.hpp"
#include "btlrank/rng.hpp"
#include "btlrank/simulate.hpp"

namespace btlrank::testing {

// Dataset with explicit outcome rows (one row per edge, i < j).
inline ComparisonDataset make_dataset(
    int n, const std::vector<std::pair<int, int>>& edges,
    const std::vector<std::vector<std::uint8_t>>& outcomes) {
  const int L = static_cast<int>(outcomes.front().size());
  return ComparisonDataset(ComparisonGraph(n, edges), L, outcomes);
}

// Small random connected instance for oracle checks. Draws Erdos-Renyi
// graphs at growing density until connected, with uniform [-1, 1] scores.
inline ComparisonDataset random_connected_dataset(std::uint64_t seed, int n,
                                                  int L, double p = 0.7) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const auto graph =
        generate_graph(n, std::min(1.0, p + 0.1 * static_cast<double>(attempt)),
                       seed + 1000 * attempt);
    if (!check_connected(graph)) continue;
    const auto scores = scores_uniform(n, -1.0, 1.0, seed ^ 0x9E3779B97F4A7C15ull);
    return generate_outcomes(graph, scores, L, seed);
  }
}

// Central finite differences of the negative log-likelihood.
inline Eigen::VectorXd fd_gradient(const ScoreVector& theta,
                                   const ComparisonDataset& data,
                                   double h = 1e-6) {
  const int n = theta.n();
  Eigen::VectorXd grad(n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd up = theta.values, down = theta.values;
    up[i] += h;
    down[i] -= h;
    grad[i] = (neg_log_likelihood(ScoreVector(up), data) -
               neg_log_likelihood(ScoreVector(down), data)) /
              (2.0 * h);
  }
  return grad;
}

// Central finite differences of the gradient.
inline Eigen::MatrixXd fd_hessian(const ScoreVector& theta,
                                  const ComparisonDataset& data,
                                  double h = 1e-6) {
  const int n = theta.n();
  Eigen::MatrixXd hess(n, n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd up = theta.values, down = theta.values;
    up[i] += h;
    down[i] -= h;
    hess.col(i) = (gradient(ScoreVector(up), data) -
                   gradient(ScoreVector(down), data)) /
                  (2.0 * h);
  }
  return hess;
}

}  // namespace btlrank::testing

#endif  // BTLRANK_TESTS_HELPERS_HPP_
