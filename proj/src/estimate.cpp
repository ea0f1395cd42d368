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

#include "btlrank/estimate.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Cholesky>

#include "btlrank/errors.hpp"

namespace btlrank {

void MleConfig::validate() const {
  if (lambda0 && *lambda0 < 0.0) {
    throw InvalidArgumentError("lambda0 must be nonnegative");
  }
  if (!(tol_grad_inf > 0.0)) throw InvalidArgumentError("tolerance must be positive");
  if (max_iters < 1) throw InvalidArgumentError("max_iters must be >= 1");
}

double MleConfig::resolve_lambda0(const ComparisonDataset& data) const {
  if (lambda0) return *lambda0;
  const int n = data.n();
  const double p = data.graph.effective_p();
  return lambda0_scale * std::sqrt(n * p * std::log(n) / data.L);
}

double neg_log_likelihood(const ScoreVector& theta,
                          const ComparisonDataset& data) {
  if (theta.n() != data.n()) {
    throw InvalidArgumentError("score vector size does not match dataset");
  }
  double total = 0.0;
  for (std::size_t e = 0; e < data.graph.edges.size(); ++e) {
    const auto [i, j] = data.graph.edges[e];
    const double d = theta.values[j] - theta.values[i];
    total += -data.means[static_cast<Eigen::Index>(e)] * d + log1pexp(d);
  }
  return total;
}

Eigen::VectorXd gradient(const ScoreVector& theta,
                         const ComparisonDataset& data) {
  if (theta.n() != data.n()) {
    throw InvalidArgumentError("score vector size does not match dataset");
  }
  Eigen::VectorXd g = Eigen::VectorXd::Zero(theta.n());
  for (std::size_t e = 0; e < data.graph.edges.size(); ++e) {
    const auto [i, j] = data.graph.edges[e];
    const double v = -data.means[static_cast<Eigen::Index>(e)] +
                     logistic(theta.values[j] - theta.values[i]);
    g[j] += v;
    g[i] -= v;
  }
  return g;
}

Eigen::MatrixXd hessian(const ScoreVector& theta,
                        const ComparisonDataset& data) {
  if (theta.n() != data.n()) {
    throw InvalidArgumentError("score vector size does not match dataset");
  }
  const int n = theta.n();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j] : data.graph.edges) {
    const double s = logistic(theta.values[j] - theta.values[i]);
    const double w = s * (1.0 - s);
    h(i, i) += w;
    h(j, j) += w;
    h(i, j) -= w;
    h(j, i) -= w;
  }
  return h;
}

bool check_connected(const ComparisonGraph& graph) {
  std::vector<int> parent(static_cast<std::size_t>(graph.n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  int components = graph.n;
  for (const auto& [i, j] : graph.edges) {
    const int ri = find(i), rj = find(j);
    if (ri != rj) {
      parent[static_cast<std::size_t>(ri)] = rj;
      --components;
    }
  }
  return components == 1;
}

FitResult fit_mle(const ComparisonDataset& data, const MleConfig& config) {
  config.validate();
  if (!check_connected(data.graph)) {
    throw DisconnectedGraphError("comparison graph is not connected");
  }

  const int n = data.n();
  const double lambda0 = config.resolve_lambda0(data);
  const auto objective = [&](const ScoreVector& t) {
    return neg_log_likelihood(t, data) + lambda0 * t.values.squaredNorm();
  };

  FitResult result;
  result.lambda0 = lambda0;
  ScoreVector theta(Eigen::VectorXd::Zero(n));
  double obj = objective(theta);
  result.objective_trace.push_back(obj);

  for (int iter = 0; iter < config.max_iters; ++iter) {
    Eigen::VectorXd grad = gradient(theta, data) + 2.0 * lambda0 * theta.values;
    result.grad_inf_norm = grad.lpNorm<Eigen::Infinity>();
    result.iterations = iter;
    if (result.grad_inf_norm <= config.tol_grad_inf) {
      theta = theta.centered();
      result.theta = std::move(theta);
      return result;
    }

    Eigen::MatrixXd h = hessian(theta, data);
    if (lambda0 > 0.0) {
      h.diagonal().array() += 2.0 * lambda0;
    } else {
      // With no ridge the Hessian kernel is span{1}; the rank-one shift
      // makes the system SPD without altering steps orthogonal to 1.
      h.array() += 1.0 / n;
    }
    const Eigen::VectorXd step = h.llt().solve(-grad);

    // Backtracking line search with the Armijo condition, slackened by the
    // rounding floor of the objective so steps are not rejected once the
    // true decrease falls below double precision.
    const double slope = grad.dot(step);
    const double rounding =
        16.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(obj));
    double t = 1.0;
    bool accepted = false;
    while (t >= 1e-14) {
      ScoreVector candidate(theta.values + t * step);
      const double cand_obj = objective(candidate);
      if (cand_obj <= obj + 1e-4 * t * slope + rounding) {
        theta = std::move(candidate);
        obj = cand_obj;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    result.objective_trace.push_back(obj);
    if (!accepted) break;
  }

  const Eigen::VectorXd grad =
      gradient(theta, data) + 2.0 * lambda0 * theta.values;
  result.grad_inf_norm = grad.lpNorm<Eigen::Infinity>();
  if (result.grad_inf_norm <= config.tol_grad_inf) {
    result.iterations = config.max_iters;
    result.theta = theta.centered();
    return result;
  }
  throw NoConvergenceError("gradient norm " +
                           std::to_string(result.grad_inf_norm) +
                           " above tolerance after max_iters");
}

}  // namespace btlrank
