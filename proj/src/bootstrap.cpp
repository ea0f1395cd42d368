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

#include "btlrank/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "btlrank/errors.hpp"
#include "btlrank/estimate.hpp"
#include "btlrank/rng.hpp"

namespace btlrank {

EdgeSetSpec EdgeSetSpec::star(int i) {
  EdgeSetSpec spec;
  spec.kind = Kind::kStar;
  spec.center = i;
  return spec;
}

EdgeSetSpec EdgeSetSpec::full() {
  EdgeSetSpec spec;
  spec.kind = Kind::kFull;
  return spec;
}

EdgeSetSpec EdgeSetSpec::explicit_pairs(
    std::vector<std::pair<int, int>> pairs) {
  EdgeSetSpec spec;
  spec.kind = Kind::kExplicit;
  spec.pairs = std::move(pairs);
  return spec;
}

void EdgeSetSpec::validate(int n) const {
  if (n < 2) throw InvalidArgumentError("need at least 2 items");
  switch (kind) {
    case Kind::kStar:
      if (center < 0 || center >= n) {
        throw IndexOutOfRangeError("star center out of range");
      }
      break;
    case Kind::kFull:
      break;
    case Kind::kExplicit:
      if (pairs.empty()) throw EmptyEdgeSetError("explicit edge set is empty");
      for (const auto& [i, j] : pairs) {
        if (i < 0 || i >= n || j < 0 || j >= n) {
          throw IndexOutOfRangeError("edge set index out of range");
        }
        if (i == j) throw InvalidArgumentError("edge set pair has equal endpoints");
      }
      break;
  }
}

Eigen::MatrixXd residual_profile(const ScoreVector& theta_hat,
                                 const ComparisonDataset& data) {
  const int n = data.n();
  if (theta_hat.n() != n) {
    throw InvalidArgumentError("score vector size does not match dataset");
  }
  const auto& edges = data.graph.edges;
  Eigen::VectorXd sigma(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [i, j] = edges[e];
    sigma[static_cast<Eigen::Index>(e)] =
        logistic(theta_hat.values[j] - theta_hat.values[i]);
  }
  Eigen::MatrixXd profile = Eigen::MatrixXd::Zero(data.L, n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [i, j] = edges[e];
    const double s = sigma[static_cast<Eigen::Index>(e)];
    const auto& row = data.outcomes[e];
    for (int l = 0; l < data.L; ++l) {
      const double v = s - static_cast<double>(row[static_cast<std::size_t>(l)]);
      profile(l, j) += v;
      profile(l, i) -= v;
    }
  }
  return profile;
}

namespace {

// max_{(i,j) in E} (g_j - g_i) for one bootstrap draw.
template <typename Derived>
double reduce_max(const EdgeSetSpec& edge_set,
                  const Eigen::MatrixBase<Derived>& g) {
  switch (edge_set.kind) {
    case EdgeSetSpec::Kind::kStar: {
      double best = -std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < g.size(); ++j) {
        if (j == edge_set.center) continue;
        best = std::max(best, g[j]);
      }
      return best - g[edge_set.center];
    }
    case EdgeSetSpec::Kind::kFull:
      return g.maxCoeff() - g.minCoeff();
    case EdgeSetSpec::Kind::kExplicit: {
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& [i, j] : edge_set.pairs) best = std::max(best, g[j] - g[i]);
      return best;
    }
  }
  throw InvalidArgumentError("unknown edge set kind");
}

}  // namespace

BootstrapDraws draw_max_statistics(const Eigen::MatrixXd& profile,
                                   const Eigen::MatrixXd& theta11,
                                   const EdgeSetSpec& edge_set,
                                   double scale_np, int B,
                                   std::uint64_t seed) {
  const int L = static_cast<int>(profile.rows());
  const int n = static_cast<int>(profile.cols());
  if (theta11.rows() != n || theta11.cols() != n) {
    throw InvalidArgumentError("theta11 shape does not match profile");
  }
  if (B < 1) throw InvalidArgumentError("need at least one bootstrap draw");
  if (!(scale_np > 0.0)) throw InvalidArgumentError("scale must be positive");
  edge_set.validate(n);

  // U(l, i) = [Theta11]_i r^(l); then each draw needs only g = U^T z and a
  // max over the edge set of sqrt(np/L) (g_j - g_i).
  const Eigen::MatrixXd u = profile * theta11;
  const double factor = std::sqrt(scale_np / L);
  const std::uint64_t items_per_draw = (static_cast<std::uint64_t>(L) + 1) / 2;

  BootstrapDraws result;
  result.edge_set = edge_set;
  result.B = B;
  result.seed = seed;
  result.scale = factor;
  result.draws.resize(B);

  constexpr int kBlock = 256;
  Eigen::MatrixXd z(kBlock, L);
  const std::uint64_t stream = rng::stream_id(rng::Stream::kBootstrap);
  for (int start = 0; start < B; start += kBlock) {
    const int rows = std::min(kBlock, B - start);
    for (int r = 0; r < rows; ++r) {
      const std::uint64_t b = static_cast<std::uint64_t>(start + r);
      for (int l = 0; l < L; l += 2) {
        const auto pair = rng::normal_pair(
            seed, stream, b * items_per_draw + static_cast<std::uint64_t>(l / 2));
        z(r, l) = pair[0];
        if (l + 1 < L) z(r, l + 1) = pair[1];
      }
    }
    const Eigen::MatrixXd g = z.topRows(rows) * u;  // rows x n
    for (int r = 0; r < rows; ++r) {
      result.draws[start + r] = factor * reduce_max(edge_set, g.row(r));
    }
  }
  return result;
}

double quantile_cw(const BootstrapDraws& draws, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw AlphaOutOfRangeError("alpha must be in (0, 1)");
  }
  const int b = draws.B;
  if (b < 1) throw InvalidArgumentError("no bootstrap draws");
  std::vector<double> sorted(draws.draws.data(), draws.draws.data() + b);
  std::sort(sorted.begin(), sorted.end());
  const int k = std::clamp(
      static_cast<int>(std::ceil((1.0 - alpha) * static_cast<double>(b))), 1, b);
  return sorted[static_cast<std::size_t>(k - 1)];
}

double p_value(const BootstrapDraws& draws, double t_obs) {
  if (draws.B < 1) throw InvalidArgumentError("no bootstrap draws");
  const auto count =
      (draws.draws.array() >= t_obs).count();
  return (1.0 + static_cast<double>(count)) / (draws.B + 1.0);
}

}  // namespace btlrank
