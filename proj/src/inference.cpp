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

#include "btlrank/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "btlrank/errors.hpp"
#include "btlrank/normal.hpp"
#include "btlrank/rng.hpp"
#include "btlrank/threading.hpp"

namespace btlrank {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw AlphaOutOfRangeError("alpha must be in (0, 1)");
  }
}

// (K+1)-th largest debiased score.
double topk_boundary(const DebiasResult& result, int k) {
  std::vector<double> sorted(result.theta_debiased.values.data(),
                             result.theta_debiased.values.data() +
                                 result.theta_debiased.values.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  return sorted[static_cast<std::size_t>(k)];
}

double sqrt_npl(const DebiasResult& result) {
  const auto& s = result.scaling;
  return std::sqrt(static_cast<double>(s.n) * s.p_hat * s.L);
}

}  // namespace

TestReport test_pairwise(const DebiasResult& result, int i, int j,
                         double alpha) {
  check_alpha(alpha);
  const auto prop = RankingProperty::pairwise_preferred(i, j);
  prop.validate(result.scaling.n);

  const double variance = pairwise_variance(result, i, j);
  const double z = (result.theta_debiased.values[i] -
                    result.theta_debiased.values[j]) /
                   std::sqrt(variance);
  TestReport report;
  report.property = prop;
  report.statistic = z;
  report.threshold = normal_quantile(1.0 - alpha);
  report.p_value = normal_cdf(-z);  // exact upper tail
  report.reject = z > report.threshold;
  report.alpha = alpha;
  report.method = TestMethod::kNormalZ;
  return report;
}

TestReport test_topk(const DebiasResult& result, const ComparisonDataset& data,
                     int i, int k, double alpha, int B, std::uint64_t seed) {
  check_alpha(alpha);
  const auto prop = RankingProperty::top_k(i, k);
  prop.validate(result.scaling.n);

  const double t_obs =
      sqrt_npl(result) *
      (result.theta_debiased.values[i] - topk_boundary(result, k));

  const Eigen::MatrixXd profile = residual_profile(result.theta_hat, data);
  const double scale_np = result.scaling.n * result.scaling.p_hat;
  const BootstrapDraws draws = draw_max_statistics(
      profile, result.theta11, EdgeSetSpec::star(i), scale_np, B, seed);

  TestReport report;
  report.property = prop;
  report.statistic = t_obs;
  report.threshold = quantile_cw(draws, alpha);
  report.p_value = p_value(draws, t_obs);
  report.reject = t_obs > report.threshold;
  report.alpha = alpha;
  report.method = TestMethod::kBootstrapMax;
  return report;
}

SelectionResult select_topk_fwer(const DebiasResult& result,
                                 const ComparisonDataset& data, int k,
                                 double alpha, int B, std::uint64_t seed,
                                 bool conservative_box) {
  check_alpha(alpha);
  const int n = result.scaling.n;
  RankingProperty::top_k(0, k).validate(n);

  const Eigen::MatrixXd profile = residual_profile(result.theta_hat, data);
  const double scale_np = n * result.scaling.p_hat;
  const BootstrapDraws draws = draw_max_statistics(
      profile, result.theta11, EdgeSetSpec::full(), scale_np, B, seed);
  const double c_m = quantile_cw(draws, alpha);

  const double root = sqrt_npl(result);
  const double boundary = topk_boundary(result, k);
  const Eigen::VectorXd& theta_d = result.theta_debiased.values;

  SelectionResult selection;
  selection.method = SelectionMethod::kFwer;
  selection.alpha = alpha;
  selection.k = k;
  selection.threshold_used = c_m;
  selection.p_values.resize(n);
  const double shift = c_m / root;
  for (int i = 0; i < n; ++i) {
    const double t_i = root * (theta_d[i] - boundary);
    selection.p_values[i] = p_value(draws, t_i);
    bool keep;
    if (conservative_box) {
      // Worst corner of the perturbation box: item i lowered by the
      // threshold shift, every other item raised by it.
      Eigen::VectorXd perturbed = theta_d.array() + shift;
      perturbed[i] = theta_d[i] - shift;
      keep = property_holds(ScoreVector(std::move(perturbed)),
                            RankingProperty::top_k(i, k));
    } else {
      keep = t_i > c_m;
    }
    if (keep) selection.selected.push_back(i);
  }
  return selection;
}

SelectionResult select_topk_fdr_by(const DebiasResult& result,
                                   const ComparisonDataset& data, int k,
                                   double alpha, int B, std::uint64_t seed,
                                   int threads) {
  check_alpha(alpha);
  const int n = result.scaling.n;
  RankingProperty::top_k(0, k).validate(n);

  const Eigen::MatrixXd profile = residual_profile(result.theta_hat, data);
  const double scale_np = n * result.scaling.p_hat;
  const double root = sqrt_npl(result);
  const double boundary = topk_boundary(result, k);
  const Eigen::VectorXd& theta_d = result.theta_debiased.values;

  Eigen::VectorXd p_values(n);
  parallel_for(n, threads, [&](int i) {
    const BootstrapDraws draws = draw_max_statistics(
        profile, result.theta11, EdgeSetSpec::star(i), scale_np, B,
        rng::derive_seed(seed, static_cast<std::uint64_t>(i)));
    p_values[i] = p_value(draws, root * (theta_d[i] - boundary));
  });

  ByCutoff cutoff = benjamini_yekutieli(p_values, alpha);
  SelectionResult selection;
  selection.selected = std::move(cutoff.selected);
  selection.p_values = std::move(p_values);
  selection.method = SelectionMethod::kFdrBy;
  selection.alpha = alpha;
  selection.k = k;
  selection.threshold_used = cutoff.threshold;
  return selection;
}

TestReport test_general_property(const DebiasResult& result,
                                 const ComparisonDataset& data,
                                 const RankingProperty& prop, double alpha,
                                 int B, std::uint64_t seed) {
  switch (prop.kind) {
    case PropertyKind::kPairwisePreferred:
      return test_pairwise(result, prop.item, prop.other, alpha);
    case PropertyKind::kTopK:
      return test_topk(result, data, prop.item, prop.k, alpha, B, seed);
    default:
      throw UnsupportedPropertyError(
          "no closed-form reduction for this property kind");
  }
}

ByCutoff benjamini_yekutieli(const Eigen::VectorXd& p_values, double alpha) {
  check_alpha(alpha);
  const int n = static_cast<int>(p_values.size());
  if (n < 1) throw InvalidArgumentError("need at least one p-value");
  for (int i = 0; i < n; ++i) {
    if (!(p_values[i] > 0.0 && p_values[i] <= 1.0)) {
      throw InvalidArgumentError("p-values must lie in (0, 1]");
    }
  }

  double harmonic = 0.0;
  for (int i = 1; i <= n; ++i) harmonic += 1.0 / i;
  const double unit = alpha / (n * harmonic);

  std::vector<double> sorted(p_values.data(), p_values.data() + n);
  std::sort(sorted.begin(), sorted.end());
  int r = 0;
  for (int i = n; i >= 1; --i) {
    if (sorted[static_cast<std::size_t>(i - 1)] <= i * unit) {
      r = i;
      break;
    }
  }

  ByCutoff cutoff;
  cutoff.r = r;
  cutoff.threshold = r * unit;
  if (r > 0) {
    for (int i = 0; i < n; ++i) {
      if (p_values[i] <= cutoff.threshold) cutoff.selected.push_back(i);
    }
  }
  return cutoff;
}

}  // namespace btlrank
