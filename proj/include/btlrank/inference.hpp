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

// Hypothesis tests for ranking properties and the FWER / FDR selection
// procedures built on them.

#ifndef BTLRANK_INFERENCE_HPP_
#define BTLRANK_INFERENCE_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "btlrank/bootstrap.hpp"
#include "btlrank/debias.hpp"
#include "btlrank/model.hpp"

namespace btlrank {

inline constexpr int kDefaultTestDraws = 2000;
inline constexpr int kDefaultSelectDraws = 5000;

enum class TestMethod { kNormalZ, kBootstrapMax };

struct TestReport {
  RankingProperty property;
  double statistic = 0.0;
  double threshold = 0.0;
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.0;
  TestMethod method = TestMethod::kNormalZ;
};

enum class SelectionMethod { kFwer, kFdrBy };

struct SelectionResult {
  std::vector<int> selected;
  Eigen::VectorXd p_values;
  SelectionMethod method = SelectionMethod::kFwer;
  double alpha = 0.0;
  int k = 0;
  double threshold_used = 0.0;
};

// One-sided z-test of H0: theta*_i <= theta*_j. Statistic
// (theta_d_i - theta_d_j) / sqrt(pairwise_variance), threshold the
// (1 - alpha) standard normal quantile, p-value the exact normal tail.
TestReport test_pairwise(const DebiasResult& result, int i, int j,
                         double alpha);

// Top-K membership test of H0: item i not among the top K. Statistic
// sqrt(n p L) (theta_d_i - theta_d_(K+1)) against the bootstrap quantile
// c_W(alpha, Star(i)); p-value is the bootstrap tail mass.
TestReport test_topk(const DebiasResult& result, const ComparisonDataset& data,
                     int i, int k, double alpha, int B = kDefaultTestDraws,
                     std::uint64_t seed = 0);

// Selects top-K items with familywise error control: item i enters iff
// sqrt(n p L) (theta_d_i - theta_d_(K+1)) exceeds the bootstrap quantile
// C_M(alpha) of the max statistic over all ordered pairs. With
// conservative_box, instead keeps i iff the top-K property survives the
// worst-case +-C_M/sqrt(npL) perturbation (i lowered, everyone else
// raised), which is strictly more conservative.
SelectionResult select_topk_fwer(const DebiasResult& result,
                                 const ComparisonDataset& data, int k,
                                 double alpha, int B = kDefaultSelectDraws,
                                 std::uint64_t seed = 0,
                                 bool conservative_box = false);

// Per-item bootstrap p-values (independent multiplier streams per item)
// followed by the Benjamini-Yekutieli step-up rule at level alpha.
SelectionResult select_topk_fdr_by(const DebiasResult& result,
                                   const ComparisonDataset& data, int k,
                                   double alpha, int B = kDefaultSelectDraws,
                                   std::uint64_t seed = 0, int threads = 1);

// Dispatches on the property kind to the matching closed-form test.
TestReport test_general_property(const DebiasResult& result,
                                 const ComparisonDataset& data,
                                 const RankingProperty& prop, double alpha,
                                 int B = kDefaultTestDraws,
                                 std::uint64_t seed = 0);

struct ByCutoff {
  std::vector<int> selected;  // ascending item indices
  int r = 0;                  // number of rejections
  double threshold = 0.0;     // realized cutoff r * alpha / (n N)
};

// Benjamini-Yekutieli step-up on raw p-values: with N = sum_{k=1}^n 1/k,
// r = max{k : p_(k) <= k alpha / (n N)}, reject the r smallest p-values.
ByCutoff benjamini_yekutieli(const Eigen::VectorXd& p_values, double alpha);

}  // namespace btlrank

#endif  // BTLRANK_INFERENCE_HPP_
