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

// Monte Carlo experiment harnesses emitting long-format rows
// (setting, rep, metric, value). Replications run in parallel with
// per-replication counter-derived seeds, so the rows are identical for
// any thread count.

#ifndef BTLRANK_EXPERIMENTS_HPP_
#define BTLRANK_EXPERIMENTS_HPP_

#include <cstdint>
#include <vector>

#include "btlrank/io.hpp"

namespace btlrank {

struct McConfig {
  int n = 100;
  double p = 0.2;
  double alpha = 0.05;
  int reps = 500;
  int k = 30;  // top-K family size where applicable
  int bootstrap_draws = kDefaultTestDraws;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Scores uniform on [8, 10] (recentered), redrawn each replication;
// emits metric "qq": the standardized debiased coordinate of item 0.
std::vector<ExperimentRow> run_normality(const McConfig& config,
                                         const std::vector<int>& L_grid);

// theta*_0 = theta*_1 = 10, rest 7.5; pairwise test of item 0 over item 1.
// Emits metric "reject".
std::vector<ExperimentRow> run_typeI_pair(const McConfig& config,
                                          const std::vector<int>& L_grid);

// theta*_0 = 10, theta*_1 = 10 - delta, rest 7.5; metric "reject".
std::vector<ExperimentRow> run_power_pair(const McConfig& config,
                                          const std::vector<int>& L_grid,
                                          const std::vector<double>& deltas);

// K + 1 leaders tied at 10, rest 7.5; top-K test of the boundary item
// (index K), which sits exactly at the null. Metric "reject".
std::vector<ExperimentRow> run_typeI_topk(const McConfig& config,
                                          const std::vector<int>& L_grid);

// K leaders at 10, item K at 10 - delta, rest 7.5; top-K test of item 0
// whose signal is delta. Metric "reject".
std::vector<ExperimentRow> run_power_topk(const McConfig& config,
                                          const std::vector<int>& L_grid,
                                          const std::vector<double>& deltas);

// Benjamini-Yekutieli top-K selection. With no deltas: K + 10 leaders
// tied at 10, rest 6.5 (every null true). With deltas: K leaders at 10,
// item K at 10 - delta, rest 6.5. Metrics "fdr" and, when some property
// truly holds, "tpr".
std::vector<ExperimentRow> run_fdr(const McConfig& config,
                                   const std::vector<int>& L_grid,
                                   const std::vector<double>& deltas);

}  // namespace btlrank

#endif  // BTLRANK_EXPERIMENTS_HPP_
