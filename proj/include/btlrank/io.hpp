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

// File formats shared by the CLI and tests.
//   comparisons CSV: header "i,j,rep,outcome", one row per replicate,
//                    i < j, outcome = 1 iff the higher-indexed item won;
//   ratings CSV:     header "user,item,rating";
//   estimates JSON:  {n, L, p_hat, lambda0, theta_hat, theta_debiased, se};
//   selection JSON:  {method, alpha, K, selected, p_values, threshold_used};
//   experiment CSV:  header "setting,rep,metric,value".

#ifndef BTLRANK_IO_HPP_
#define BTLRANK_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "btlrank/debias.hpp"
#include "btlrank/inference.hpp"
#include "btlrank/ingest.hpp"
#include "btlrank/model.hpp"

namespace btlrank {

// Shortest round-trip decimal representation; keeps rerun outputs
// byte-identical.
std::string format_double(double value);

void write_comparisons_csv(std::ostream& out, const ComparisonDataset& data);
void write_comparisons_csv(const std::string& path,
                           const ComparisonDataset& data);

// n defaults to max item index + 1; pass n_override for isolated trailing
// items, p_known to record the design edge probability.
ComparisonDataset read_comparisons_csv(std::istream& in,
                                       std::optional<int> n_override = {},
                                       std::optional<double> p_known = {});
ComparisonDataset read_comparisons_csv(const std::string& path,
                                       std::optional<int> n_override = {},
                                       std::optional<double> p_known = {});

std::vector<Rating> read_ratings_csv(std::istream& in);
std::vector<Rating> read_ratings_csv(const std::string& path);

nlohmann::json truth_json(const ScoreVector& theta_star, double p, int L,
                          std::uint64_t seed);
nlohmann::json estimate_json(const DebiasResult& result);

struct EstimateDoc {
  int n = 0;
  int L = 0;
  double p_hat = 0.0;
  double lambda0 = 0.0;
  Eigen::VectorXd theta_hat;
  Eigen::VectorXd theta_debiased;
  Eigen::VectorXd se;
};

EstimateDoc read_estimate_json(const std::string& path);

// Reads a score vector from JSON: either a bare array or an object with a
// "theta_star" (or "theta") array.
ScoreVector read_scores_json(const std::string& path);
nlohmann::json test_report_json(const TestReport& report);
nlohmann::json selection_json(const SelectionResult& selection);

void write_json(const std::string& path, const nlohmann::json& doc);

struct ExperimentRow {
  std::string setting;
  int rep = 0;
  std::string metric;
  double value = 0.0;
};

void write_experiment_csv(std::ostream& out,
                          const std::vector<ExperimentRow>& rows);
void write_experiment_csv(const std::string& path,
                          const std::vector<ExperimentRow>& rows);

}  // namespace btlrank

#endif  // BTLRANK_IO_HPP_
