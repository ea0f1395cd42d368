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

#include "btlrank/experiments.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <utility>

#include "btlrank/errors.hpp"
#include "btlrank/estimate.hpp"
#include "btlrank/rng.hpp"
#include "btlrank/simulate.hpp"
#include "btlrank/threading.hpp"

namespace btlrank {

namespace {

using Metrics = std::vector<std::pair<const char*, double>>;

std::string setting_label(const McConfig& config, int L) {
  return "n=" + std::to_string(config.n) + ",p=" + format_double(config.p) +
         ",L=" + std::to_string(L);
}

// Runs `reps` independent replications of one setting and appends rows in
// replication order. Each replication gets a seed derived from
// (config.seed, setting_index, rep) so settings never share randomness.
void collect(const McConfig& config, const std::string& setting,
             int setting_index, std::vector<ExperimentRow>& rows,
             const std::function<Metrics(std::uint64_t)>& replication) {
  std::vector<Metrics> results(static_cast<std::size_t>(config.reps));
  parallel_for(config.reps, config.threads, [&](int rep) {
    const std::uint64_t rep_seed = rng::derive_seed(
        config.seed, (static_cast<std::uint64_t>(setting_index) << 32) |
                         static_cast<std::uint64_t>(rep));
    results[static_cast<std::size_t>(rep)] = replication(rep_seed);
  });
  for (int rep = 0; rep < config.reps; ++rep) {
    for (const auto& [metric, value] : results[static_cast<std::size_t>(rep)]) {
      rows.push_back(ExperimentRow{setting, rep, metric, value});
    }
  }
}

DebiasResult fit_and_debias(const ComparisonDataset& data) {
  const FitResult fit = fit_mle(data);
  return debias(fit.theta, data, fit.lambda0);
}

void check_grid(const std::vector<int>& L_grid) {
  if (L_grid.empty()) throw InvalidArgumentError("empty L grid");
  for (int L : L_grid) {
    if (L < 1) throw InvalidArgumentError("L must be >= 1");
  }
}

}  // namespace

std::vector<ExperimentRow> run_normality(const McConfig& config,
                                         const std::vector<int>& L_grid) {
  check_grid(L_grid);
  std::vector<ExperimentRow> rows;
  int setting_index = 0;
  for (int L : L_grid) {
    collect(config, setting_label(config, L), setting_index++, rows,
            [&, L](std::uint64_t rep_seed) {
              const ScoreVector truth =
                  scores_uniform(config.n, 8.0, 10.0, rep_seed);
              const auto data = generate_outcomes(
                  generate_graph(config.n, config.p, rep_seed), truth, L,
                  rep_seed);
              const DebiasResult result = fit_and_debias(data);
              const double z =
                  (result.theta_debiased.values[0] - truth.values[0]) /
                  result.se[0];
              return Metrics{{"qq", z}};
            });
  }
  return rows;
}

std::vector<ExperimentRow> run_typeI_pair(const McConfig& config,
                                          const std::vector<int>& L_grid) {
  check_grid(L_grid);
  const ScoreVector truth =
      scores_blocks({{2, 10.0}, {config.n - 2, 7.5}});
  std::vector<ExperimentRow> rows;
  int setting_index = 0;
  for (int L : L_grid) {
    collect(config, setting_label(config, L), setting_index++, rows,
            [&, L](std::uint64_t rep_seed) {
              const auto data = generate_outcomes(
                  generate_graph(config.n, config.p, rep_seed), truth, L,
                  rep_seed);
              const auto report =
                  test_pairwise(fit_and_debias(data), 0, 1, config.alpha);
              return Metrics{{"reject", report.reject ? 1.0 : 0.0}};
            });
  }
  return rows;
}

std::vector<ExperimentRow> run_power_pair(const McConfig& config,
                                          const std::vector<int>& L_grid,
                                          const std::vector<double>& deltas) {
  check_grid(L_grid);
  if (deltas.empty()) throw InvalidArgumentError("empty delta grid");
  std::vector<ExperimentRow> rows;
  int setting_index = 0;
  for (int L : L_grid) {
    for (double delta : deltas) {
      const ScoreVector truth = scores_blocks(
          {{1, 10.0}, {1, 10.0 - delta}, {config.n - 2, 7.5}});
      collect(config,
              setting_label(config, L) + ",delta=" + format_double(delta),
              setting_index++, rows, [&, L](std::uint64_t rep_seed) {
                const auto data = generate_outcomes(
                    generate_graph(config.n, config.p, rep_seed), truth, L,
                    rep_seed);
                const auto report =
                    test_pairwise(fit_and_debias(data), 0, 1, config.alpha);
                return Metrics{{"reject", report.reject ? 1.0 : 0.0}};
              });
    }
  }
  return rows;
}

std::vector<ExperimentRow> run_typeI_topk(const McConfig& config,
                                          const std::vector<int>& L_grid) {
  check_grid(L_grid);
  const ScoreVector truth =
      scores_blocks({{config.k + 1, 10.0}, {config.n - config.k - 1, 7.5}});
  std::vector<ExperimentRow> rows;
  int setting_index = 0;
  for (int L : L_grid) {
    collect(config, setting_label(config, L) + ",K=" + std::to_string(config.k),
            setting_index++, rows, [&, L](std::uint64_t rep_seed) {
              const auto data = generate_outcomes(
                  generate_graph(config.n, config.p, rep_seed), truth, L,
                  rep_seed);
              const auto report = test_topk(
                  fit_and_debias(data), data, config.k, config.k, config.alpha,
                  config.bootstrap_draws, rep_seed);
              return Metrics{{"reject", report.reject ? 1.0 : 0.0}};
            });
  }
  return rows;
}

std::vector<ExperimentRow> run_power_topk(const McConfig& config,
                                          const std::vector<int>& L_grid,
                                          const std::vector<double>& deltas) {
  check_grid(L_grid);
  if (deltas.empty()) throw InvalidArgumentError("empty delta grid");
  std::vector<ExperimentRow> rows;
  int setting_index = 0;
  for (int L : L_grid) {
    for (double delta : deltas) {
      const ScoreVector truth =
          scores_blocks({{config.k, 10.0},
                         {1, 10.0 - delta},
                         {config.n - config.k - 1, 7.5}});
      collect(config,
              setting_label(config, L) + ",K=" + std::to_string(config.k) +
                  ",delta=" + format_double(delta),
              setting_index++, rows, [&, L](std::uint64_t rep_seed) {
                const auto data = generate_outcomes(
                    generate_graph(config.n, config.p, rep_seed), truth, L,
                    rep_seed);
                const auto report = test_topk(
                    fit_and_debias(data), data, 0, config.k, config.alpha,
                    config.bootstrap_draws, rep_seed);
                return Metrics{{"reject", report.reject ? 1.0 : 0.0}};
              });
    }
  }
  return rows;
}

std::vector<ExperimentRow> run_fdr(const McConfig& config,
                                   const std::vector<int>& L_grid,
                                   const std::vector<double>& deltas) {
  check_grid(L_grid);
  // No deltas: all leaders tied, so every top-K null is true and any
  // discovery counts as false.
  std::vector<std::pair<ScoreVector, std::string>> designs;
  if (deltas.empty()) {
    designs.emplace_back(
        scores_blocks({{config.k + 10, 10.0}, {config.n - config.k - 10, 6.5}}),
        std::string());
  } else {
    for (double delta : deltas) {
      designs.emplace_back(
          scores_blocks({{config.k, 10.0},
                         {1, 10.0 - delta},
                         {config.n - config.k - 1, 6.5}}),
          ",delta=" + format_double(delta));
    }
  }

  std::vector<ExperimentRow> rows;
  int setting_index = 0;
  for (int L : L_grid) {
    for (const auto& design : designs) {
      const ScoreVector& truth = design.first;
      const std::string& suffix = design.second;
      std::vector<int> truly_top;
      for (int i = 0; i < config.n; ++i) {
        if (property_holds(truth, RankingProperty::top_k(i, config.k))) {
          truly_top.push_back(i);
        }
      }
      collect(config,
              setting_label(config, L) + ",K=" + std::to_string(config.k) +
                  suffix,
              setting_index++, rows, [&, L](std::uint64_t rep_seed) {
                const auto data = generate_outcomes(
                    generate_graph(config.n, config.p, rep_seed), truth, L,
                    rep_seed);
                const auto selection = select_topk_fdr_by(
                    fit_and_debias(data), data, config.k, config.alpha,
                    config.bootstrap_draws, rep_seed, /*threads=*/1);
                int true_positives = 0;
                for (int item : selection.selected) {
                  if (std::find(truly_top.begin(), truly_top.end(), item) !=
                      truly_top.end()) {
                    ++true_positives;
                  }
                }
                const int discoveries =
                    static_cast<int>(selection.selected.size());
                const double fdr =
                    discoveries > 0
                        ? static_cast<double>(discoveries - true_positives) /
                              discoveries
                        : 0.0;
                Metrics metrics{{"fdr", fdr}};
                if (!truly_top.empty()) {
                  metrics.emplace_back(
                      "tpr", static_cast<double>(true_positives) /
                                 static_cast<double>(truly_top.size()));
                }
                return metrics;
              });
    }
  }
  return rows;
}

}  // namespace btlrank
