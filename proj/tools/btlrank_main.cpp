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

// Command-line surface for the ranking-inference pipeline. Every command
// is a pure function of its input files, flags, and seed: reruns produce
// byte-identical outputs for any --threads value.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "btlrank/errors.hpp"
#include "btlrank/experiments.hpp"
#include "btlrank/io.hpp"
#include "btlrank/simulate.hpp"

namespace {

using namespace btlrank;

struct SimulateArgs {
  int n = 100;
  double p = 0.2;
  int L = 20;
  std::uint64_t seed = 0;
  std::string scores_file;
  std::string score_dist;
  std::string score_blocks;
  std::string out_comparisons = "comparisons.csv";
  std::string out_truth = "truth.json";
};

struct DataArgs {
  std::string comparisons;
  std::optional<int> n;
  std::optional<double> p;
  std::string lambda0 = "auto";
  std::string estimates;  // optional precomputed estimates JSON
};

struct OutArg {
  std::string path;  // empty: stdout
};

std::vector<double> parse_grid(const std::string& text, const char* what) {
  std::vector<double> values;
  const auto colon = std::count(text.begin(), text.end(), ':');
  try {
    if (colon == 2) {
      // start:stop:step, inclusive of the endpoint up to rounding.
      const auto first = text.find(':');
      const auto second = text.find(':', first + 1);
      const double start = std::stod(text.substr(0, first));
      const double stop = std::stod(text.substr(first + 1, second - first - 1));
      const double step = std::stod(text.substr(second + 1));
      if (!(step > 0.0)) throw InvalidArgumentError("grid step must be positive");
      for (double v = start; v <= stop + 1e-12; v += step) values.push_back(v);
    } else {
      std::stringstream stream(text);
      std::string token;
      while (std::getline(stream, token, ',')) values.push_back(std::stod(token));
    }
  } catch (const std::exception&) {
    throw InvalidArgumentError(std::string("cannot parse ") + what + ": '" +
                               text + "'");
  }
  if (values.empty()) {
    throw InvalidArgumentError(std::string("empty grid for ") + what);
  }
  return values;
}

std::vector<int> parse_int_grid(const std::string& text, const char* what) {
  std::vector<int> values;
  for (double v : parse_grid(text, what)) values.push_back(static_cast<int>(v));
  return values;
}

std::vector<std::pair<int, double>> parse_blocks(const std::string& text) {
  std::vector<std::pair<int, double>> blocks;
  std::stringstream stream(text);
  std::string token;
  try {
    while (std::getline(stream, token, ',')) {
      const auto x = token.find('x');
      if (x == std::string::npos) throw std::invalid_argument(token);
      blocks.emplace_back(std::stoi(token.substr(0, x)),
                          std::stod(token.substr(x + 1)));
    }
  } catch (const std::exception&) {
    throw InvalidArgumentError("cannot parse --score-blocks: '" + text + "'");
  }
  return blocks;
}

void emit(const OutArg& out, const nlohmann::json& doc) {
  if (out.path.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json(out.path, doc);
  }
}

void emit_csv(const std::string& path, const std::vector<ExperimentRow>& rows) {
  if (path.empty()) {
    write_experiment_csv(std::cout, rows);
  } else {
    write_experiment_csv(path, rows);
  }
}

ScoreVector simulate_scores(const SimulateArgs& args) {
  const int sources = (!args.scores_file.empty()) + (!args.score_dist.empty()) +
                      (!args.score_blocks.empty());
  if (sources != 1) {
    throw InvalidArgumentError(
        "exactly one of --scores-file, --score-dist, --score-blocks required");
  }
  if (!args.scores_file.empty()) {
    const auto scores = read_scores_json(args.scores_file).centered();
    if (scores.n() != args.n) {
      throw InvalidArgumentError("--scores-file has " +
                                 std::to_string(scores.n()) +
                                 " entries but --n is " +
                                 std::to_string(args.n));
    }
    return scores;
  }
  if (!args.score_blocks.empty()) {
    const auto scores = scores_blocks(parse_blocks(args.score_blocks));
    if (scores.n() != args.n) {
      throw InvalidArgumentError("--score-blocks counts must sum to --n");
    }
    return scores;
  }
  // uniform:lo:hi
  std::vector<std::string> parts;
  std::stringstream stream(args.score_dist);
  std::string token;
  while (std::getline(stream, token, ':')) parts.push_back(token);
  if (parts.size() != 3 || parts[0] != "uniform") {
    throw InvalidArgumentError("--score-dist must look like uniform:lo:hi");
  }
  try {
    return scores_uniform(args.n, std::stod(parts[1]), std::stod(parts[2]),
                          args.seed);
  } catch (const std::invalid_argument&) {
    throw InvalidArgumentError("--score-dist must look like uniform:lo:hi");
  }
}

int cmd_simulate(const SimulateArgs& args) {
  const ScoreVector truth = simulate_scores(args);
  const auto graph = generate_graph(args.n, args.p, args.seed);
  const auto data = generate_outcomes(graph, truth, args.L, args.seed);
  write_comparisons_csv(args.out_comparisons, data);
  write_json(args.out_truth, truth_json(truth, args.p, args.L, args.seed));
  std::cout << nlohmann::json{{"n", args.n},
                              {"edges", data.graph.edge_count()},
                              {"L", args.L},
                              {"comparisons", args.out_comparisons},
                              {"truth", args.out_truth}}
                   .dump(2)
            << '\n';
  return 0;
}

MleConfig mle_config(const DataArgs& args) {
  MleConfig config;
  if (args.lambda0 != "auto") {
    try {
      config.lambda0 = std::stod(args.lambda0);
    } catch (const std::exception&) {
      throw InvalidArgumentError("--lambda0 must be 'auto' or a number");
    }
  }
  return config;
}

// Loads the dataset and produces the debiased result, either by fitting or
// from a precomputed estimates file (the pipeline is pure, so both routes
// give identical downstream output).
struct Pipeline {
  ComparisonDataset data;
  DebiasResult result;
};

Pipeline run_pipeline(const DataArgs& args) {
  ComparisonDataset data = read_comparisons_csv(args.comparisons, args.n, args.p);
  if (!args.estimates.empty()) {
    const EstimateDoc doc = read_estimate_json(args.estimates);
    if (doc.n != data.n() || doc.L != data.L) {
      throw InvalidArgumentError(
          "estimates file does not match the comparisons file");
    }
    DebiasResult result =
        debias(ScoreVector(doc.theta_hat), data, doc.lambda0);
    return Pipeline{std::move(data), std::move(result)};
  }
  const FitResult fit = fit_mle(data, mle_config(args));
  DebiasResult result = debias(fit.theta, data, fit.lambda0);
  return Pipeline{std::move(data), std::move(result)};
}

int cmd_estimate(const DataArgs& args, const OutArg& out) {
  const Pipeline pipeline = run_pipeline(args);
  emit(out, estimate_json(pipeline.result));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ranking inference for pairwise-comparison data"};
  app.require_subcommand(1);

  // simulate
  SimulateArgs sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Generate a synthetic comparison dataset");
  simulate->add_option("--n", sim.n, "Number of items")->required();
  simulate->add_option("--p", sim.p, "Edge probability")->required();
  simulate->add_option("--L", sim.L, "Replicates per edge")->required();
  simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_option("--scores-file", sim.scores_file,
                       "JSON score vector (centered before use)");
  simulate->add_option("--score-dist", sim.score_dist,
                       "uniform:lo:hi, centered");
  simulate->add_option("--score-blocks", sim.score_blocks,
                       "Tied blocks, e.g. 30x10,70x7.5");
  simulate->add_option("--out-comparisons", sim.out_comparisons,
                       "Comparisons CSV path");
  simulate->add_option("--out-truth", sim.out_truth, "Truth JSON path");

  // shared data flags
  const auto add_data_flags = [](CLI::App* cmd, DataArgs& args,
                                 bool with_estimates = true) {
    cmd->add_option("--comparisons", args.comparisons, "Comparisons CSV")
        ->required();
    cmd->add_option("--n", args.n, "Item count override");
    cmd->add_option("--p", args.p, "Design edge probability, if known");
    cmd->add_option("--lambda0", args.lambda0, "Ridge penalty or 'auto'");
    if (with_estimates) {
      cmd->add_option("--estimates", args.estimates,
                      "Reuse a precomputed estimates JSON");
    }
  };

  DataArgs est_args;
  OutArg est_out;
  auto* estimate =
      app.add_subcommand("estimate", "Fit and debias latent scores");
  add_data_flags(estimate, est_args);
  estimate->add_option("--out", est_out.path, "Output JSON path");

  // test pair / test topk
  auto* test = app.add_subcommand("test", "Hypothesis tests");
  test->require_subcommand(1);
  DataArgs pair_args;
  OutArg pair_out;
  int pair_i = 0, pair_j = 0;
  double pair_alpha = 0.05;
  auto* pair = test->add_subcommand("pair", "Test theta_i > theta_j");
  add_data_flags(pair, pair_args);
  pair->add_option("--i", pair_i, "Item under test")->required();
  pair->add_option("--j", pair_j, "Comparison item")->required();
  pair->add_option("--alpha", pair_alpha, "Level");
  pair->add_option("--out", pair_out.path, "Output JSON path");

  DataArgs topk_args;
  OutArg topk_out;
  int topk_i = 0, topk_k = 1, topk_draws = kDefaultTestDraws;
  double topk_alpha = 0.05;
  std::uint64_t topk_seed = 0;
  auto* topk = test->add_subcommand("topk", "Test membership in the top K");
  add_data_flags(topk, topk_args);
  topk->add_option("--i", topk_i, "Item under test")->required();
  topk->add_option("--k", topk_k, "K")->required();
  topk->add_option("--alpha", topk_alpha, "Level");
  topk->add_option("--bootstrap-draws", topk_draws, "Multiplier draws");
  topk->add_option("--seed", topk_seed, "Bootstrap seed");
  topk->add_option("--out", topk_out.path, "Output JSON path");

  // select topk
  auto* select = app.add_subcommand("select", "Multiple-testing selection");
  select->require_subcommand(1);
  DataArgs sel_args;
  OutArg sel_out;
  int sel_k = 1, sel_draws = kDefaultSelectDraws, sel_threads = 2;
  double sel_alpha = 0.05;
  std::uint64_t sel_seed = 0;
  std::string sel_method = "fwer";
  bool sel_box = false;
  auto* sel_topk = select->add_subcommand("topk", "Select all top-K items");
  add_data_flags(sel_topk, sel_args);
  sel_topk->add_option("--k", sel_k, "K")->required();
  sel_topk
      ->add_option("--method", sel_method, "fwer or fdr-by")
      ->check(CLI::IsMember({"fwer", "fdr-by"}));
  sel_topk->add_option("--alpha", sel_alpha, "Level");
  sel_topk->add_option("--bootstrap-draws", sel_draws, "Multiplier draws");
  sel_topk->add_option("--seed", sel_seed, "Bootstrap seed");
  sel_topk->add_option("--threads", sel_threads, "Worker threads");
  sel_topk->add_flag("--conservative-box", sel_box,
                     "Audit mode: full two-sided perturbation box (fwer)");
  sel_topk->add_option("--out", sel_out.path, "Output JSON path");

  // ingest
  std::string ing_ratings, ing_out = "comparisons.csv";
  int ing_n = 0, ing_L = 1;
  double ing_p = 0.3;
  std::uint64_t ing_seed = 0;
  bool ing_strict = false;
  auto* ingest = app.add_subcommand(
      "ingest", "Convert a ratings table into comparisons");
  ingest->add_option("--ratings", ing_ratings, "Ratings CSV")->required();
  ingest->add_option("--n-items", ing_n, "Item count")->required();
  ingest->add_option("--p", ing_p, "Edge probability")->required();
  ingest->add_option("--L", ing_L, "Replicates per edge")->required();
  ingest->add_option("--seed", ing_seed, "RNG seed");
  ingest->add_flag("--strict", ing_strict,
                   "Fail instead of dropping deficient edges");
  ingest->add_option("--out-comparisons", ing_out, "Comparisons CSV path");

  // experiment
  auto* experiment =
      app.add_subcommand("experiment", "Monte Carlo experiment harnesses");
  experiment->require_subcommand(1);
  McConfig mc;
  mc.threads = 2;
  std::string exp_L_grid = "200", exp_delta_grid, exp_out;
  int exp_draws = -1;
  std::vector<CLI::App*> exp_subs;
  for (const char* name : {"typeI-pair", "power-pair", "typeI-topk",
                           "power-topk", "fdr", "normality"}) {
    auto* sub = experiment->add_subcommand(name);
    sub->add_option("--reps", mc.reps, "Replications per setting");
    sub->add_option("--n", mc.n, "Number of items");
    sub->add_option("--p", mc.p, "Edge probability");
    sub->add_option("--alpha", mc.alpha, "Level");
    sub->add_option("--k", mc.k, "Top-K family size");
    sub->add_option("--L-grid", exp_L_grid, "Replicate counts, e.g. 100,200");
    sub->add_option("--delta-grid", exp_delta_grid,
                    "Signal grid, e.g. 0:2.5:0.5");
    sub->add_option("--seed", mc.seed, "Base seed");
    sub->add_option("--threads", mc.threads, "Worker threads");
    sub->add_option("--bootstrap-draws", exp_draws,
                    "Multiplier draws (default 2000; 5000 for fdr)");
    sub->add_option("--out", exp_out, "CSV path (default stdout)");
    exp_subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);

    if (*simulate) return cmd_simulate(sim);
    if (*estimate) return cmd_estimate(est_args, est_out);
    if (*pair) {
      const Pipeline pipeline = run_pipeline(pair_args);
      emit(pair_out, test_report_json(test_pairwise(pipeline.result, pair_i,
                                                    pair_j, pair_alpha)));
      return 0;
    }
    if (*topk) {
      const Pipeline pipeline = run_pipeline(topk_args);
      emit(topk_out,
           test_report_json(test_topk(pipeline.result, pipeline.data, topk_i,
                                      topk_k, topk_alpha, topk_draws,
                                      topk_seed)));
      return 0;
    }
    if (*sel_topk) {
      const Pipeline pipeline = run_pipeline(sel_args);
      const SelectionResult selection =
          sel_method == "fwer"
              ? select_topk_fwer(pipeline.result, pipeline.data, sel_k,
                                 sel_alpha, sel_draws, sel_seed, sel_box)
              : select_topk_fdr_by(pipeline.result, pipeline.data, sel_k,
                                   sel_alpha, sel_draws, sel_seed,
                                   sel_threads);
      emit(sel_out, selection_json(selection));
      return 0;
    }
    if (*ingest) {
      const auto ratings = read_ratings_csv(ing_ratings);
      const auto result = ratings_to_comparisons(ratings, ing_n, ing_p, ing_L,
                                                 ing_seed, !ing_strict);
      write_comparisons_csv(ing_out, result.dataset);
      nlohmann::json dropped = nlohmann::json::array();
      for (const auto& [i, j] : result.dropped_edges) {
        dropped.push_back({i, j});
      }
      std::cout << nlohmann::json{{"n", ing_n},
                                  {"L", result.dataset.L},
                                  {"edges", result.dataset.graph.edge_count()},
                                  {"dropped_edges", dropped},
                                  {"comparisons", ing_out}}
                       .dump(2)
                << '\n';
      return 0;
    }
    if (*experiment) {
      const auto L_grid = parse_int_grid(exp_L_grid, "--L-grid");
      const std::vector<double> deltas =
          exp_delta_grid.empty()
              ? std::vector<double>{}
              : parse_grid(exp_delta_grid, "--delta-grid");
      const auto need_deltas = [&]() {
        if (deltas.empty()) {
          throw InvalidArgumentError("this experiment needs --delta-grid");
        }
        return deltas;
      };
      std::vector<ExperimentRow> rows;
      if (*exp_subs[0]) {
        mc.bootstrap_draws = exp_draws > 0 ? exp_draws : kDefaultTestDraws;
        rows = run_typeI_pair(mc, L_grid);
      } else if (*exp_subs[1]) {
        mc.bootstrap_draws = exp_draws > 0 ? exp_draws : kDefaultTestDraws;
        rows = run_power_pair(mc, L_grid, need_deltas());
      } else if (*exp_subs[2]) {
        mc.bootstrap_draws = exp_draws > 0 ? exp_draws : kDefaultTestDraws;
        rows = run_typeI_topk(mc, L_grid);
      } else if (*exp_subs[3]) {
        mc.bootstrap_draws = exp_draws > 0 ? exp_draws : kDefaultTestDraws;
        rows = run_power_topk(mc, L_grid, need_deltas());
      } else if (*exp_subs[4]) {
        mc.bootstrap_draws = exp_draws > 0 ? exp_draws : kDefaultSelectDraws;
        rows = run_fdr(mc, L_grid, deltas);
      } else {
        mc.bootstrap_draws = exp_draws > 0 ? exp_draws : kDefaultTestDraws;
        rows = run_normality(mc, L_grid);
      }
      emit_csv(exp_out, rows);
      return 0;
    }
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const DisconnectedGraphError& e) {
    std::cerr << nlohmann::json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump() << '\n';
    return 2;
  } catch (const NoConvergenceError& e) {
    std::cerr << nlohmann::json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump() << '\n';
    return 2;
  } catch (const SingularSystemError& e) {
    std::cerr << nlohmann::json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump() << '\n';
    return 2;
  } catch (const InsufficientUsersError& e) {
    std::cerr << nlohmann::json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << nlohmann::json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", {{"code", "Internal"}, {"message", e.what()}}}}.dump() << '\n';
    return 1;
  }
}
