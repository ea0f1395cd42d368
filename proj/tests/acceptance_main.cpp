// Acceptance suite: one self-contained check per release criterion, each
// printing a single PASS/FAIL line. Run with no arguments for the full
// suite or pass criterion numbers to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "btlrank/debias.hpp"
#include "btlrank/experiments.hpp"
#include "btlrank/inference.hpp"
#include "btlrank/normal.hpp"
#include "btlrank/rng.hpp"
#include "btlrank/simulate.hpp"
#include "btlrank/threading.hpp"
#include "helpers.hpp"

using namespace btlrank;

namespace {

int worker_threads() {
  if (const char* env = std::getenv("BTLRANK_THREADS")) {
    return std::max(1, std::atoi(env));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Two-sided Kolmogorov-Smirnov statistic against the standard normal.
double ks_statistic(std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  const double m = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = normal_cdf(sample[i]);
    d = std::max(d, std::max((static_cast<double>(i) + 1.0) / m - f,
                             f - static_cast<double>(i) / m));
  }
  return d;
}

// Upper tail of the Kolmogorov distribution.
double kolmogorov_tail(double x) {
  double total = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    total += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return total;
}

double kolmogorov_critical(double alpha) {
  double lo = 0.3, hi = 3.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_tail(mid) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double metric_mean(const std::vector<ExperimentRow>& rows,
                   const std::string& setting, const std::string& metric) {
  double total = 0.0;
  int count = 0;
  for (const auto& row : rows) {
    if (row.setting == setting && row.metric == metric) {
      total += row.value;
      ++count;
    }
  }
  return count > 0 ? total / count : std::nan("");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

bool criterion_derivatives(std::ostream& out) {
  double worst_grad = 0.0, worst_hess = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 3 + static_cast<int>(rng::bits64(seed, 100, 0) % 8);
    const int L = 1 + static_cast<int>(rng::bits64(seed, 101, 0) % 5);
    const auto data = btlrank::testing::random_connected_dataset(seed, n, L);
    const auto theta = scores_uniform(n, -1.5, 1.5, seed + 7);
    worst_grad = std::max(
        worst_grad, (gradient(theta, data) -
                     btlrank::testing::fd_gradient(theta, data))
                        .lpNorm<Eigen::Infinity>());
    worst_hess = std::max(
        worst_hess, (hessian(theta, data) -
                     btlrank::testing::fd_hessian(theta, data))
                        .lpNorm<Eigen::Infinity>());
  }
  out << "max gradient dev " << worst_grad << ", max hessian dev "
      << worst_hess << " (tol 1e-6)";
  return worst_grad <= 1e-6 && worst_hess <= 1e-6;
}

bool criterion_constrained_inverse(std::ostream& out) {
  double worst_block = 0.0, worst_identity = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 3 + static_cast<int>(rng::bits64(seed, 102, 0) % 4);
    const auto data = btlrank::testing::random_connected_dataset(seed + 500, n, 3);
    const Eigen::MatrixXd h = hessian(scores_uniform(n, -1, 1, seed + 9), data);

    // Brute-force dense inverse of the augmented system.
    Eigen::MatrixXd augmented = Eigen::MatrixXd::Zero(n + 1, n + 1);
    augmented.topLeftCorner(n, n) = h;
    augmented.topRightCorner(n, 1).setOnes();
    augmented.bottomLeftCorner(1, n).setOnes();
    const Eigen::MatrixXd brute =
        augmented.fullPivLu().inverse().topLeftCorner(n, n);

    const auto production = constrained_inverse(h);
    worst_block = std::max(
        worst_block, (production.theta11 - brute).lpNorm<Eigen::Infinity>());

    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    worst_identity = std::max(
        worst_identity, (production.theta11 * ones).lpNorm<Eigen::Infinity>());
    worst_identity = std::max(
        worst_identity,
        (production.theta11 * h * production.theta11 - production.theta11)
            .lpNorm<Eigen::Infinity>());
    Eigen::MatrixXd identity = production.theta11 * h;
    identity.array() += 1.0 / n;
    worst_identity =
        std::max(worst_identity, (identity - Eigen::MatrixXd::Identity(n, n))
                                     .lpNorm<Eigen::Infinity>());
  }
  out << "max block dev " << worst_block << " (tol 1e-8), max identity dev "
      << worst_identity << " (tol 1e-6)";
  return worst_block <= 1e-8 && worst_identity <= 1e-6;
}

bool criterion_normality(std::ostream& out) {
  McConfig config;
  config.n = 100;
  config.p = 0.25;
  config.reps = 2000;
  config.seed = 20260301;
  config.threads = worker_threads();
  const auto rows = run_normality(config, {20});
  std::vector<double> sample;
  for (const auto& row : rows) {
    if (row.metric == "qq") sample.push_back(row.value);
  }
  const double d = ks_statistic(std::move(sample));
  const double critical = kolmogorov_critical(0.01) / std::sqrt(2000.0);
  out << "KS statistic " << d << " vs critical " << critical
      << " at level 0.01";
  return d <= critical;
}

bool criterion_pairwise_type_one(std::ostream& out) {
  McConfig config;
  config.n = 100;
  config.p = 0.2;
  config.reps = 500;
  config.seed = 20260402;
  config.threads = worker_threads();
  const auto rows = run_typeI_pair(config, {200});
  const double rate = metric_mean(rows, "n=100,p=0.2,L=200", "reject");
  out << "rejection rate " << rate << " (target [0.03, 0.07])";
  return rate >= 0.03 && rate <= 0.07;
}

bool criterion_pairwise_power(std::ostream& out) {
  McConfig config;
  config.n = 100;
  config.p = 0.2;
  config.reps = 500;
  config.seed = 20260503;
  config.threads = worker_threads();
  const std::vector<double> deltas = {0.0, 0.5, 1.0, 1.5};
  const auto rows = run_power_pair(config, {400}, deltas);
  std::vector<double> power;
  out << "power";
  for (double delta : deltas) {
    power.push_back(metric_mean(
        rows, "n=100,p=0.2,L=400,delta=" + format_double(delta), "reject"));
    out << " " << power.back();
  }
  out << " over delta 0..1.5 (monotone, last >= 0.9)";
  bool monotone = true;
  for (std::size_t i = 1; i < power.size(); ++i) {
    monotone = monotone && power[i] >= power[i - 1];
  }
  return monotone && power.back() >= 0.9;
}

bool criterion_topk_type_one(std::ostream& out) {
  McConfig config;
  config.n = 100;
  config.p = 0.2;
  config.k = 30;
  config.reps = 500;
  config.seed = 20260604;
  config.threads = worker_threads();
  config.bootstrap_draws = kDefaultTestDraws;
  const auto rows = run_typeI_topk(config, {200});
  const double rate = metric_mean(rows, "n=100,p=0.2,L=200,K=30", "reject");
  out << "rejection rate " << rate << " (target <= 0.07)";
  return rate <= 0.07;
}

bool criterion_fdr(std::ostream& out) {
  McConfig config;
  config.n = 100;
  config.p = 0.2;
  config.k = 30;
  config.reps = 200;
  config.seed = 20260705;
  config.threads = worker_threads();
  config.bootstrap_draws = 2000;

  const auto null_rows = run_fdr(config, {200}, {});
  const double fdr = metric_mean(null_rows, "n=100,p=0.2,L=200,K=30", "fdr");

  config.reps = 100;
  const std::vector<double> deltas = {0.25, 1.0, 2.5};
  const auto power_rows = run_fdr(config, {200}, deltas);
  std::vector<double> power;
  for (double delta : deltas) {
    power.push_back(metric_mean(
        power_rows, "n=100,p=0.2,L=200,K=30,delta=" + format_double(delta),
        "tpr"));
  }
  out << "FDR " << fdr << " (target <= 0.05); power " << power[0] << " "
      << power[1] << " " << power[2] << " over delta 0.25/1/2.5 (increasing)";
  const bool monotone = power[0] <= power[1] && power[1] <= power[2] &&
                        power.front() < power.back();
  return fdr <= 0.05 && monotone;
}

bool criterion_rate(std::ostream& out) {
  const int n = 50, seeds = 50;
  const double p = 0.25;
  const int threads = worker_threads();
  std::vector<double> err_small(seeds), err_large(seeds);
  parallel_for(seeds, threads, [&](int s) {
    const std::uint64_t seed =
        rng::derive_seed(20260806, static_cast<std::uint64_t>(s));
    const auto truth = scores_uniform(n, -1, 1, seed);
    const auto graph = generate_graph(n, p, seed);
    for (const int L : {400, 1600}) {
      const auto data = generate_outcomes(graph, truth, L, seed + (L == 400));
      const auto fit = fit_mle(data);
      (L == 400 ? err_small : err_large)[static_cast<std::size_t>(s)] =
          (fit.theta.values - truth.values).lpNorm<Eigen::Infinity>();
    }
  });
  std::sort(err_small.begin(), err_small.end());
  std::sort(err_large.begin(), err_large.end());
  const double ratio = err_small[seeds / 2] / err_large[seeds / 2];
  out << "median sup-error ratio L=400 vs L=1600 is " << ratio
      << " (target [1.6, 2.6])";
  return ratio >= 1.6 && ratio <= 2.6;
}

bool criterion_by_bruteforce(std::ostream& out) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int n = 1 + static_cast<int>(rng::bits64(seed, 103, 0) % 20);
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) {
      p[i] = std::min(1.0, 1e-6 + rng::u01(seed, 104, static_cast<std::uint64_t>(i)));
    }
    const double alpha = 0.01 + 0.2 * rng::u01(seed, 105, 0);
    const auto fast = benjamini_yekutieli(p, alpha);

    // Literal evaluation of the step-up definition over every k.
    double harmonic = 0.0;
    for (int k = n; k >= 1; --k) harmonic += 1.0 / k;
    std::vector<double> sorted(p.data(), p.data() + n);
    std::sort(sorted.begin(), sorted.end());
    int r = 0;
    for (int k = 1; k <= n; ++k) {
      if (sorted[static_cast<std::size_t>(k - 1)] <=
          k * alpha / (n * harmonic)) {
        r = k;
      }
    }
    std::set<int> expected;
    if (r > 0) {
      std::vector<int> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return p[a] < p[b]; });
      for (int i = 0; i < r; ++i) expected.insert(order[static_cast<std::size_t>(i)]);
    }
    const std::set<int> got(fast.selected.begin(), fast.selected.end());
    if (fast.r != r || got != expected) {
      out << "mismatch at seed " << seed << " (r " << fast.r << " vs " << r
          << ")";
      return false;
    }
    ++checked;
  }
  out << checked << " random p-value vectors agree exactly";
  return true;
}

bool criterion_cli_determinism(std::ostream& out) {
  const char* cli_env = std::getenv("BTLRANK_CLI");
  const std::string cli = cli_env ? cli_env : "./tools/btlrank";
  if (!std::filesystem::exists(cli)) {
    out << "CLI binary not found at " << cli << " (set BTLRANK_CLI)";
    return false;
  }
  const auto dir =
      std::filesystem::temp_directory_path() / "btlrank_acceptance";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto run = [&](const std::string& args) {
    const std::string command = cli + " " + args + " > /dev/null 2>&1";
    return std::system(command.c_str()) == 0;
  };
  const auto file = [&](const std::string& name) {
    return (dir / name).string();
  };

  // Same flags and seed twice: byte-identical artifacts.
  const std::string sim_flags =
      "simulate --n 40 --p 0.3 --L 25 --seed 11 --score-dist uniform:8:10";
  if (!run(sim_flags + " --out-comparisons " + file("a.csv") +
           " --out-truth " + file("a.json")) ||
      !run(sim_flags + " --out-comparisons " + file("b.csv") +
           " --out-truth " + file("b.json"))) {
    out << "simulate invocation failed";
    return false;
  }
  if (read_file(file("a.csv")) != read_file(file("b.csv")) ||
      read_file(file("a.json")) != read_file(file("b.json"))) {
    out << "simulate outputs differ across reruns";
    return false;
  }

  // Estimates, selection, and experiments must not depend on --threads.
  const std::string base = " --comparisons " + file("a.csv") + " --p 0.3";
  if (!run("estimate" + base + " --out " + file("est1.json")) ||
      !run("estimate" + base + " --out " + file("est2.json"))) {
    out << "estimate invocation failed";
    return false;
  }
  if (read_file(file("est1.json")) != read_file(file("est2.json"))) {
    out << "estimate outputs differ across reruns";
    return false;
  }
  if (!run("select topk" + base +
           " --k 8 --method fdr-by --bootstrap-draws 500 --seed 3 "
           "--threads 1 --out " + file("sel1.json")) ||
      !run("select topk" + base +
           " --k 8 --method fdr-by --bootstrap-draws 500 --seed 3 "
           "--threads 4 --out " + file("sel2.json"))) {
    out << "select invocation failed";
    return false;
  }
  if (read_file(file("sel1.json")) != read_file(file("sel2.json"))) {
    out << "selection depends on --threads";
    return false;
  }
  if (!run("experiment typeI-pair --reps 12 --n 30 --p 0.4 --L-grid 40 "
           "--seed 5 --threads 1 --out " + file("exp1.csv")) ||
      !run("experiment typeI-pair --reps 12 --n 30 --p 0.4 --L-grid 40 "
           "--seed 5 --threads 2 --out " + file("exp2.csv"))) {
    out << "experiment invocation failed";
    return false;
  }
  if (read_file(file("exp1.csv")) != read_file(file("exp2.csv"))) {
    out << "experiment CSV depends on --threads";
    return false;
  }

  // Staged estimates reuse matches the fused pipeline.
  if (!run("test pair" + base + " --i 0 --j 1 --out " + file("fused.json")) ||
      !run("test pair" + base + " --i 0 --j 1 --estimates " +
           file("est1.json") + " --out " + file("staged.json"))) {
    out << "test invocation failed";
    return false;
  }
  if (read_file(file("fused.json")) != read_file(file("staged.json"))) {
    out << "staged and fused pipelines disagree";
    return false;
  }

  // Statistical precondition failures exit with code 2.
  std::ofstream disconnected(file("disc.csv"));
  disconnected << "i,j,rep,outcome\n0,1,0,1\n2,3,0,1\n";
  disconnected.close();
  const std::string command = cli + " estimate --comparisons " +
                              file("disc.csv") + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 2) {
    out << "disconnected input should exit with code 2";
    return false;
  }

  out << "byte-identical reruns, thread-invariant outputs, exit codes";
  return true;
}

struct Criterion {
  int id;
  std::string name;
  std::function<bool(std::ostream&)> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "derivatives-match-finite-differences", criterion_derivatives},
      {2, "constrained-inverse-oracle", criterion_constrained_inverse},
      {3, "debiased-coordinate-normality", criterion_normality},
      {4, "pairwise-type-one-error", criterion_pairwise_type_one},
      {5, "pairwise-power-curve", criterion_pairwise_power},
      {6, "topk-type-one-error", criterion_topk_type_one},
      {7, "fdr-control-and-power", criterion_fdr},
      {8, "sup-norm-consistency-rate", criterion_rate},
      {9, "benjamini-yekutieli-bruteforce", criterion_by_bruteforce},
      {10, "cli-determinism", criterion_cli_determinism},
  };

  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (!wanted.empty() && !wanted.count(criterion.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = false;
    try {
      ok = criterion.check(detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id
              << " " << criterion.name << ": " << detail.str() << " ["
              << std::fixed << std::setprecision(1) << seconds << "s]"
              << std::endl;
    std::cout.unsetf(std::ios::fixed);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
