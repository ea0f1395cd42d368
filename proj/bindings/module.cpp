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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "btlrank/debias.hpp"
#include "btlrank/errors.hpp"
#include "btlrank/estimate.hpp"
#include "btlrank/inference.hpp"
#include "btlrank/ingest.hpp"
#include "btlrank/io.hpp"
#include "btlrank/model.hpp"
#include "btlrank/simulate.hpp"

namespace py = pybind11;
using namespace btlrank;

namespace {

ScoreVector to_scores(const Eigen::VectorXd& values) {
  return ScoreVector(values);
}

RankingProperty property_from_args(const std::string& kind, int i, int other) {
  if (kind == "pairwise-preferred") {
    return RankingProperty::pairwise_preferred(i, other);
  }
  if (kind == "top-k") return RankingProperty::top_k(i, other);
  throw UnsupportedPropertyError("unknown property kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_btlrank, m) {
  m.doc() = "Ranking inference for pairwise-comparison data under the "
            "Bradley-Terry-Luce model";

  py::register_exception<DisconnectedGraphError>(m, "DisconnectedGraphError");
  py::register_exception<NoConvergenceError>(m, "NoConvergenceError");
  py::register_exception<SingularSystemError>(m, "SingularSystemError");
  py::register_exception<InsufficientUsersError>(m, "InsufficientUsersError");

  py::class_<ComparisonGraph>(m, "ComparisonGraph")
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges,
                       std::optional<double> p) {
             return ComparisonGraph(n, edges, p);
           }),
           py::arg("n"), py::arg("edges"), py::arg("p") = std::nullopt)
      .def_readonly("n", &ComparisonGraph::n)
      .def_readonly("edges", &ComparisonGraph::edges)
      .def_readonly("p_known", &ComparisonGraph::p_known)
      .def("density", &ComparisonGraph::density)
      .def("edge_count", &ComparisonGraph::edge_count);

  py::class_<ComparisonDataset>(m, "ComparisonDataset")
      .def(py::init([](const ComparisonGraph& graph, int L,
                       const std::vector<std::vector<std::uint8_t>>& rows) {
             return ComparisonDataset(graph, L, rows);
           }),
           py::arg("graph"), py::arg("L"), py::arg("outcomes"))
      .def_readonly("graph", &ComparisonDataset::graph)
      .def_readonly("L", &ComparisonDataset::L)
      .def_readonly("outcomes", &ComparisonDataset::outcomes)
      .def_readonly("means", &ComparisonDataset::means)
      .def_property_readonly("n", &ComparisonDataset::n);

  py::class_<DebiasResult>(m, "DebiasResult")
      .def_property_readonly(
          "theta_hat",
          [](const DebiasResult& r) { return r.theta_hat.values; })
      .def_property_readonly(
          "theta_debiased",
          [](const DebiasResult& r) { return r.theta_debiased.values; })
      .def_readonly("theta11", &DebiasResult::theta11)
      .def_readonly("se", &DebiasResult::se)
      .def_readonly("lambda_dual", &DebiasResult::lambda_dual)
      .def_readonly("lambda0", &DebiasResult::lambda0);

  py::class_<TestReport>(m, "TestReport")
      .def_readonly("statistic", &TestReport::statistic)
      .def_readonly("threshold", &TestReport::threshold)
      .def_readonly("p_value", &TestReport::p_value)
      .def_readonly("reject", &TestReport::reject)
      .def_readonly("alpha", &TestReport::alpha)
      .def("__repr__", [](const TestReport& r) {
        return "<TestReport statistic=" + format_double(r.statistic) +
               " p_value=" + format_double(r.p_value) +
               (r.reject ? " reject>" : " retain>");
      });

  py::class_<SelectionResult>(m, "SelectionResult")
      .def_readonly("selected", &SelectionResult::selected)
      .def_readonly("p_values", &SelectionResult::p_values)
      .def_readonly("alpha", &SelectionResult::alpha)
      .def_readonly("k", &SelectionResult::k)
      .def_readonly("threshold_used", &SelectionResult::threshold_used);

  m.def(
      "rank_of",
      [](const Eigen::VectorXd& scores) { return rank_of(to_scores(scores)); },
      py::arg("scores"),
      "Rank per item (1 = highest score; ties to the smaller index).");

  m.def(
      "property_holds",
      [](const Eigen::VectorXd& scores, const std::string& kind, int i,
         int other) {
        return property_holds(to_scores(scores),
                              property_from_args(kind, i, other));
      },
      py::arg("scores"), py::arg("kind"), py::arg("i"), py::arg("other"),
      "Evaluate a ranking property ('pairwise-preferred' with j, or "
      "'top-k' with K).");

  m.def(
      "signal_distance",
      [](const Eigen::VectorXd& scores, const std::string& kind, int i,
         int other) {
        return signal_distance(to_scores(scores),
                               property_from_args(kind, i, other));
      },
      py::arg("scores"), py::arg("kind"), py::arg("i"), py::arg("other"));

  m.def(
      "multiple_testing_signal",
      [](const Eigen::VectorXd& scores, int k) {
        std::vector<RankingProperty> family;
        for (int i = 0; i < static_cast<int>(scores.size()); ++i) {
          family.push_back(RankingProperty::top_k(i, k));
        }
        return multiple_testing_signal(to_scores(scores), family);
      },
      py::arg("scores"), py::arg("k"),
      "Minimal signal over the top-K family: the gap between the K-th and "
      "(K+1)-th largest scores.");

  m.def(
      "divider_cardinality",
      [](const Eigen::VectorXd& scores, const std::string& family, int k) {
        if (family == "top-k") {
          return divider_cardinality(to_scores(scores), DividerFamily::kTopK, k);
        }
        if (family == "above-item") {
          return divider_cardinality(to_scores(scores),
                                     DividerFamily::kAboveItem, k);
        }
        throw InvalidArgumentError("family must be 'top-k' or 'above-item'");
      },
      py::arg("scores"), py::arg("family"), py::arg("k"),
      "Closed-form divider-set cardinality of a two-block score vector.");

  m.def("generate_graph", &generate_graph, py::arg("n"), py::arg("p"),
        py::arg("seed"), "Seeded Erdos-Renyi comparison graph.");

  m.def(
      "generate_outcomes",
      [](const ComparisonGraph& graph, const Eigen::VectorXd& scores, int L,
         std::uint64_t seed) {
        return generate_outcomes(graph, to_scores(scores), L, seed);
      },
      py::arg("graph"), py::arg("scores"), py::arg("L"), py::arg("seed"),
      "Seeded Bernoulli comparison outcomes under the BTL model.");

  m.def(
      "scores_uniform",
      [](int n, double lo, double hi, std::uint64_t seed) {
        return scores_uniform(n, lo, hi, seed).values;
      },
      py::arg("n"), py::arg("lo"), py::arg("hi"), py::arg("seed"));

  m.def(
      "fit_mle",
      [](const ComparisonDataset& data, std::optional<double> lambda0,
         double tol, int max_iters) {
        MleConfig config;
        config.lambda0 = lambda0;
        config.tol_grad_inf = tol;
        config.max_iters = max_iters;
        const FitResult fit = fit_mle(data, config);
        return py::make_tuple(fit.theta.values, fit.lambda0, fit.iterations);
      },
      py::arg("data"), py::arg("lambda0") = std::nullopt,
      py::arg("tol") = 1e-10, py::arg("max_iters") = 500,
      "Returns (theta_hat, lambda0, iterations) of the penalized MLE.");

  m.def(
      "debias",
      [](const Eigen::VectorXd& theta_hat, const ComparisonDataset& data,
         double lambda0) { return debias(to_scores(theta_hat), data, lambda0); },
      py::arg("theta_hat"), py::arg("data"), py::arg("lambda0") = 0.0,
      "One-step debiased scores with standard errors.");

  m.def("test_pairwise", &test_pairwise, py::arg("result"), py::arg("i"),
        py::arg("j"), py::arg("alpha") = 0.05,
        "One-sided z-test of theta_i > theta_j.");

  m.def("test_topk", &test_topk, py::arg("result"), py::arg("data"),
        py::arg("i"), py::arg("k"), py::arg("alpha") = 0.05,
        py::arg("B") = kDefaultTestDraws, py::arg("seed") = 0,
        "Bootstrap test of membership in the top K.");

  m.def("select_topk_fwer", &select_topk_fwer, py::arg("result"),
        py::arg("data"), py::arg("k"), py::arg("alpha") = 0.05,
        py::arg("B") = kDefaultSelectDraws, py::arg("seed") = 0,
        py::arg("conservative_box") = false,
        "Top-K selection with familywise error control.");

  m.def("select_topk_fdr_by", &select_topk_fdr_by, py::arg("result"),
        py::arg("data"), py::arg("k"), py::arg("alpha") = 0.05,
        py::arg("B") = kDefaultSelectDraws, py::arg("seed") = 0,
        py::arg("threads") = 1,
        "Top-K selection with Benjamini-Yekutieli FDR control.");

  m.def(
      "benjamini_yekutieli",
      [](const Eigen::VectorXd& p_values, double alpha) {
        const auto cutoff = benjamini_yekutieli(p_values, alpha);
        return py::make_tuple(cutoff.selected, cutoff.r, cutoff.threshold);
      },
      py::arg("p_values"), py::arg("alpha"),
      "Returns (selected, r, threshold) of the BY step-up rule.");

  m.def(
      "ratings_to_comparisons",
      [](const std::vector<std::tuple<int, int, double>>& ratings, int n_items,
         double p, int L, std::uint64_t seed, bool drop_deficient_edges) {
        std::vector<Rating> table;
        table.reserve(ratings.size());
        for (const auto& [user, item, rating] : ratings) {
          table.push_back(Rating{user, item, rating});
        }
        auto result = ratings_to_comparisons(table, n_items, p, L, seed,
                                             drop_deficient_edges);
        return py::make_tuple(std::move(result.dataset),
                              std::move(result.dropped_edges));
      },
      py::arg("ratings"), py::arg("n_items"), py::arg("p"), py::arg("L"),
      py::arg("seed"), py::arg("drop_deficient_edges") = true,
      "Convert (user, item, rating) triples into a comparison dataset; "
      "returns (dataset, dropped_edges).");

  m.def(
      "equalize_replicates",
      [](const ComparisonGraph& graph,
         const std::vector<std::vector<std::uint8_t>>& raw,
         std::uint64_t seed) { return equalize_replicates(graph, raw, seed); },
      py::arg("graph"), py::arg("raw"), py::arg("seed"),
      "Trim variable-length per-edge outcome lists to a common L by seeded "
      "subsampling.");

#ifdef VERSION_INFO
#define BTLRANK_STR2(x) #x
#define BTLRANK_STR(x) BTLRANK_STR2(x)
  m.attr("__version__") = BTLRANK_STR(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
