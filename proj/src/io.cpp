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

#include "btlrank/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "btlrank/errors.hpp"

namespace btlrank {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

long parse_long(const std::string& text, const char* what) {
  long value = 0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw IoError(std::string("cannot parse ") + what + ": '" + text + "'");
  }
  return value;
}

double parse_double(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw IoError(std::string("cannot parse ") + what + ": '" + text + "'");
  }
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void write_comparisons_csv(std::ostream& out, const ComparisonDataset& data) {
  out << "i,j,rep,outcome\n";
  for (std::size_t e = 0; e < data.graph.edges.size(); ++e) {
    const auto [i, j] = data.graph.edges[e];
    for (int l = 0; l < data.L; ++l) {
      out << i << ',' << j << ',' << l << ','
          << static_cast<int>(data.outcomes[e][static_cast<std::size_t>(l)])
          << '\n';
    }
  }
}

void write_comparisons_csv(const std::string& path,
                           const ComparisonDataset& data) {
  auto out = open_output(path);
  write_comparisons_csv(out, data);
}

ComparisonDataset read_comparisons_csv(std::istream& in,
                                       std::optional<int> n_override,
                                       std::optional<double> p_known) {
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) !=
      std::vector<std::string>{"i", "j", "rep", "outcome"}) {
    throw IoError("expected comparisons header 'i,j,rep,outcome'");
  }
  std::map<std::pair<int, int>, std::vector<std::pair<long, std::uint8_t>>>
      per_edge;
  int max_index = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4) throw IoError("bad comparisons row: '" + line + "'");
    const int i = static_cast<int>(parse_long(fields[0], "item id"));
    const int j = static_cast<int>(parse_long(fields[1], "item id"));
    const long rep = parse_long(fields[2], "replicate index");
    const long outcome = parse_long(fields[3], "outcome");
    if (i >= j) throw IoError("comparisons rows require i < j");
    if (outcome != 0 && outcome != 1) throw IoError("outcome must be 0 or 1");
    per_edge[{i, j}].emplace_back(rep, static_cast<std::uint8_t>(outcome));
    max_index = std::max(max_index, j);
  }
  if (per_edge.empty()) throw IoError("no comparison rows found");
  const int n = n_override.value_or(max_index + 1);

  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<std::uint8_t>> rows;
  int L = -1;
  for (auto& [edge, replicates] : per_edge) {
    std::sort(replicates.begin(), replicates.end());
    if (L < 0) L = static_cast<int>(replicates.size());
    std::vector<std::uint8_t> outcomes;
    outcomes.reserve(replicates.size());
    for (std::size_t idx = 0; idx < replicates.size(); ++idx) {
      if (replicates[idx].first != static_cast<long>(idx)) {
        throw IoError("replicate indices for an edge must be 0..L-1");
      }
      outcomes.push_back(replicates[idx].second);
    }
    edges.push_back(edge);
    rows.push_back(std::move(outcomes));
  }
  return ComparisonDataset(ComparisonGraph(n, std::move(edges), p_known),
                           L, std::move(rows));
}

ComparisonDataset read_comparisons_csv(const std::string& path,
                                       std::optional<int> n_override,
                                       std::optional<double> p_known) {
  auto in = open_input(path);
  return read_comparisons_csv(in, n_override, p_known);
}

std::vector<Rating> read_ratings_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) !=
      std::vector<std::string>{"user", "item", "rating"}) {
    throw IoError("expected ratings header 'user,item,rating'");
  }
  std::vector<Rating> ratings;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) throw IoError("bad ratings row: '" + line + "'");
    Rating rating;
    rating.user = static_cast<int>(parse_long(fields[0], "user id"));
    rating.item = static_cast<int>(parse_long(fields[1], "item id"));
    rating.rating = parse_double(fields[2], "rating");
    ratings.push_back(rating);
  }
  return ratings;
}

std::vector<Rating> read_ratings_csv(const std::string& path) {
  auto in = open_input(path);
  return read_ratings_csv(in);
}

nlohmann::json truth_json(const ScoreVector& theta_star, double p, int L,
                          std::uint64_t seed) {
  return nlohmann::json{{"theta_star", to_std(theta_star.values)},
                        {"n", theta_star.n()},
                        {"p", p},
                        {"L", L},
                        {"seed", seed}};
}

nlohmann::json estimate_json(const DebiasResult& result) {
  return nlohmann::json{{"n", result.scaling.n},
                        {"L", result.scaling.L},
                        {"p_hat", result.scaling.p_hat},
                        {"lambda0", result.lambda0},
                        {"theta_hat", to_std(result.theta_hat.values)},
                        {"theta_debiased", to_std(result.theta_debiased.values)},
                        {"se", to_std(result.se)}};
}

namespace {

Eigen::VectorXd from_json_array(const nlohmann::json& node, const char* what) {
  if (!node.is_array() || node.empty()) {
    throw IoError(std::string("expected a non-empty array for ") + what);
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(node.size()));
  Eigen::Index i = 0;
  for (const auto& entry : node) v[i++] = entry.get<double>();
  return v;
}

}  // namespace

EstimateDoc read_estimate_json(const std::string& path) {
  auto in = open_input(path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse " + path + ": " + e.what());
  }
  EstimateDoc out;
  try {
    out.n = doc.at("n").get<int>();
    out.L = doc.at("L").get<int>();
    out.p_hat = doc.at("p_hat").get<double>();
    out.lambda0 = doc.at("lambda0").get<double>();
    out.theta_hat = from_json_array(doc.at("theta_hat"), "theta_hat");
    out.theta_debiased =
        from_json_array(doc.at("theta_debiased"), "theta_debiased");
    out.se = from_json_array(doc.at("se"), "se");
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed estimates document " + path + ": " + e.what());
  }
  return out;
}

ScoreVector read_scores_json(const std::string& path) {
  auto in = open_input(path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse " + path + ": " + e.what());
  }
  if (doc.is_array()) return ScoreVector(from_json_array(doc, "scores"));
  for (const char* key : {"theta_star", "theta"}) {
    if (doc.contains(key)) {
      return ScoreVector(from_json_array(doc[key], key));
    }
  }
  throw IoError("scores file must be an array or carry theta_star/theta");
}

nlohmann::json test_report_json(const TestReport& report) {
  nlohmann::json property;
  if (report.property.kind == PropertyKind::kPairwisePreferred) {
    property = {{"kind", "pairwise-preferred"},
                {"i", report.property.item},
                {"j", report.property.other}};
  } else {
    property = {{"kind", "top-k"},
                {"i", report.property.item},
                {"k", report.property.k}};
  }
  return nlohmann::json{
      {"property", property},
      {"statistic", report.statistic},
      {"threshold", report.threshold},
      {"p_value", report.p_value},
      {"reject", report.reject},
      {"alpha", report.alpha},
      {"method", report.method == TestMethod::kNormalZ ? "normal-z"
                                                       : "bootstrap-max"}};
}

nlohmann::json selection_json(const SelectionResult& selection) {
  return nlohmann::json{
      {"method",
       selection.method == SelectionMethod::kFwer ? "fwer" : "fdr-by"},
      {"alpha", selection.alpha},
      {"K", selection.k},
      {"selected", selection.selected},
      {"p_values", to_std(selection.p_values)},
      {"threshold_used", selection.threshold_used}};
}

void write_json(const std::string& path, const nlohmann::json& doc) {
  auto out = open_output(path);
  out << doc.dump(2) << '\n';
}

void write_experiment_csv(std::ostream& out,
                          const std::vector<ExperimentRow>& rows) {
  out << "setting,rep,metric,value\n";
  for (const auto& row : rows) {
    out << row.setting << ',' << row.rep << ',' << row.metric << ','
        << format_double(row.value) << '\n';
  }
}

void write_experiment_csv(const std::string& path,
                          const std::vector<ExperimentRow>& rows) {
  auto out = open_output(path);
  write_experiment_csv(out, rows);
}

}  // namespace btlrank
