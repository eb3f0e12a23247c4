// Copyright 2026 The Authors.
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

#include "circuit_doe/study.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <tuple>

#include "circuit_doe/combinatorics.hpp"
#include "circuit_doe/error.hpp"

namespace circuit_doe {

namespace {

std::string e_text(std::int64_t key) {
  return format_efficiency(static_cast<double>(key) / 100.0);
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

nlohmann::json row_json(const ClassificationRow& r) {
  return {{"g1", r.g1}, {"g2", r.g2}, {"g3", r.g3},
          {"Deff", e_text(r.e_key)}, {"n", r.n}};
}

const ClassificationRow* max_class(std::span<const ClassificationRow> rows) {
  const ClassificationRow* best = nullptr;
  for (const ClassificationRow& r : rows) {
    if (best == nullptr || r.e_key > best->e_key ||
        (r.e_key == best->e_key && std::tie(r.g2, r.g3) > std::tie(best->g2, best->g3))) {
      best = &r;
    }
  }
  return best;
}

nlohmann::json common_json(const ModelMatrix& x, const CircuitBasis& basis) {
  nlohmann::json j;
  j["levels"] = x.spec().levels();
  j["K"] = x.rows();
  j["p"] = x.cols();
  j["L"] = basis.size();
  const PointCircuitCount q = per_point_circuit_count(basis);
  if (q.q) {
    j["q"] = *q.q;
  } else {
    j["q"] = nullptr;
  }
  return j;
}

}  // namespace

std::vector<ClassificationRow> classify(std::span<const Evaluation> evaluations) {
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>, std::size_t>
      counts;
  for (const Evaluation& ev : evaluations) {
    ++counts[{efficiency_key(ev.e_y), ev.g3, ev.g2, ev.g1}];
  }
  std::vector<ClassificationRow> rows;
  for (const auto& [key, n] : counts) {
    const auto& [e, g3, g2, g1] = key;
    rows.push_back(ClassificationRow{g1, g2, g3, e, n, false});
  }
  return rows;
}

std::vector<ClassificationRow> collapse_minimum(std::span<const ClassificationRow> rows) {
  if (rows.empty()) return {};
  std::int64_t min_e = rows.front().e_key;
  for (const ClassificationRow& r : rows) min_e = std::min(min_e, r.e_key);
  ClassificationRow merged;
  merged.e_key = min_e;
  merged.collapsed = true;
  std::size_t merged_count = 0;
  std::vector<ClassificationRow> out;
  for (const ClassificationRow& r : rows) {
    if (r.e_key != min_e) {
      out.push_back(r);
      continue;
    }
    if (merged_count++ == 0) {
      merged.g1 = r.g1;
      merged.g2 = r.g2;
      merged.g3 = r.g3;
    }
    merged.g1 = std::max(merged.g1, r.g1);
    merged.g2 = std::max(merged.g2, r.g2);
    merged.g3 = std::max(merged.g3, r.g3);
    merged.n += r.n;
  }
  if (merged_count == 1) merged.collapsed = false;
  out.insert(out.begin(), merged);
  return out;
}

std::vector<FrequencyRow> frequency_view(std::span<const Evaluation> evaluations) {
  std::map<FrequencyTable, std::map<std::int64_t, std::size_t>> groups;
  for (const Evaluation& ev : evaluations) {
    ++groups[ev.slack_histogram][efficiency_key(ev.e_y)];
  }
  std::vector<FrequencyRow> rows;
  for (auto& [table, by_e] : groups) rows.push_back(FrequencyRow{table, by_e});
  // By lowest E_Y, then by the count vector.
  std::sort(rows.begin(), rows.end(), [](const FrequencyRow& a, const FrequencyRow& b) {
    const std::int64_t ea = a.n_by_efficiency.begin()->first;
    const std::int64_t eb = b.n_by_efficiency.begin()->first;
    if (ea != eb) return ea < eb;
    return std::lexicographical_compare(
        a.slack.begin(), a.slack.end(), b.slack.begin(), b.slack.end(),
        [](const auto& x, const auto& y) {
          return std::tie(x.first, x.second) < std::tie(y.first, y.second);
        });
  });
  return rows;
}

OptimumAttainment max_efficiency_attainment(std::span<const ClassificationRow> rows) {
  if (rows.empty()) return {};
  std::int64_t max_e = rows.front().e_key;
  std::int64_t max_g2 = rows.front().g2;
  std::int64_t max_g3 = rows.front().g3;
  for (const ClassificationRow& r : rows) {
    max_e = std::max(max_e, r.e_key);
    max_g2 = std::max(max_g2, r.g2);
    max_g3 = std::max(max_g3, r.g3);
  }
  OptimumAttainment out{true, true};
  for (const ClassificationRow& r : rows) {
    if (r.e_key != max_e) continue;
    out.g2 = out.g2 && r.g2 == max_g2;
    out.g3 = out.g3 && r.g3 == max_g3;
  }
  return out;
}

ExhaustiveStudy run_exhaustive_study(const ModelMatrix& x, const CircuitBasis& basis,
                                     const EnumerationOptions& options) {
  const std::vector<Fraction> fractions = enumerate_saturated(x, basis, options);
  const std::vector<Evaluation> evals = evaluate_batch(x, basis, fractions, options.jobs);
  ExhaustiveStudy study;
  study.candidates = static_cast<std::size_t>(binomial(x.rows(), x.cols()));
  study.saturated = fractions.size();
  study.classes = classify(evals);
  study.frequency = frequency_view(evals);
  study.frequency_determines_efficiency =
      std::all_of(study.frequency.begin(), study.frequency.end(),
                  [](const FrequencyRow& r) { return r.n_by_efficiency.size() == 1; });
  study.attainment = max_efficiency_attainment(study.classes);
  return study;
}

SamplingStudy run_sampling_study(const ModelMatrix& x, const CircuitBasis& basis,
                                 const SearchConfig& config) {
  SearchConfig distinct_config = config;
  distinct_config.dedupe = true;
  SamplingStudy study;
  study.designs = exchange_search(x, basis, distinct_config);
  study.samples = config.restarts;
  study.distinct = study.designs.size();
  std::vector<Evaluation> evals;
  evals.reserve(study.designs.size());
  for (const SearchResult& r : study.designs) evals.push_back(r.evaluation);
  study.classes = classify(evals);
  study.attainment = max_efficiency_attainment(study.classes);
  return study;
}

void write_table(const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows, std::ostream& out,
                 TableFormat format) {
  if (format == TableFormat::kCsv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out << ',';
        out << csv_cell(cells[i]);
      }
      out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return;
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) {
      width[i] = std::max(width[i], r[i].size());
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string text;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) text += "  ";
      text += std::string(width[i] - cells[i].size(), ' ') + cells[i];
    }
    out << text << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void emit_tables(std::span<const ClassificationRow> rows, std::ostream& out,
                 TableFormat format) {
  if (rows.empty()) throw ContractError("no classification rows to emit");
  std::vector<std::vector<std::string>> cells;
  std::size_t total = 0;
  for (const ClassificationRow& r : rows) {
    const std::string bound = r.collapsed ? "<=" : "";
    cells.push_back({bound + std::to_string(r.g1), bound + std::to_string(r.g2),
                     bound + std::to_string(r.g3), e_text(r.e_key), std::to_string(r.n)});
    total += r.n;
  }
  cells.push_back({"Total", "", "", "", std::to_string(total)});
  write_table({"g1", "g2", "g3", "Deff", "n"}, cells, out, format);
}

void emit_tables(std::span<const ClassificationRow> rows, const std::string& path,
                 TableFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  emit_tables(rows, out, format);
  if (!out) throw Error("failed writing " + path);
}

void emit_frequency_table(std::span<const FrequencyRow> rows, std::ostream& out,
                          TableFormat format) {
  if (rows.empty()) throw ContractError("no frequency rows to emit");
  std::set<std::int64_t> values;
  std::set<std::int64_t> efficiencies;
  for (const FrequencyRow& r : rows) {
    for (const auto& [v, n] : r.slack) values.insert(v);
    for (const auto& [e, n] : r.n_by_efficiency) efficiencies.insert(e);
  }
  std::vector<std::string> header;
  for (std::int64_t v : values) header.push_back("slack_" + std::to_string(v));
  for (std::int64_t e : efficiencies) header.push_back("n@" + e_text(e));
  std::vector<std::vector<std::string>> cells;
  std::map<std::int64_t, std::size_t> totals;
  for (const FrequencyRow& r : rows) {
    std::vector<std::string> line;
    for (std::int64_t v : values) {
      const auto it = r.slack.find(v);
      line.push_back(std::to_string(it == r.slack.end() ? 0 : it->second));
    }
    for (std::int64_t e : efficiencies) {
      const auto it = r.n_by_efficiency.find(e);
      const std::size_t n = it == r.n_by_efficiency.end() ? 0 : it->second;
      totals[e] += n;
      line.push_back(std::to_string(n));
    }
    cells.push_back(std::move(line));
  }
  std::vector<std::string> total_line(values.size(), "");
  if (!total_line.empty()) total_line.front() = "Total";
  for (std::int64_t e : efficiencies) total_line.push_back(std::to_string(totals[e]));
  cells.push_back(std::move(total_line));
  write_table(header, cells, out, format);
}

void emit_designs(std::span<const SearchResult> designs, std::ostream& out,
                  TableFormat format) {
  std::vector<std::vector<std::string>> cells;
  for (const SearchResult& r : designs) {
    cells.push_back({r.fraction.to_string(), std::to_string(r.evaluation.g1),
                     std::to_string(r.evaluation.g2), std::to_string(r.evaluation.g3),
                     r.evaluation.d_y.get_str(), format_efficiency(r.evaluation.e_y)});
  }
  write_table({"fraction", "g1", "g2", "g3", "detXtX", "Deff"}, cells, out, format);
}

nlohmann::json summary_json(const ModelMatrix& x, const CircuitBasis& basis,
                            const ExhaustiveStudy& study) {
  nlohmann::json j = common_json(x, basis);
  j["mode"] = "exhaustive";
  j["candidates"] = study.candidates;
  j["saturated"] = study.saturated;
  j["classes"] = study.classes.size();
  if (const ClassificationRow* best = max_class(study.classes)) {
    j["max_class"] = row_json(*best);
  }
  std::set<std::int64_t> g1_values;
  for (const ClassificationRow& r : study.classes) g1_values.insert(r.g1);
  j["g1_constant"] = g1_values.size() == 1;
  j["frequency_determines_efficiency"] = study.frequency_determines_efficiency;
  j["max_class_attains_max_g2"] = study.attainment.g2;
  j["max_class_attains_max_g3"] = study.attainment.g3;
  return j;
}

nlohmann::json summary_json(const ModelMatrix& x, const CircuitBasis& basis,
                            const SamplingStudy& study) {
  nlohmann::json j = common_json(x, basis);
  j["mode"] = "sample";
  j["samples"] = study.samples;
  j["distinct"] = study.distinct;
  j["classes"] = study.classes.size();
  if (const ClassificationRow* best = max_class(study.classes)) {
    j["max_class"] = row_json(*best);
  }
  j["max_class_attains_max_g2"] = study.attainment.g2;
  j["max_class_attains_max_g3"] = study.attainment.g3;
  return j;
}

}  // namespace circuit_doe
