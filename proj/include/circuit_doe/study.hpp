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

#ifndef CIRCUIT_DOE_STUDY_HPP_
#define CIRCUIT_DOE_STUDY_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circuit_doe/circuits.hpp"
#include "circuit_doe/design.hpp"
#include "circuit_doe/evaluation.hpp"
#include "circuit_doe/fractions.hpp"
#include "circuit_doe/search.hpp"

#include "json.hpp"

namespace circuit_doe {

// One class of fractions sharing (g1, g2, g3, E_Y). E_Y is held in
// hundredths so the key is exact.
struct ClassificationRow {
  std::int64_t g1 = 0;
  std::int64_t g2 = 0;
  std::int64_t g3 = 0;
  std::int64_t e_key = 0;
  std::size_t n = 0;
  // Set on a row produced by collapse_minimum: g2 and g3 are upper bounds.
  bool collapsed = false;

  double e_y() const { return static_cast<double>(e_key) / 100.0; }
  friend bool operator==(const ClassificationRow&, const ClassificationRow&) = default;
};

// Fractions sharing one frequency table of b - b_Y, split by E_Y.
struct FrequencyRow {
  FrequencyTable slack;
  std::map<std::int64_t, std::size_t> n_by_efficiency;  // e_key -> count
  friend bool operator==(const FrequencyRow&, const FrequencyRow&) = default;
};

// Classes sorted by E_Y, then g3, g2, g1.
std::vector<ClassificationRow> classify(std::span<const Evaluation> evaluations);

// Merges every class at the minimum E_Y into a single row whose g2 and g3
// are the maxima over the merged classes.
std::vector<ClassificationRow> collapse_minimum(std::span<const ClassificationRow> rows);

std::vector<FrequencyRow> frequency_view(std::span<const Evaluation> evaluations);

// Whether every class at the maximal E_Y also has the maximal g2 and g3
// among `rows`.
struct OptimumAttainment {
  bool g2 = false;
  bool g3 = false;
};
OptimumAttainment max_efficiency_attainment(std::span<const ClassificationRow> rows);

struct ExhaustiveStudy {
  std::size_t candidates = 0;
  std::size_t saturated = 0;
  std::vector<ClassificationRow> classes;
  std::vector<FrequencyRow> frequency;
  // Each frequency table of b - b_Y occurs at a single E_Y.
  bool frequency_determines_efficiency = false;
  OptimumAttainment attainment;
};

ExhaustiveStudy run_exhaustive_study(const ModelMatrix& x, const CircuitBasis& basis,
                                     const EnumerationOptions& options = {});

struct SamplingStudy {
  std::size_t samples = 0;
  std::size_t distinct = 0;
  std::vector<ClassificationRow> classes;  // over distinct designs
  OptimumAttainment attainment;
  std::vector<SearchResult> designs;
};

SamplingStudy run_sampling_study(const ModelMatrix& x, const CircuitBasis& basis,
                                 const SearchConfig& config);

enum class TableFormat { kCsv, kText };

// Classification table with columns g1,g2,g3,Deff,n and a closing total
// row. ContractError on an empty row list.
void emit_tables(std::span<const ClassificationRow> rows, std::ostream& out,
                 TableFormat format);
void emit_tables(std::span<const ClassificationRow> rows, const std::string& path,
                 TableFormat format);

// Columns slack_1..slack_max, then n@<Deff> per distinct E_Y.
void emit_frequency_table(std::span<const FrequencyRow> rows, std::ostream& out,
                          TableFormat format);

// Search output: fraction indices, g1, g2, g3, detXtX, Deff.
void emit_designs(std::span<const SearchResult> designs, std::ostream& out,
                  TableFormat format);

// Writes CSV (RFC 4180 quoting) or space-aligned text from string cells.
void write_table(const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows, std::ostream& out,
                 TableFormat format);

nlohmann::json summary_json(const ModelMatrix& x, const CircuitBasis& basis,
                            const ExhaustiveStudy& study);
nlohmann::json summary_json(const ModelMatrix& x, const CircuitBasis& basis,
                            const SamplingStudy& study);

}  // namespace circuit_doe

#endif  // CIRCUIT_DOE_STUDY_HPP_
