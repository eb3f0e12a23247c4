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

#ifndef CIRCUIT_DOE_EVALUATION_HPP_
#define CIRCUIT_DOE_EVALUATION_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circuit_doe/circuits.hpp"
#include "circuit_doe/design.hpp"
#include "circuit_doe/exact.hpp"
#include "circuit_doe/fractions.hpp"

namespace circuit_doe {

using FrequencyTable = std::map<std::int64_t, std::size_t>;

struct Evaluation {
  // b_Y = C_A Y. Left empty by evaluate_summary.
  std::vector<std::int64_t> b_y;
  // Histograms of b_Y and of b - b_Y.
  FrequencyTable b_y_histogram;
  FrequencyTable slack_histogram;
  std::int64_t g1 = 0;  // sum (b - b_Y)
  std::int64_t g2 = 0;  // sum (b - b_Y)^2
  std::int64_t g3 = 0;  // max b_Y
  BigInt d_y;           // det(X_F^t X_F)
  double e_y = 0.0;     // D-efficiency, percent
};

// ContractError unless #F = p and K matches.
Evaluation evaluate(const ModelMatrix& x, const CircuitBasis& basis, const Fraction& f);
// As evaluate, without the L-long b_Y vector.
Evaluation evaluate_summary(const ModelMatrix& x, const CircuitBasis& basis,
                            const Fraction& f);

// Summaries for many fractions; jobs <= 1 runs the serial reference loop.
std::vector<Evaluation> evaluate_batch(const ModelMatrix& x, const CircuitBasis& basis,
                                       std::span<const Fraction> fractions, int jobs);

// b_Y by walking the points of F through the incidence lists.
std::vector<std::int64_t> intersection_counts(const CircuitBasis& basis, const Fraction& f);

// Histogram of the entries; counts sum to values.size().
FrequencyTable frequency_table(std::span<const std::int64_t> values);

// det(X_F^t X_F) computed from the Gram matrix, independent of det(X_F)^2.
BigInt gram_determinant(const ModelMatrix& x, const Fraction& f);

// (1/p) D^(1/p) * 100 via exp(log(D)/p); zero for D = 0.
double d_efficiency(const BigInt& d, std::size_t p);

// Two decimals, the resolution the tables report.
std::string format_efficiency(double e);
// E_Y in hundredths, the key used to group fractions into classes.
std::int64_t efficiency_key(double e);

struct PointCircuitCount {
  // Number of circuits through each design point (column sums of C_A).
  std::vector<std::int64_t> column_sums;
  // Set iff every column sum is equal.
  std::optional<std::int64_t> q;
};
PointCircuitCount per_point_circuit_count(const CircuitBasis& basis);

}  // namespace circuit_doe

#endif  // CIRCUIT_DOE_EVALUATION_HPP_
