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

#ifndef CIRCUIT_DOE_FRACTIONS_HPP_
#define CIRCUIT_DOE_FRACTIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "circuit_doe/circuits.hpp"
#include "circuit_doe/design.hpp"
#include "circuit_doe/exact.hpp"

namespace circuit_doe {

// A subset of the K design points, kept as sorted row indices together with
// its bitset form.
class Fraction {
 public:
  // Indices may come in any order; duplicates or values >= k throw
  // ContractError.
  Fraction(std::size_t k, std::vector<std::size_t> indices);
  static Fraction from_indicator(std::span<const std::uint8_t> y);

  std::size_t ambient_dimension() const { return k_; }
  std::size_t cardinality() const { return indices_.size(); }
  const std::vector<std::size_t>& indices() const { return indices_; }
  std::vector<std::uint8_t> indicator() const;
  const std::vector<std::uint64_t>& mask() const { return mask_; }
  bool contains(std::size_t j) const {
    return (mask_[j / 64] >> (j % 64)) & 1U;
  }

  // "0,1,2" form used by the CSV files and the CLI.
  std::string to_string() const;

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.k_ == b.k_ && a.indices_ == b.indices_;
  }
  friend auto operator<=>(const Fraction& a, const Fraction& b) {
    return a.indices_ <=> b.indices_;
  }

 private:
  std::size_t k_;
  std::vector<std::size_t> indices_;
  std::vector<std::uint64_t> mask_;
};

// Either a 0/1 string of length k or comma-separated 0-based row indices.
Fraction parse_fraction(std::string_view text, std::size_t k);

// det(X_F) with rows in increasing index order.
BigInt fraction_determinant(const ModelMatrix& x, const Fraction& f);

// det(X_F) != 0. ContractError unless #F = p.
bool is_saturated_det(const ModelMatrix& x, const Fraction& f);

// True iff F contains no circuit support (C_A Y < b), scanning circuits by
// increasing support size. ContractError when K differs from the basis.
// Only meaningful as a saturation test when #F = p.
bool is_saturated_circuits(const CircuitBasis& basis, const Fraction& f);
// Same, also enforcing #F = p.
bool is_saturated_circuits(const ModelMatrix& x, const CircuitBasis& basis,
                           const Fraction& f);

inline constexpr double kDefaultEnumerationBudget = 1e7;

struct EnumerationOptions {
  double budget = kDefaultEnumerationBudget;
  int jobs = 1;
};

// Calls `emit` for every saturated p-subset, in increasing lexicographic
// order of the index tuple. ResourceError when C(K, p) exceeds the budget.
// Returns the number of saturated fractions.
// Throws ResourceError when C(k, p) exceeds options.budget.
void check_enumeration_budget(std::size_t k, std::size_t p, const EnumerationOptions& options);

std::size_t for_each_saturated(const ModelMatrix& x, const CircuitBasis& basis,
                               const EnumerationOptions& options,
                               const std::function<void(const Fraction&)>& emit);

std::vector<Fraction> enumerate_saturated(const ModelMatrix& x,
                                          const CircuitBasis& basis,
                                          const EnumerationOptions& options = {});

}  // namespace circuit_doe

#endif  // CIRCUIT_DOE_FRACTIONS_HPP_
