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

#ifndef CIRCUIT_DOE_SEARCH_HPP_
#define CIRCUIT_DOE_SEARCH_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "circuit_doe/circuits.hpp"
#include "circuit_doe/design.hpp"
#include "circuit_doe/evaluation.hpp"
#include "circuit_doe/fractions.hpp"

namespace circuit_doe {

struct SearchConfig {
  std::size_t restarts = 100;
  std::uint64_t master_seed = 0;
  std::size_t max_passes = 50;
  // Report each distinct fraction once.
  bool dedupe = true;
  int jobs = 1;
};

struct SearchResult {
  Fraction fraction;
  Evaluation evaluation;  // summary form, b_y left empty
  // Lowest restart index that produced this fraction, and how many did.
  std::size_t restart = 0;
  std::size_t hits = 1;
  // D_Y after the initial draw and after every accepted exchange.
  std::vector<BigInt> trajectory;
};

// Seed of restart `index`, a pure function of (master, index).
std::uint64_t restart_seed(std::uint64_t master, std::uint64_t index);

// Greedy draw over a seeded random point order: a point is added unless it
// would complete a circuit support, so C_A Y < b holds throughout. Throws
// SearchError when no saturated fraction is reached.
Fraction random_saturated(const ModelMatrix& x, const CircuitBasis& basis,
                          std::uint64_t seed);

// Multistart best-improvement exchange. Each restart starts from
// random_saturated(restart_seed(master, r)) and applies the single swap
// that maximizes D_Y while strictly increasing it, ties broken by smallest
// (out-index, in-index), until no swap improves or max_passes is reached.
// Results are sorted by D_Y descending, then by index tuple.
std::vector<SearchResult> exchange_search(const ModelMatrix& x,
                                          const CircuitBasis& basis,
                                          const SearchConfig& config);

}  // namespace circuit_doe

#endif  // CIRCUIT_DOE_SEARCH_HPP_
