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

#ifndef CIRCUIT_DOE_COMBINATORICS_HPP_
#define CIRCUIT_DOE_COMBINATORICS_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

namespace circuit_doe {

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// C(n, r), saturating at kSaturated.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  if (r > n - r) r = n - r;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

// The rank-th r-subset of {0..n-1} in lexicographic order, written to out.
inline void unrank_combination(std::size_t n, std::uint64_t rank,
                               std::span<std::size_t> out) {
  const std::size_t r = out.size();
  std::size_t next = 0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t v = next;; ++v) {
      const std::uint64_t below = binomial(n - v - 1, r - i - 1);
      if (rank < below) {
        out[i] = v;
        next = v + 1;
        break;
      }
      rank -= below;
    }
  }
}

// Advances to the lexicographic successor; false after the last subset.
inline bool next_combination(std::span<std::size_t> c, std::size_t n) {
  const std::size_t r = c.size();
  std::size_t i = r;
  while (i > 0 && c[i - 1] == n - r + i - 1) --i;
  if (i == 0) return false;
  ++c[i - 1];
  for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
  return true;
}

}  // namespace circuit_doe

#endif  // CIRCUIT_DOE_COMBINATORICS_HPP_
