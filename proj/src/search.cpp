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

#include "circuit_doe/search.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <optional>
#include <random>

#include <omp.h>

#include "circuit_doe/error.hpp"

namespace circuit_doe {

namespace {

constexpr int kMaxDraws = 64;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SearchResult run_restart(const ModelMatrix& x, const CircuitBasis& basis,
                         const SearchConfig& config, std::size_t restart) {
  const std::size_t k = x.rows();
  const std::size_t p = x.cols();
  Fraction f = random_saturated(x, basis, restart_seed(config.master_seed, restart));
  std::vector<BigInt> trajectory;
  BigInt det = fraction_determinant(x, f);
  trajectory.push_back(det * det);

  BigInt z;
  BigInt best;
  for (std::size_t pass = 0; pass < config.max_passes; ++pass) {
    // Replacing row r of X_F by x_j scales det by (x_j^t X_F^-1)_r, so with
    // e = d X_F^-1 the swap improves D iff |x_j^t e_r| > |d|.
    const ScaledInverse inv = scaled_inverse(x.submatrix(f.indices()));
    if (is_zero(inv.d)) throw SearchError("exchange reached a singular fraction");
    best = abs(inv.d);
    std::size_t best_out = p;
    std::size_t best_in = k;
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t j = 0; j < k; ++j) {
        if (f.contains(j)) continue;
        z = 0;
        for (std::size_t c = 0; c < p; ++c) {
          const std::int64_t xv = x(j, c);
          if (xv != 0) z += static_cast<long>(xv) * inv.e(c, r);
        }
        if (mpz_cmpabs(z.get_mpz_t(), best.get_mpz_t()) > 0) {
          best = abs(z);
          best_out = r;
          best_in = j;
        }
      }
    }
    if (best_out == p) break;
    std::vector<std::size_t> idx = f.indices();
    idx[best_out] = best_in;
    f = Fraction(k, std::move(idx));
    det = fraction_determinant(x, f);
    trajectory.push_back(det * det);
  }
  SearchResult result{f, evaluate_summary(x, basis, f), restart, 1, std::move(trajectory)};
  return result;
}

}  // namespace

std::uint64_t restart_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ index);
}

Fraction random_saturated(const ModelMatrix& x, const CircuitBasis& basis,
                          std::uint64_t seed) {
  const std::size_t k = x.rows();
  const std::size_t p = x.cols();
  if (basis.ambient_dimension() != k) {
    throw ContractError("circuit basis does not match the design size");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(k);
  const std::vector<std::int64_t>& b = basis.support_sizes();
  std::vector<std::int64_t> inside(basis.size());
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::fill(inside.begin(), inside.end(), 0);
    std::vector<std::size_t> chosen;
    for (std::size_t j : order) {
      if (chosen.size() == p) break;
      const auto through = basis.circuits_through(j);
      const bool completes = std::any_of(through.begin(), through.end(), [&](std::uint32_t i) {
        return inside[i] == b[i] - 1;
      });
      if (completes) continue;
      for (std::uint32_t i : through) ++inside[i];
      chosen.push_back(j);
    }
    if (chosen.size() < p) continue;
    Fraction f(k, std::move(chosen));
    // Only an incomplete basis lets a dependent set through.
    if (is_saturated_det(x, f)) return f;
  }
  throw SearchError("no saturated fraction after " + std::to_string(kMaxDraws) +
                    " greedy draws; is the circuit basis complete?");
}

std::vector<SearchResult> exchange_search(const ModelMatrix& x,
                                          const CircuitBasis& basis,
                                          const SearchConfig& config) {
  if (config.restarts < 1) throw ContractError("search needs at least one restart");
  std::vector<std::optional<SearchResult>> slots(config.restarts);
  if (config.jobs <= 1) {
    for (std::size_t r = 0; r < config.restarts; ++r) {
      slots[r] = run_restart(x, basis, config, r);
    }
  } else {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.jobs)
    for (std::size_t r = 0; r < config.restarts; ++r) {
      try {
        slots[r] = run_restart(x, basis, config, r);
      } catch (...) {
#pragma omp critical(circuit_doe_search_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<SearchResult> results;
  results.reserve(slots.size());
  for (auto& s : slots) results.push_back(std::move(*s));
  std::sort(results.begin(), results.end(), [](const SearchResult& a, const SearchResult& b) {
    if (const int c = cmp(a.evaluation.d_y, b.evaluation.d_y); c != 0) return c > 0;
    if (a.fraction != b.fraction) return a.fraction < b.fraction;
    return a.restart < b.restart;
  });
  if (config.dedupe) {
    std::vector<SearchResult> distinct;
    for (SearchResult& r : results) {
      if (!distinct.empty() && distinct.back().fraction == r.fraction) {
        ++distinct.back().hits;
      } else {
        distinct.push_back(std::move(r));
      }
    }
    results = std::move(distinct);
  }
  return results;
}

}  // namespace circuit_doe
