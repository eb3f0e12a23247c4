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

#include "circuit_doe/fractions.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <omp.h>

#include "circuit_doe/combinatorics.hpp"
#include "circuit_doe/error.hpp"

namespace circuit_doe {

Fraction::Fraction(std::size_t k, std::vector<std::size_t> indices)
    : k_(k), indices_(std::move(indices)), mask_((k + 63) / 64, 0) {
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] >= k_) {
      throw ContractError("fraction index " + std::to_string(indices_[i]) +
                          " is outside [0, " + std::to_string(k_) + ")");
    }
    if (i > 0 && indices_[i] == indices_[i - 1]) {
      throw ContractError("fraction lists point " + std::to_string(indices_[i]) +
                          " twice");
    }
    mask_[indices_[i] / 64] |= std::uint64_t{1} << (indices_[i] % 64);
  }
}

Fraction Fraction::from_indicator(std::span<const std::uint8_t> y) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y[j] > 1) throw ContractError("indicator entries must be 0 or 1");
    if (y[j] == 1) idx.push_back(j);
  }
  return Fraction(y.size(), std::move(idx));
}

std::vector<std::uint8_t> Fraction::indicator() const {
  std::vector<std::uint8_t> y(k_, 0);
  for (std::size_t j : indices_) y[j] = 1;
  return y;
}

std::string Fraction::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(indices_[i]);
  }
  return out;
}

Fraction parse_fraction(std::string_view text, std::size_t k) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '"')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '"' ||
                           text.back() == '\n' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  const bool binary = text.size() == k && k > 1 &&
                      text.find_first_not_of("01") == std::string_view::npos;
  if (binary) {
    std::vector<std::uint8_t> y(k);
    for (std::size_t j = 0; j < k; ++j) y[j] = text[j] == '1';
    return Fraction::from_indicator(y);
  }
  std::vector<std::size_t> idx;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) {
      if (text.empty()) break;
      throw ParseError("empty entry in fraction \"" + std::string(text) + "\"");
    }
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("bad fraction index \"" + std::string(tok) + "\"");
    }
    idx.push_back(value);
    pos = end + 1;
  }
  return Fraction(k, std::move(idx));
}

BigInt fraction_determinant(const ModelMatrix& x, const Fraction& f) {
  if (f.ambient_dimension() != x.rows()) {
    throw ContractError("fraction has K = " + std::to_string(f.ambient_dimension()) +
                        " but the design has " + std::to_string(x.rows()) + " points");
  }
  if (f.cardinality() != x.cols()) {
    throw ContractError("fraction has " + std::to_string(f.cardinality()) +
                        " points but the model has p = " + std::to_string(x.cols()));
  }
  return determinant(x.submatrix(f.indices()));
}

bool is_saturated_det(const ModelMatrix& x, const Fraction& f) {
  return !is_zero(fraction_determinant(x, f));
}

namespace {

bool contains_no_support(const CircuitBasis& basis, std::span<const std::uint64_t> fmask) {
  const std::size_t words = basis.words_per_row();
  for (std::uint32_t i : basis.by_support_size()) {
    const std::span<const std::uint64_t> m = basis.mask(i);
    bool inside = true;
    for (std::size_t w = 0; w < words && inside; ++w) inside = (m[w] & ~fmask[w]) == 0;
    if (inside) return false;
  }
  return true;
}

void fill_mask(std::span<const std::size_t> combo, std::vector<std::uint64_t>& mask) {
  std::fill(mask.begin(), mask.end(), 0);
  for (std::size_t j : combo) mask[j / 64] |= std::uint64_t{1} << (j % 64);
}

}  // namespace

bool is_saturated_circuits(const CircuitBasis& basis, const Fraction& f) {
  if (basis.ambient_dimension() != f.ambient_dimension()) {
    throw ContractError("circuit basis has K = " +
                        std::to_string(basis.ambient_dimension()) +
                        " but the fraction has K = " +
                        std::to_string(f.ambient_dimension()));
  }
  return contains_no_support(basis, f.mask());
}

bool is_saturated_circuits(const ModelMatrix& x, const CircuitBasis& basis,
                           const Fraction& f) {
  if (f.cardinality() != x.cols()) {
    throw ContractError("fraction has " + std::to_string(f.cardinality()) +
                        " points but the model has p = " + std::to_string(x.cols()));
  }
  return is_saturated_circuits(basis, f);
}

void check_enumeration_budget(std::size_t k, std::size_t p, const EnumerationOptions& options) {
  const std::uint64_t total = binomial(k, p);
  if (static_cast<double>(total) > options.budget) {
    std::ostringstream msg;
    msg << "enumerating C(" << k << ", " << p << ") = "
        << (total == kSaturated ? std::string("overflow") : std::to_string(total))
        << " subsets exceeds the enumeration budget of " << options.budget
        << "; use the search subcommand to sample saturated fractions";
    throw ResourceError(msg.str());
  }
}

std::size_t for_each_saturated(const ModelMatrix& x, const CircuitBasis& basis,
                               const EnumerationOptions& options,
                               const std::function<void(const Fraction&)>& emit) {
  const std::size_t k = x.rows();
  const std::size_t p = x.cols();
  if (basis.ambient_dimension() != k) {
    throw ContractError("circuit basis does not match the design size");
  }
  check_enumeration_budget(k, p, options);
  const std::uint64_t total = binomial(k, p);
  std::size_t count = 0;
  std::vector<std::size_t> combo(p);
  std::vector<std::uint64_t> mask(basis.words_per_row());

  if (options.jobs <= 1) {
    for (std::size_t i = 0; i < p; ++i) combo[i] = i;
    do {
      fill_mask(combo, mask);
      if (contains_no_support(basis, mask)) {
        emit(Fraction(k, combo));
        ++count;
      }
    } while (next_combination(combo, k));
    return count;
  }

  // Blocks of ranks are tested in parallel, then emitted in rank order.
  constexpr std::uint64_t kBlock = 1 << 16;
  std::vector<std::uint8_t> flags;
  for (std::uint64_t lo = 0; lo < total; lo += kBlock) {
    const std::uint64_t hi = std::min(total, lo + kBlock);
    flags.assign(hi - lo, 0);
#pragma omp parallel num_threads(options.jobs)
    {
      const auto nthreads = static_cast<std::uint64_t>(omp_get_num_threads());
      const auto tid = static_cast<std::uint64_t>(omp_get_thread_num());
      const std::uint64_t span_len = hi - lo;
      const std::uint64_t begin = lo + span_len * tid / nthreads;
      const std::uint64_t end = lo + span_len * (tid + 1) / nthreads;
      if (begin < end) {
        std::vector<std::size_t> c(p);
        std::vector<std::uint64_t> m(basis.words_per_row());
        unrank_combination(k, begin, c);
        for (std::uint64_t r = begin; r < end; ++r) {
          fill_mask(c, m);
          flags[r - lo] = contains_no_support(basis, m) ? 1 : 0;
          next_combination(c, k);
        }
      }
    }
    unrank_combination(k, lo, combo);
    for (std::uint64_t r = lo; r < hi; ++r) {
      if (flags[r - lo]) {
        emit(Fraction(k, combo));
        ++count;
      }
      next_combination(combo, k);
    }
  }
  return count;
}

std::vector<Fraction> enumerate_saturated(const ModelMatrix& x,
                                          const CircuitBasis& basis,
                                          const EnumerationOptions& options) {
  std::vector<Fraction> out;
  for_each_saturated(x, basis, options, [&](const Fraction& f) { out.push_back(f); });
  return out;
}

}  // namespace circuit_doe
