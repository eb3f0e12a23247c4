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

#ifndef CIRCUIT_DOE_CIRCUITS_HPP_
#define CIRCUIT_DOE_CIRCUITS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "circuit_doe/design.hpp"
#include "circuit_doe/exact.hpp"

namespace circuit_doe {

// A primitive kernel vector of A = X^t with minimal support. Canonical form:
// gcd of the entries is 1 and the first nonzero entry is positive.
struct Circuit {
  std::vector<std::int64_t> coeffs;
  std::vector<std::uint32_t> support;

  std::size_t support_size() const { return support.size(); }

  // Canonicalizes `v` (any nonzero integer vector). Throws ValidationError
  // when an entry does not fit in int64 after reduction.
  static Circuit from_vector(std::span<const BigInt> v);

  friend bool operator==(const Circuit&, const Circuit&) = default;
  // Support first, then coefficients.
  friend auto operator<=>(const Circuit& a, const Circuit& b) {
    if (auto c = a.support <=> b.support; c != 0) return c;
    return a.coeffs <=> b.coeffs;
  }
};

// The full set of circuits of A in canonical order, plus the derived
// containment structures: one bitset row of C_A per circuit and, per design
// point, the list of circuits whose support contains it.
class CircuitBasis {
 public:
  CircuitBasis() = default;
  // Sorts and checks that every circuit has length k and supports are
  // distinct (ValidationError otherwise).
  CircuitBasis(std::size_t k, std::vector<Circuit> circuits);

  std::size_t size() const { return circuits_.size(); }
  std::size_t ambient_dimension() const { return k_; }
  bool empty() const { return circuits_.empty(); }

  const std::vector<Circuit>& circuits() const { return circuits_; }
  const Circuit& operator[](std::size_t i) const { return circuits_[i]; }

  std::size_t words_per_row() const { return words_; }
  std::span<const std::uint64_t> mask(std::size_t i) const {
    return std::span<const std::uint64_t>(masks_).subspan(i * words_, words_);
  }
  // Circuit indices by increasing support size (ties in canonical order).
  std::span<const std::uint32_t> by_support_size() const { return by_size_; }
  // Indices of circuits whose support contains point j.
  std::span<const std::uint32_t> circuits_through(std::size_t j) const {
    return std::span<const std::uint32_t>(incidence_).subspan(
        incidence_start_[j], incidence_start_[j + 1] - incidence_start_[j]);
  }

  // b: support size per circuit.
  const std::vector<std::int64_t>& support_sizes() const { return b_; }
  std::map<std::size_t, std::size_t> support_size_histogram() const;

  friend bool operator==(const CircuitBasis& a, const CircuitBasis& b) {
    return a.k_ == b.k_ && a.circuits_ == b.circuits_;
  }

 private:
  std::size_t k_ = 0;
  std::size_t words_ = 0;
  std::vector<Circuit> circuits_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint32_t> by_size_;
  std::vector<std::size_t> incidence_start_;
  std::vector<std::uint32_t> incidence_;
  std::vector<std::int64_t> b_;
};

enum class CircuitStrategy {
  kAuto,
  // Minimal dependent column sets of A, grown from independent sets.
  kPrimal,
  // Hyperplanes spanned by the rows of a kernel basis of A.
  kKernel,
};

inline constexpr double kDefaultCircuitBudget = 5e7;

struct CircuitOptions {
  CircuitStrategy strategy = CircuitStrategy::kAuto;
  int jobs = 1;
  // Upper bound on min(C(K, r+1), C(K, K-r-1)), r = rank A.
  double budget = kDefaultCircuitBudget;
  bool allow_long = false;
};

// Primal when r + 1 <= K - r - 1, kernel-side otherwise.
CircuitStrategy resolve_strategy(std::size_t k, std::size_t rank);

// min(C(K, r+1), C(K, K-r-1)) as a floating estimate.
double circuit_work_estimate(std::size_t k, std::size_t rank);

// Circuits of an arbitrary integer matrix (columns are the ground set).
CircuitBasis compute_circuits(const Matrix<BigInt>& a,
                              const CircuitOptions& options = {});
// Circuits of A = X^t.
CircuitBasis compute_circuits(const ModelMatrix& x,
                              const CircuitOptions& options = {});

struct IndicatorData {
  Matrix<std::uint8_t> c;  // L x K, c(i, j) = 1 iff j in supp(f_i)
  std::vector<std::int64_t> b;
};
IndicatorData indicator_data(const CircuitBasis& basis);

// True iff `support` is a circuit support of `a`: rank(a_S) = |S| - 1 and
// the kernel of a_S has a vector with full support on S.
bool is_circuit_support(const Matrix<BigInt>& a,
                        std::span<const std::uint32_t> support);

// File format: "L K" header, then L lines of K integers separated by single
// spaces, newline-terminated.
void export_circuits(const CircuitBasis& basis, std::ostream& out);
void export_circuits(const CircuitBasis& basis, const std::string& path);

// Parses and canonicalizes circuits, then validates each as a circuit of
// `a`: ParseError on malformed text, ValidationError when a vector is not in
// the kernel or does not have minimal support.
CircuitBasis import_circuits(std::istream& in, const Matrix<BigInt>& a);
CircuitBasis import_circuits(const std::string& path, const Matrix<BigInt>& a);
CircuitBasis import_circuits(const std::string& path, const ModelMatrix& x);

}  // namespace circuit_doe

#endif  // CIRCUIT_DOE_CIRCUITS_HPP_
