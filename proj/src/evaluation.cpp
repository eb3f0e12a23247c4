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

#include "circuit_doe/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <omp.h>

#include "circuit_doe/error.hpp"

namespace circuit_doe {

namespace {

Evaluation evaluate_impl(const ModelMatrix& x, const CircuitBasis& basis,
                         const Fraction& f, bool keep_b_y) {
  if (basis.ambient_dimension() != x.rows()) {
    throw ContractError("circuit basis does not match the design size");
  }
  const BigInt det = fraction_determinant(x, f);

  Evaluation ev;
  std::vector<std::int64_t> b_y = intersection_counts(basis, f);
  const std::vector<std::int64_t>& b = basis.support_sizes();
  for (std::size_t i = 0; i < b_y.size(); ++i) {
    const std::int64_t slack = b[i] - b_y[i];
    ev.g1 += slack;
    ev.g2 += slack * slack;
    ev.g3 = std::max(ev.g3, b_y[i]);
    ++ev.b_y_histogram[b_y[i]];
    ++ev.slack_histogram[slack];
  }
  ev.d_y = det * det;
  ev.e_y = d_efficiency(ev.d_y, x.cols());
  if (keep_b_y) ev.b_y = std::move(b_y);
  return ev;
}

}  // namespace

Evaluation evaluate(const ModelMatrix& x, const CircuitBasis& basis, const Fraction& f) {
  return evaluate_impl(x, basis, f, true);
}

Evaluation evaluate_summary(const ModelMatrix& x, const CircuitBasis& basis,
                            const Fraction& f) {
  return evaluate_impl(x, basis, f, false);
}

std::vector<Evaluation> evaluate_batch(const ModelMatrix& x, const CircuitBasis& basis,
                                       std::span<const Fraction> fractions, int jobs) {
  std::vector<Evaluation> out(fractions.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < fractions.size(); ++i) {
      out[i] = evaluate_summary(x, basis, fractions[i]);
    }
    return out;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs)
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    try {
      out[i] = evaluate_summary(x, basis, fractions[i]);
    } catch (...) {
#pragma omp critical(circuit_doe_eval_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<std::int64_t> intersection_counts(const CircuitBasis& basis, const Fraction& f) {
  if (basis.ambient_dimension() != f.ambient_dimension()) {
    throw ContractError("circuit basis does not match the fraction size");
  }
  std::vector<std::int64_t> counts(basis.size(), 0);
  for (std::size_t j : f.indices()) {
    for (std::uint32_t i : basis.circuits_through(j)) ++counts[i];
  }
  return counts;
}

FrequencyTable frequency_table(std::span<const std::int64_t> values) {
  FrequencyTable table;
  for (std::int64_t v : values) ++table[v];
  return table;
}

BigInt gram_determinant(const ModelMatrix& x, const Fraction& f) {
  const Matrix<BigInt> xf = x.submatrix(f.indices());
  Matrix<BigInt> gram(xf.cols(), xf.cols());
  for (std::size_t a = 0; a < xf.cols(); ++a) {
    for (std::size_t b = 0; b < xf.cols(); ++b) {
      BigInt s = 0;
      for (std::size_t r = 0; r < xf.rows(); ++r) s += xf(r, a) * xf(r, b);
      gram(a, b) = s;
    }
  }
  return determinant(std::move(gram));
}

double d_efficiency(const BigInt& d, std::size_t p) {
  if (sgn(d) == 0 || p == 0) return 0.0;
  const double root = std::exp(log_abs(d) / static_cast<double>(p));
  return root / static_cast<double>(p) * 100.0;
}

std::string format_efficiency(double e) {
  const std::int64_t key = efficiency_key(e);
  const std::int64_t mag = key < 0 ? -key : key;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", key < 0 ? "-" : "",
                static_cast<long long>(mag / 100), static_cast<long long>(mag % 100));
  return buf;
}

std::int64_t efficiency_key(double e) { return std::llround(e * 100.0); }

PointCircuitCount per_point_circuit_count(const CircuitBasis& basis) {
  PointCircuitCount out;
  const std::size_t k = basis.ambient_dimension();
  out.column_sums.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    out.column_sums[j] = static_cast<std::int64_t>(basis.circuits_through(j).size());
  }
  if (k > 0 && std::all_of(out.column_sums.begin(), out.column_sums.end(),
                           [&](std::int64_t v) { return v == out.column_sums[0]; })) {
    out.q = out.column_sums[0];
  }
  return out;
}

}  // namespace circuit_doe
