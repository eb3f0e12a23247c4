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

#include <numeric>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "circuit_doe/circuits.hpp"
#include "circuit_doe/design.hpp"
#include "circuit_doe/error.hpp"

namespace cd = circuit_doe;

namespace {

cd::ModelMatrix model(std::vector<int> levels, int m,
                      cd::Coding coding = cd::Coding::kOrthogonalPolynomial) {
  return cd::build_model_matrix(cd::DesignSpec::no_m_way(std::move(levels), m, coding));
}

cd::Matrix<cd::BigInt> row_matrix(std::vector<std::vector<long>> rows) {
  cd::Matrix<cd::BigInt> a(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(i, j) = rows[i][j];
  }
  return a;
}

// gcd 1, first nonzero entry positive, support equal to the nonzero set.
bool canonical(const cd::Circuit& c) {
  std::int64_t g = 0;
  std::vector<std::uint32_t> nz;
  for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
    if (c.coeffs[j] != 0) {
      g = std::gcd(g, c.coeffs[j]);
      nz.push_back(static_cast<std::uint32_t>(j));
    }
  }
  return g == 1 && !nz.empty() && c.coeffs[nz[0]] > 0 && nz == c.support;
}

void check_against_brute_force(const cd::ModelMatrix& x) {
  const oracle::Rows rows = oracle::rows_of(x);
  const cd::CircuitBasis basis = cd::compute_circuits(x);
  const auto want = oracle::brute_force_circuit_supports(rows);
  std::set<std::vector<std::uint32_t>> got;
  for (const cd::Circuit& c : basis.circuits()) {
    CHECK(canonical(c));
    CHECK(oracle::in_left_kernel(rows, c.coeffs));
    got.insert(c.support);
  }
  CHECK(got.size() == basis.size());
  CHECK(got == want);
}

}  // namespace

TEST_SUITE("circuits") {
  TEST_CASE("A = (1 1) has the single circuit (1, -1)") {
    const cd::CircuitBasis basis = cd::compute_circuits(row_matrix({{1, 1}}));
    REQUIRE(basis.size() == 1);
    CHECK(basis[0].coeffs == std::vector<std::int64_t>{1, -1});
    CHECK(basis[0].support == std::vector<std::uint32_t>{0, 1});
  }

  TEST_CASE("import validates kernel membership, minimality and shape") {
    const auto a = row_matrix({{1, 1}});
    std::istringstream good("1 2\n1 -1\n");
    CHECK(cd::import_circuits(good, a).size() == 1);
    std::istringstream neg("1 2\n-1 1\n");
    CHECK(cd::import_circuits(neg, a)[0].coeffs == std::vector<std::int64_t>{1, -1});
    std::istringstream not_kernel("1 2\n1 1\n");
    CHECK_THROWS_AS(cd::import_circuits(not_kernel, a), cd::ValidationError);
    std::istringstream bad_len("1 2\n1 -1 0\n");
    CHECK_THROWS_AS(cd::import_circuits(bad_len, a), cd::ParseError);
    std::istringstream bad_header("one two\n");
    CHECK_THROWS_AS(cd::import_circuits(bad_header, a), cd::ParseError);
    std::istringstream wrong_k("1 3\n1 -1 0\n");
    CHECK_THROWS_AS(cd::import_circuits(wrong_k, a), cd::ValidationError);
    std::istringstream missing("2 2\n1 -1\n");
    CHECK_THROWS(cd::import_circuits(missing, a));

    const auto a3 = row_matrix({{1, 1, 1}});
    std::istringstream not_minimal("1 3\n2 -1 -1\n");
    CHECK_THROWS_AS(cd::import_circuits(not_minimal, a3), cd::ValidationError);
    std::istringstream dup("2 3\n1 -1 0\n-1 1 0\n");
    CHECK_THROWS_AS(cd::import_circuits(dup, a3), cd::ValidationError);
  }

  TEST_CASE("2^4 two-factor model: export header and round trip") {
    const cd::ModelMatrix x = model({2, 2, 2, 2}, 3);
    const cd::CircuitBasis basis = cd::compute_circuits(x);
    CHECK(basis.size() == 140);
    std::ostringstream out;
    cd::export_circuits(basis, out);
    const std::string text = out.str();
    CHECK(text.substr(0, text.find('\n')) == "140 16");
    std::istringstream in(text);
    CHECK(cd::import_circuits(in, x.transpose_bigint()) == basis);
    const auto hist = basis.support_size_histogram();
    CHECK(hist == std::map<std::size_t, std::size_t>{{8, 20}, {10, 40}, {12, 80}});
  }

  TEST_CASE("supports are minimal: brute-force oracle on K <= 12") {
    check_against_brute_force(model({2, 2, 2}, 2));
    check_against_brute_force(model({2, 2, 2}, 3));
    check_against_brute_force(model({3, 3}, 2));
    check_against_brute_force(model({3, 4}, 2));
    check_against_brute_force(model({2, 2, 3}, 2));
    check_against_brute_force(model({2, 2, 3}, 3));
    check_against_brute_force(model({2, 6}, 2));
    check_against_brute_force(model({3, 3}, 2, cd::Coding::kEffects));
  }

  TEST_CASE("a full model has no circuits") {
    CHECK(cd::compute_circuits(model({3, 3}, 3)).empty());
  }

  TEST_CASE("primal and kernel-side strategies agree") {
    for (const auto& [levels, m] : std::vector<std::pair<std::vector<int>, int>>{
             {{2, 2, 2}, 2}, {{2, 2, 2}, 3}, {{2, 2, 2, 2}, 2}, {{2, 2, 2, 2}, 3}, {{3, 4}, 2}}) {
      const cd::ModelMatrix x = model(levels, m);
      cd::CircuitOptions primal;
      primal.strategy = cd::CircuitStrategy::kPrimal;
      cd::CircuitOptions kernel;
      kernel.strategy = cd::CircuitStrategy::kKernel;
      const cd::CircuitBasis a = cd::compute_circuits(x, primal);
      const cd::CircuitBasis b = cd::compute_circuits(x, kernel);
      CHECK(a == b);
      primal.jobs = 4;
      kernel.jobs = 4;
      CHECK(cd::compute_circuits(x, primal) == a);
      CHECK(cd::compute_circuits(x, kernel) == a);
    }
  }

  TEST_CASE("coding invariance on 3-level factors") {
    // Monomial coding 1, x, x^2 per factor spans the same column space.
    auto monomial = [](const std::vector<int>& levels) {
      const auto pts = oracle::lex_points(levels);
      std::vector<std::vector<long>> a;
      a.emplace_back(pts.size(), 1);
      for (std::size_t f = 0; f < levels.size(); ++f) {
        for (int power = 1; power < levels[f]; ++power) {
          std::vector<long> row;
          for (const auto& p : pts) {
            long v = 1;
            for (int t = 0; t < power; ++t) v *= p[f];
            row.push_back(v);
          }
          a.push_back(row);
        }
      }
      return row_matrix(a);
    };
    for (const std::vector<int>& levels : {std::vector<int>{3, 3}, std::vector<int>{3, 3, 2}}) {
      const cd::CircuitBasis orth = cd::compute_circuits(model(levels, 2));
      const cd::CircuitBasis eff = cd::compute_circuits(model(levels, 2, cd::Coding::kEffects));
      const cd::CircuitBasis mono = cd::compute_circuits(monomial(levels));
      CHECK(!orth.empty());
      CHECK(orth == eff);
      CHECK(orth == mono);
    }
  }

  TEST_CASE("strategy choice and the work budget") {
    CHECK(cd::resolve_strategy(32, 6) == cd::CircuitStrategy::kPrimal);
    CHECK(cd::resolve_strategy(16, 11) == cd::CircuitStrategy::kKernel);
    const cd::ModelMatrix x = model({3, 3, 4}, 3);
    CHECK(cd::circuit_work_estimate(36, 24) > cd::kDefaultCircuitBudget);
    CHECK_THROWS_AS(cd::compute_circuits(x), cd::ResourceError);
  }

  TEST_CASE("incidence lists, indicator matrix and support test") {
    const cd::ModelMatrix x = model({2, 2, 2, 2}, 3);
    const cd::CircuitBasis basis = cd::compute_circuits(x);
    const cd::IndicatorData data = cd::indicator_data(basis);
    const auto a = x.transpose_bigint();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::int64_t row_sum = 0;
      for (std::size_t j = 0; j < 16; ++j) row_sum += data.c(i, j);
      CHECK(row_sum == data.b[i]);
      CHECK(cd::is_circuit_support(a, basis[i].support));
    }
    for (std::size_t j = 0; j < 16; ++j) {
      std::size_t through = 0;
      for (std::size_t i = 0; i < basis.size(); ++i) through += data.c(i, j);
      CHECK(basis.circuits_through(j).size() == through);
    }
    const std::vector<std::uint32_t> everything{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
    CHECK_FALSE(cd::is_circuit_support(a, everything));
  }
}
