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

#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "circuit_doe/circuits.hpp"
#include "circuit_doe/design.hpp"
#include "circuit_doe/error.hpp"
#include "circuit_doe/search.hpp"

namespace cd = circuit_doe;

namespace {

struct Fixture {
  cd::ModelMatrix x = cd::build_model_matrix(cd::DesignSpec::no_m_way({2, 2, 2, 2}, 3));
  cd::CircuitBasis basis = cd::compute_circuits(x);
};

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("restart seeds are deterministic and distinct") {
    CHECK(cd::restart_seed(0, 3) == cd::restart_seed(0, 3));
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(cd::restart_seed(42, i));
    CHECK(seen.size() == 1000);
    CHECK(cd::restart_seed(1, 0) != cd::restart_seed(2, 0));
  }

  TEST_CASE("random saturated fractions are saturated and reproducible") {
    Fixture fx;
    const oracle::Rows rows = oracle::rows_of(fx.x);
    for (std::uint64_t s = 0; s < 50; ++s) {
      const cd::Fraction f = cd::random_saturated(fx.x, fx.basis, s);
      CHECK(f.cardinality() == 11);
      CHECK(oracle::det(rows, f.indices()) != 0);
      CHECK(cd::random_saturated(fx.x, fx.basis, s) == f);
    }
  }

  TEST_CASE("results are identical for 1 and 4 threads") {
    Fixture fx;
    cd::SearchConfig c;
    c.restarts = 60;
    c.master_seed = 9;
    const auto a = cd::exchange_search(fx.x, fx.basis, c);
    c.jobs = 4;
    const auto b = cd::exchange_search(fx.x, fx.basis, c);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].fraction == b[i].fraction);
      CHECK(a[i].restart == b[i].restart);
      CHECK(a[i].hits == b[i].hits);
      CHECK(a[i].evaluation.d_y == b[i].evaluation.d_y);
    }
  }

  TEST_CASE("max_passes = 0 returns the random starts") {
    Fixture fx;
    cd::SearchConfig c;
    c.restarts = 10;
    c.master_seed = 3;
    c.max_passes = 0;
    c.dedupe = false;
    const auto results = cd::exchange_search(fx.x, fx.basis, c);
    REQUIRE(results.size() == 10);
    for (const auto& r : results) {
      CHECK(r.fraction == cd::random_saturated(fx.x, fx.basis, cd::restart_seed(3, r.restart)));
      CHECK(r.trajectory.size() == 1);
    }
  }

  TEST_CASE("trajectories increase strictly and end at a swap-local optimum") {
    Fixture fx;
    const oracle::Rows rows = oracle::rows_of(fx.x);
    cd::SearchConfig c;
    c.restarts = 8;
    c.master_seed = 1;
    c.dedupe = false;
    const auto results = cd::exchange_search(fx.x, fx.basis, c);
    for (std::size_t i = 1; i < results.size(); ++i) {
      CHECK(results[i - 1].evaluation.d_y >= results[i].evaluation.d_y);
    }
    for (const auto& r : results) {
      for (std::size_t t = 1; t < r.trajectory.size(); ++t) {
        CHECK(r.trajectory[t] > r.trajectory[t - 1]);
      }
      CHECK(r.trajectory.back() == r.evaluation.d_y);
      const mpz_class best = abs(oracle::det(rows, r.fraction.indices()));
      for (std::size_t out = 0; out < 11; ++out) {
        for (std::size_t in = 0; in < 16; ++in) {
          if (r.fraction.contains(in)) continue;
          std::vector<std::size_t> swapped = r.fraction.indices();
          swapped[out] = in;
          CHECK(abs(oracle::det(rows, swapped)) <= best);
        }
      }
    }
  }

  TEST_CASE("dedupe counts hits") {
    Fixture fx;
    cd::SearchConfig c;
    c.restarts = 40;
    const auto results = cd::exchange_search(fx.x, fx.basis, c);
    std::size_t hits = 0;
    std::set<cd::Fraction> distinct;
    for (const auto& r : results) {
      hits += r.hits;
      distinct.insert(r.fraction);
    }
    CHECK(hits == 40);
    CHECK(distinct.size() == results.size());
    c.restarts = 0;
    CHECK_THROWS_AS(cd::exchange_search(fx.x, fx.basis, c), cd::ContractError);
  }
}
