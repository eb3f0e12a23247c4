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

#include "circuit_doe/circuits.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include <omp.h>

#include "circuit_doe/error.hpp"
#include "circuit_doe/logging.hpp"

namespace circuit_doe {

namespace {

template <class Scalar>
bool all_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Scalar& x) { return is_zero(x); });
}

template <class Scalar>
std::size_t first_nonzero(std::span<const Scalar> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_zero(v[i])) return i;
  }
  return v.size();
}

// Canonical circuit from a sparse vector with increasing indices.
template <class Scalar>
Circuit canonical_from_sparse(std::size_t k,
                              std::span<const std::uint32_t> indices,
                              std::vector<Scalar> values) {
  make_primitive<Scalar>(values);
  const bool flip = sign_of(values.front()) < 0;
  Circuit c;
  c.coeffs.assign(k, 0);
  c.support.assign(indices.begin(), indices.end());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const BigInt v = flip ? BigInt(-to_bigint(values[i])) : to_bigint(values[i]);
    if (!v.fits_slong_p()) {
      throw ValidationError("circuit coefficient exceeds the int64 range");
    }
    c.coeffs[indices[i]] = static_cast<std::int64_t>(v.get_si());
  }
  return c;
}

// Independent-set DFS over the columns of A. A circuit C is reported once,
// from the node I = C \ {max C}: the residual of max C against span(A_I) is
// zero and every coefficient of the dependency is nonzero.
//
// Each residual row holds [v (p entries) | t (p slots) | own]: the invariant
// is v = own * a_j + sum_s t_s * a_{I_s}.
template <class Scalar>
class PrimalSearch {
 public:
  PrimalSearch(const Matrix<BigInt>& a, std::size_t rank)
      : p_(a.rows()), k_(a.cols()), rank_(rank), width_(2 * p_ + 1),
        levels_(rank + 1, std::vector<Scalar>(k_ * width_)) {
    for (std::size_t j = 0; j < k_; ++j) {
      Scalar* row = levels_[0].data() + j * width_;
      for (std::size_t i = 0; i < p_; ++i) row[i] = scalar_from<Scalar>(a(i, j));
      row[width_ - 1] = scalar_from<Scalar>(1);
    }
  }

  // Zero columns are circuits of size one.
  void run_root(std::vector<Circuit>& out) {
    for (std::size_t j = 0; j < k_; ++j) {
      if (all_zero(v_of(0, j))) {
        const std::uint32_t idx = static_cast<std::uint32_t>(j);
        out.push_back(canonical_from_sparse<Scalar>(
            k_, std::span(&idx, 1), {scalar_from<Scalar>(1)}));
      }
    }
  }

  // Subtree of independent sets whose smallest element is `first`.
  void run_branch(std::size_t first, std::vector<Circuit>& out) {
    if (rank_ == 0 || all_zero(v_of(0, first))) return;
    chosen_.assign(1, static_cast<std::uint32_t>(first));
    extend(0, first);
    descend(1, out);
  }

 private:
  std::span<Scalar> row_of(std::size_t depth, std::size_t j) {
    return std::span<Scalar>(levels_[depth]).subspan(j * width_, width_);
  }
  std::span<const Scalar> v_of(std::size_t depth, std::size_t j) {
    return std::span<const Scalar>(levels_[depth]).subspan(j * width_, p_);
  }

  // Level depth + 1 residuals for every l > pivot, eliminating with the
  // residual of `pivot` at level depth.
  void extend(std::size_t depth, std::size_t pivot) {
    const std::span<Scalar> e = row_of(depth, pivot);
    const std::size_t c = first_nonzero(std::span<const Scalar>(e.data(), p_));
    const Scalar pi = e[c];
    const Scalar e_own = e[width_ - 1];
    for (std::size_t l = pivot + 1; l < k_; ++l) {
      const std::span<Scalar> src = row_of(depth, l);
      const std::span<Scalar> dst = row_of(depth + 1, l);
      const Scalar beta = src[c];
      if (is_zero(beta)) {
        std::copy(src.begin(), src.end(), dst.begin());
        continue;
      }
      for (std::size_t i = 0; i < p_; ++i) dst[i] = pi * src[i] - beta * e[i];
      for (std::size_t s = 0; s < depth; ++s) {
        dst[p_ + s] = pi * src[p_ + s] - beta * e[p_ + s];
      }
      dst[p_ + depth] = -(beta * e_own);
      for (std::size_t s = depth + 1; s < p_; ++s) dst[p_ + s] = scalar_from<Scalar>(0);
      dst[width_ - 1] = pi * src[width_ - 1];
      make_primitive<Scalar>(dst);
    }
  }

  void descend(std::size_t depth, std::vector<Circuit>& out) {
    const std::size_t last = chosen_.back();
    for (std::size_t l = last + 1; l < k_; ++l) {
      if (!all_zero(v_of(depth, l))) continue;
      const std::span<Scalar> r = row_of(depth, l);
      bool full = true;
      for (std::size_t s = 0; s < depth && full; ++s) full = !is_zero(r[p_ + s]);
      if (!full) continue;
      std::vector<std::uint32_t> idx(chosen_);
      idx.push_back(static_cast<std::uint32_t>(l));
      std::vector<Scalar> vals(r.begin() + p_, r.begin() + p_ + depth);
      vals.push_back(r[width_ - 1]);
      out.push_back(canonical_from_sparse<Scalar>(k_, idx, std::move(vals)));
    }
    if (depth == rank_) return;
    for (std::size_t l = last + 1; l < k_; ++l) {
      if (all_zero(v_of(depth, l))) continue;
      extend(depth, l);
      chosen_.push_back(static_cast<std::uint32_t>(l));
      descend(depth + 1, out);
      chosen_.pop_back();
    }
  }

  std::size_t p_;
  std::size_t k_;
  std::size_t rank_;
  std::size_t width_;
  std::vector<std::vector<Scalar>> levels_;
  std::vector<std::uint32_t> chosen_;
};

// Flat enumeration on the rows b_k of a kernel basis N (K x d). Every
// circuit is f = N y with y normal to a hyperplane spanned by rows of N; its
// support is the set of rows outside that hyperplane. Each flat is visited
// once, from its greedy (lexicographically first) basis: an element skipped
// while outside the current span must stay outside every descendant's span.
//
// Residual rows hold [v (d entries) | alpha], v = alpha * b_k + (span of the
// chosen rows).
template <class Scalar>
class FlatSearch {
 public:
  explicit FlatSearch(const Matrix<BigInt>& kernel)
      : k_(kernel.rows()), d_(kernel.cols()), width_(d_ + 1),
        levels_(d_ == 0 ? 1 : d_, std::vector<Scalar>(k_ * width_)),
        pivots_(d_ == 0 ? 0 : d_ - 1) {
    for (std::size_t j = 0; j < k_; ++j) {
      Scalar* row = levels_[0].data() + j * width_;
      for (std::size_t i = 0; i < d_; ++i) row[i] = scalar_from<Scalar>(kernel(j, i));
      row[d_] = scalar_from<Scalar>(1);
    }
  }

  // A one-dimensional kernel is its own single circuit.
  void run_root(std::vector<Circuit>& out) {
    if (d_ == 1) emit(0, out);
  }

  void run_branch(std::size_t first, std::vector<Circuit>& out) {
    if (d_ < 2 || all_zero(v_of(0, first))) return;
    std::vector<std::uint32_t> forbidden;
    for (std::size_t j = 0; j < first; ++j) {
      if (!all_zero(v_of(0, j))) forbidden.push_back(static_cast<std::uint32_t>(j));
    }
    extend(0, first);
    if (!admissible(1, forbidden)) return;
    descend(1, first, forbidden, out);
  }

 private:
  std::span<Scalar> row_of(std::size_t rank, std::size_t j) {
    return std::span<Scalar>(levels_[rank]).subspan(j * width_, width_);
  }
  std::span<const Scalar> v_of(std::size_t rank, std::size_t j) {
    return std::span<const Scalar>(levels_[rank]).subspan(j * width_, d_);
  }

  void extend(std::size_t rank, std::size_t pivot) {
    const std::span<Scalar> e = row_of(rank, pivot);
    const std::size_t c = first_nonzero(std::span<const Scalar>(e.data(), d_));
    pivots_[rank] = c;
    const Scalar pi = e[c];
    for (std::size_t l = 0; l < k_; ++l) {
      const std::span<Scalar> src = row_of(rank, l);
      const std::span<Scalar> dst = row_of(rank + 1, l);
      const Scalar beta = src[c];
      if (is_zero(beta)) {
        std::copy(src.begin(), src.end(), dst.begin());
        continue;
      }
      for (std::size_t i = 0; i < d_; ++i) dst[i] = pi * src[i] - beta * e[i];
      dst[d_] = pi * src[d_];
      make_primitive<Scalar>(dst);
    }
  }

  bool admissible(std::size_t rank, std::span<const std::uint32_t> forbidden) {
    return std::none_of(forbidden.begin(), forbidden.end(), [&](std::uint32_t j) {
      return all_zero(v_of(rank, j));
    });
  }

  void descend(std::size_t rank, std::size_t last,
               const std::vector<std::uint32_t>& forbidden,
               std::vector<Circuit>& out) {
    if (rank + 1 == d_) {
      emit(rank, out);
      return;
    }
    std::vector<std::uint32_t> next = forbidden;
    for (std::size_t j = last + 1; j < k_; ++j) {
      if (all_zero(v_of(rank, j))) continue;
      extend(rank, j);
      if (admissible(rank + 1, next)) descend(rank + 1, j, next, out);
      next.push_back(static_cast<std::uint32_t>(j));
    }
  }

  // At rank d - 1 every residual lives on the one non-pivot coordinate, and
  // f_k is proportional to v_k / alpha_k.
  void emit(std::size_t rank, std::vector<Circuit>& out) {
    std::size_t free_col = 0;
    if (rank > 0) {
      std::vector<bool> used(d_, false);
      for (std::size_t r = 0; r < rank; ++r) used[pivots_[r]] = true;
      while (used[free_col]) ++free_col;
    }
    std::vector<std::uint32_t> support;
    BigInt lcm = 1;
    for (std::size_t j = 0; j < k_; ++j) {
      const std::span<Scalar> r = row_of(rank, j);
      if (is_zero(r[free_col])) continue;
      support.push_back(static_cast<std::uint32_t>(j));
      const BigInt alpha = to_bigint(r[d_]);
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), alpha.get_mpz_t());
    }
    std::vector<BigInt> values;
    values.reserve(support.size());
    for (std::uint32_t j : support) {
      const std::span<Scalar> r = row_of(rank, j);
      values.push_back(to_bigint(r[free_col]) * (lcm / to_bigint(r[d_])));
    }
    out.push_back(canonical_from_sparse<BigInt>(k_, support, std::move(values)));
  }

  std::size_t k_;
  std::size_t d_;
  std::size_t width_;
  std::vector<std::vector<Scalar>> levels_;
  std::vector<std::size_t> pivots_;
};

// Runs root plus one branch per ground element. jobs <= 1 is the serial
// reference path; otherwise branches are spread over OpenMP threads and
// concatenated in branch order.
template <class Engine, class Make>
std::vector<Circuit> run_branches(std::size_t k, int jobs, Make make) {
  std::vector<std::vector<Circuit>> per_branch(k + 1);
  if (jobs <= 1) {
    Engine engine = make();
    engine.run_root(per_branch[0]);
    for (std::size_t j = 0; j < k; ++j) engine.run_branch(j, per_branch[j + 1]);
  } else {
    std::exception_ptr failure;
#pragma omp parallel num_threads(jobs)
    {
      std::optional<Engine> engine;
      try {
        engine.emplace(make());
      } catch (...) {
#pragma omp critical(circuit_doe_failure)
        if (!failure) failure = std::current_exception();
      }
#pragma omp for schedule(dynamic, 1)
      for (std::size_t j = 0; j <= k; ++j) {
        if (!engine) continue;
        try {
          if (j == 0) {
            engine->run_root(per_branch[0]);
          } else {
            engine->run_branch(j - 1, per_branch[j]);
          }
        } catch (...) {
#pragma omp critical(circuit_doe_failure)
          if (!failure) failure = std::current_exception();
        }
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<Circuit> all;
  for (auto& part : per_branch) {
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return all;
}

template <template <class> class Engine, class Input>
std::vector<Circuit> run_exact(const Input& input, std::size_t k, int jobs,
                               auto&&... args) {
  try {
    return run_branches<Engine<CheckedInt64>>(
        k, jobs, [&] { return Engine<CheckedInt64>(input, args...); });
  } catch (const ArithmeticOverflow&) {
    log_message(LogLevel::kInfo, "int64 overflow in circuit search, retrying with GMP");
    return run_branches<Engine<BigInt>>(
        k, jobs, [&] { return Engine<BigInt>(input, args...); });
  }
}

double binomial_estimate(std::size_t n, std::size_t r) {
  if (r > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(r + 1.0) -
                             std::lgamma(n - r + 1.0)));
}

std::string strategy_name(CircuitStrategy s) {
  return s == CircuitStrategy::kPrimal ? "primal" : "kernel-side";
}

}  // namespace

Circuit Circuit::from_vector(std::span<const BigInt> v) {
  std::vector<std::uint32_t> idx;
  std::vector<BigInt> vals;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!is_zero(v[j])) {
      idx.push_back(static_cast<std::uint32_t>(j));
      vals.push_back(v[j]);
    }
  }
  if (idx.empty()) throw ValidationError("zero vector is not a circuit");
  return canonical_from_sparse<BigInt>(v.size(), idx, std::move(vals));
}

CircuitBasis::CircuitBasis(std::size_t k, std::vector<Circuit> circuits)
    : k_(k), words_((k + 63) / 64), circuits_(std::move(circuits)) {
  std::sort(circuits_.begin(), circuits_.end());
  for (std::size_t i = 0; i < circuits_.size(); ++i) {
    const Circuit& c = circuits_[i];
    if (c.coeffs.size() != k) {
      throw ValidationError("circuit length " + std::to_string(c.coeffs.size()) +
                            " does not match K = " + std::to_string(k));
    }
    if (i > 0 && circuits_[i - 1].support == c.support) {
      throw ValidationError("two circuits share the same support");
    }
  }
  const std::size_t l = circuits_.size();
  masks_.assign(l * words_, 0);
  b_.resize(l);
  std::vector<std::size_t> degree(k, 0);
  for (std::size_t i = 0; i < l; ++i) {
    b_[i] = static_cast<std::int64_t>(circuits_[i].support.size());
    for (std::uint32_t j : circuits_[i].support) {
      masks_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
      ++degree[j];
    }
  }
  by_size_.resize(l);
  std::iota(by_size_.begin(), by_size_.end(), 0U);
  std::stable_sort(by_size_.begin(), by_size_.end(), [&](std::uint32_t a, std::uint32_t b) {
    return b_[a] < b_[b];
  });
  incidence_start_.assign(k + 1, 0);
  for (std::size_t j = 0; j < k; ++j) incidence_start_[j + 1] = incidence_start_[j] + degree[j];
  incidence_.resize(incidence_start_[k]);
  std::vector<std::size_t> fill(incidence_start_.begin(), incidence_start_.end() - 1);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::uint32_t j : circuits_[i].support) {
      incidence_[fill[j]++] = static_cast<std::uint32_t>(i);
    }
  }
}

std::map<std::size_t, std::size_t> CircuitBasis::support_size_histogram() const {
  std::map<std::size_t, std::size_t> hist;
  for (const Circuit& c : circuits_) ++hist[c.support.size()];
  return hist;
}

CircuitStrategy resolve_strategy(std::size_t k, std::size_t rank) {
  return rank + 2 <= k - rank ? CircuitStrategy::kPrimal : CircuitStrategy::kKernel;
}

double circuit_work_estimate(std::size_t k, std::size_t rank) {
  const double primal = binomial_estimate(k, rank + 1);
  const double kernel = rank + 1 <= k ? binomial_estimate(k, k - rank - 1) : 0.0;
  return std::min(primal, kernel);
}

CircuitBasis compute_circuits(const Matrix<BigInt>& a, const CircuitOptions& options) {
  const std::size_t k = a.cols();
  const std::size_t rank = rank_of(a);
  const double work = circuit_work_estimate(k, rank);
  if (work > options.budget && !options.allow_long) {
    std::ostringstream msg;
    msg << "circuit computation needs about " << work
        << " candidate subsets, over the budget of " << options.budget
        << "; pass --allow-long or import a circuit file with --import";
    throw ResourceError(msg.str());
  }
  CircuitStrategy strategy = options.strategy;
  if (strategy == CircuitStrategy::kAuto) strategy = resolve_strategy(k, rank);
  log_message(LogLevel::kInfo, "computing circuits (" + strategy_name(strategy) +
                                   ", K=" + std::to_string(k) +
                                   ", rank=" + std::to_string(rank) + ")");

  std::vector<Circuit> found;
  if (strategy == CircuitStrategy::kPrimal) {
    found = run_exact<PrimalSearch>(a, k, options.jobs, rank);
  } else {
    const Matrix<BigInt> kernel = integer_kernel_basis(a);
    found = run_exact<FlatSearch>(kernel, k, options.jobs);
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end(),
                          [](const Circuit& x, const Circuit& y) {
                            return x.support == y.support;
                          }),
              found.end());
  log_message(LogLevel::kInfo, "found " + std::to_string(found.size()) + " circuits");
  return CircuitBasis(k, std::move(found));
}

CircuitBasis compute_circuits(const ModelMatrix& x, const CircuitOptions& options) {
  return compute_circuits(x.transpose_bigint(), options);
}

IndicatorData indicator_data(const CircuitBasis& basis) {
  IndicatorData data{Matrix<std::uint8_t>(basis.size(), basis.ambient_dimension()),
                     basis.support_sizes()};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::uint32_t j : basis[i].support) data.c(i, j) = 1;
  }
  return data;
}

namespace {

// Grows S column by column: every proper prefix must stay independent and
// the last column must close a dependency with all coefficients nonzero.
template <class Scalar>
bool circuit_support_check(const Matrix<BigInt>& a,
                           std::span<const std::uint32_t> support) {
  const std::size_t p = a.rows();
  const std::size_t n = support.size();
  if (n == 0 || n > p + 1) return false;
  // Rows: [v (p) | t (n)] with v = sum_s t_s a_{S_s}.
  std::vector<std::vector<Scalar>> rows;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<Scalar> r(p + n, scalar_from<Scalar>(0));
    for (std::size_t i = 0; i < p; ++i) r[i] = scalar_from<Scalar>(a(i, support[s]));
    r[p + s] = scalar_from<Scalar>(1);
    for (std::size_t e = 0; e < rows.size(); ++e) {
      const std::size_t c = pivot_cols[e];
      const Scalar beta = r[c];
      if (is_zero(beta)) continue;
      const Scalar pi = rows[e][c];
      for (std::size_t i = 0; i < p + n; ++i) r[i] = pi * r[i] - beta * rows[e][i];
      make_primitive<Scalar>(r);
    }
    const std::size_t c = first_nonzero(std::span<const Scalar>(r.data(), p));
    if (s + 1 < n) {
      if (c == p) return false;  // a proper subset is dependent
      rows.push_back(std::move(r));
      pivot_cols.push_back(c);
    } else {
      if (c != p) return false;  // S is independent
      for (std::size_t t = 0; t < n; ++t) {
        if (is_zero(r[p + t])) return false;
      }
    }
  }
  return true;
}

template <class Scalar>
bool in_kernel(const Matrix<BigInt>& a, const Circuit& c) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Scalar sum = scalar_from<Scalar>(0);
    for (std::uint32_t j : c.support) {
      sum = sum + scalar_from<Scalar>(a(i, j)) * scalar_from<Scalar>(c.coeffs[j]);
    }
    if (!is_zero(sum)) return false;
  }
  return true;
}

}  // namespace

bool is_circuit_support(const Matrix<BigInt>& a,
                        std::span<const std::uint32_t> support) {
  try {
    return circuit_support_check<CheckedInt64>(a, support);
  } catch (const ArithmeticOverflow&) {
    return circuit_support_check<BigInt>(a, support);
  }
}

void export_circuits(const CircuitBasis& basis, std::ostream& out) {
  out << basis.size() << ' ' << basis.ambient_dimension() << '\n';
  std::string line;
  for (const Circuit& c : basis.circuits()) {
    line.clear();
    for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
      if (j > 0) line += ' ';
      line += std::to_string(c.coeffs[j]);
    }
    line += '\n';
    out << line;
  }
}

void export_circuits(const CircuitBasis& basis, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  export_circuits(basis, out);
  if (!out) throw Error("failed writing " + path);
}

CircuitBasis import_circuits(std::istream& in, const Matrix<BigInt>& a) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("circuit file is empty");
  std::istringstream header(line);
  long long l = -1;
  long long k = -1;
  std::string extra;
  if (!(header >> l >> k) || (header >> extra) || l < 0 || k < 1) {
    throw ParseError("circuit file header must be \"L K\"");
  }
  if (static_cast<std::size_t>(k) != a.cols()) {
    throw ValidationError("circuit file has K = " + std::to_string(k) +
                          " but the model has " + std::to_string(a.cols()) +
                          " design points");
  }
  std::vector<Circuit> circuits;
  circuits.reserve(static_cast<std::size_t>(l));
  std::vector<BigInt> v(static_cast<std::size_t>(k));
  for (long long i = 0; i < l; ++i) {
    if (!std::getline(in, line)) {
      throw ParseError("circuit file ends after " + std::to_string(i) + " of " +
                       std::to_string(l) + " rows");
    }
    std::istringstream row(line);
    std::string token;
    std::size_t count = 0;
    while (count < v.size() && row >> token) {
      if (v[count].set_str(token, 10) != 0) {
        throw ParseError("row " + std::to_string(i + 1) + ": bad integer \"" +
                         token + "\"");
      }
      ++count;
    }
    if (count != v.size() || (row >> token)) {
      throw ParseError("row " + std::to_string(i + 1) + " does not have " +
                       std::to_string(k) + " entries");
    }
    Circuit c = Circuit::from_vector(v);
    bool ok;
    try {
      ok = in_kernel<CheckedInt64>(a, c);
    } catch (const ArithmeticOverflow&) {
      ok = in_kernel<BigInt>(a, c);
    }
    if (!ok) {
      throw ValidationError("row " + std::to_string(i + 1) +
                            " is not in the kernel of A");
    }
    if (!is_circuit_support(a, c.support)) {
      throw ValidationError("row " + std::to_string(i + 1) +
                            " does not have minimal support");
    }
    circuits.push_back(std::move(c));
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw ParseError("circuit file has more than " + std::to_string(l) + " rows");
    }
  }
  return CircuitBasis(a.cols(), std::move(circuits));
}

CircuitBasis import_circuits(const std::string& path, const Matrix<BigInt>& a) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open circuit file " + path);
  return import_circuits(in, a);
}

CircuitBasis import_circuits(const std::string& path, const ModelMatrix& x) {
  return import_circuits(path, x.transpose_bigint());
}

}  // namespace circuit_doe
