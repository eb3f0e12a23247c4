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

#ifndef CIRCUIT_DOE_DESIGN_HPP_
#define CIRCUIT_DOE_DESIGN_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "circuit_doe/exact.hpp"

namespace circuit_doe {

// A model term: strictly increasing factor indices. Empty is the intercept.
using Term = std::vector<int>;

inline constexpr std::size_t kDefaultRowCap = std::size_t{1} << 20;

// Per-factor contrast coding. Both span the same column space, so circuits
// and the ranking of fractions by D_Y do not depend on it; E_Y magnitudes do.
enum class Coding {
  // Orthogonal polynomials on equally spaced scores, cleared to integers.
  kOrthogonalPolynomial,
  // Sum-to-zero: column i is +1 at level i and -1 at the last level.
  kEffects,
};

// Factor level counts plus the list of model terms.
class DesignSpec {
 public:
  // Adds the intercept when missing; throws SpecError on invalid input.
  DesignSpec(std::vector<int> levels, std::vector<Term> terms,
             Coding coding = Coding::kOrthogonalPolynomial);

  // All interactions of order < m (the no-m-way interaction model).
  static DesignSpec no_m_way(std::vector<int> levels, int m,
                             Coding coding = Coding::kOrthogonalPolynomial);

  const std::vector<int>& levels() const { return levels_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::optional<int> interaction_bound() const { return m_; }
  Coding coding() const { return coding_; }

  std::size_t num_factors() const { return levels_.size(); }
  // K = product of level counts.
  std::size_t num_points() const;
  // p = sum over terms of prod (s_i - 1).
  std::size_t num_parameters() const;

 private:
  std::vector<int> levels_;
  std::vector<Term> terms_;
  std::optional<int> m_;
  Coding coding_ = Coding::kOrthogonalPolynomial;
};

// Accepts {"levels":[...],"model":"interactions<3"}, {"levels":[...],"m":3}
// or {"levels":[...],"terms":[[],[0],...]}. "main" and "full" are model
// aliases for m = 2 and m = n + 1. Optional "coding": "orthogonal" (default)
// or "effects".
DesignSpec parse_design_spec(std::string_view json_text);
DesignSpec load_design_spec(const std::string& path);

struct DesignPoint {
  std::vector<int> coords;
  friend bool operator==(const DesignPoint&, const DesignPoint&) = default;
  friend auto operator<=>(const DesignPoint&, const DesignPoint&) = default;
};

// Lexicographic grid, last factor fastest.
std::vector<DesignPoint> build_full_factorial(std::span<const int> levels,
                                              std::size_t cap = kDefaultRowCap);

// Orthogonal polynomial contrasts on scores 0..s-1, each scaled to a
// primitive integer vector whose value at the top level is positive. Returns
// s - 1 columns of length s, by increasing degree.
std::vector<std::vector<std::int64_t>> orthogonal_contrasts(int levels);

// s - 1 columns of sum-to-zero contrasts.
std::vector<std::vector<std::int64_t>> effects_contrasts(int levels);

// K x p integer model matrix over the full factorial. Column 0 is the
// intercept; each term contributes the products of its factors' contrast
// columns, first factor's contrast index varying slowest.
class ModelMatrix {
 public:
  ModelMatrix(DesignSpec spec, std::vector<DesignPoint> points,
              std::vector<std::string> labels,
              std::vector<std::int64_t> entries);

  std::size_t rows() const { return points_.size(); }
  std::size_t cols() const { return labels_.size(); }

  std::int64_t operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols() + c];
  }
  std::span<const std::int64_t> row(std::size_t r) const {
    return std::span<const std::int64_t>(entries_).subspan(r * cols(), cols());
  }

  const DesignSpec& spec() const { return spec_; }
  const std::vector<DesignPoint>& points() const { return points_; }
  const std::vector<std::string>& column_labels() const { return labels_; }

  Matrix<BigInt> to_bigint() const;
  // A = X^t, p x K.
  Matrix<BigInt> transpose_bigint() const;
  // Rows selected by `indices`, in the given order.
  Matrix<BigInt> submatrix(std::span<const std::size_t> indices) const;

 private:
  DesignSpec spec_;
  std::vector<DesignPoint> points_;
  std::vector<std::string> labels_;
  std::vector<std::int64_t> entries_;
};

// Throws ModelError when the exact rank is below p.
ModelMatrix build_model_matrix(const DesignSpec& spec,
                               std::size_t cap = kDefaultRowCap);

// Header line "K p" followed by K whitespace-separated rows.
void write_model_matrix(std::ostream& out, const ModelMatrix& x);

}  // namespace circuit_doe

#endif  // CIRCUIT_DOE_DESIGN_HPP_
