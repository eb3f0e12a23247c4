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

#include "circuit_doe/design.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "circuit_doe/error.hpp"

namespace circuit_doe {

namespace {

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  std::size_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    return std::numeric_limits<std::size_t>::max();
  }
  return r;
}

// All subsets of {0..n-1} of size < m, ordered by size then lexicographically.
std::vector<Term> terms_below(int n, int m) {
  std::vector<Term> out;
  for (int k = 0; k < m && k <= n; ++k) {
    Term t(k);
    std::iota(t.begin(), t.end(), 0);
    while (true) {
      out.push_back(t);
      int i = k - 1;
      while (i >= 0 && t[i] == n - k + i) --i;
      if (i < 0) break;
      ++t[i];
      for (int j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
    }
  }
  return out;
}

// Odometer over contrast indices of a term, last factor fastest.
bool next_degree(std::vector<int>& degree, const Term& term,
                 const std::vector<int>& levels) {
  for (std::size_t i = term.size(); i-- > 0;) {
    if (++degree[i] < levels[term[i]] - 1) return true;
    degree[i] = 0;
  }
  return false;
}

}  // namespace

DesignSpec::DesignSpec(std::vector<int> levels, std::vector<Term> terms, Coding coding)
    : levels_(std::move(levels)), coding_(coding) {
  if (levels_.empty()) throw SpecError("design needs at least one factor");
  for (int s : levels_) {
    if (s < 2) {
      throw SpecError("factor level count " + std::to_string(s) +
                      " is below 2");
    }
  }
  const int n = static_cast<int>(levels_.size());
  std::set<Term> seen;
  for (const Term& t : terms) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] < 0 || t[i] >= n) {
        throw SpecError("term references factor " + std::to_string(t[i]) +
                        " outside [0, " + std::to_string(n) + ")");
      }
      if (i > 0 && t[i] <= t[i - 1]) {
        throw SpecError("term factor indices must be strictly increasing");
      }
    }
    if (!seen.insert(t).second) throw SpecError("duplicate model term");
  }
  terms_.push_back(Term{});
  for (Term& t : terms) {
    if (!t.empty()) terms_.push_back(std::move(t));
  }
  if (num_parameters() > num_points()) {
    throw SpecError("model has more parameters than design points");
  }
}

DesignSpec DesignSpec::no_m_way(std::vector<int> levels, int m, Coding coding) {
  if (m < 1) throw SpecError("interaction bound m must be at least 1");
  const int n = static_cast<int>(levels.size());
  DesignSpec spec(std::move(levels), terms_below(n, m), coding);
  spec.m_ = m;
  return spec;
}

std::size_t DesignSpec::num_points() const {
  std::size_t k = 1;
  for (int s : levels_) k = saturating_mul(k, static_cast<std::size_t>(s));
  return k;
}

std::size_t DesignSpec::num_parameters() const {
  std::size_t p = 0;
  for (const Term& t : terms_) {
    std::size_t c = 1;
    for (int f : t) c = saturating_mul(c, static_cast<std::size_t>(levels_[f] - 1));
    p += c;
  }
  return p;
}

DesignSpec parse_design_spec(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("design spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("levels")) {
    throw SpecError("design spec needs a \"levels\" array");
  }
  std::vector<int> levels;
  try {
    levels = doc.at("levels").get<std::vector<int>>();
  } catch (const nlohmann::json::exception&) {
    throw SpecError("\"levels\" must be an array of integers");
  }
  const int n = static_cast<int>(levels.size());
  Coding coding = Coding::kOrthogonalPolynomial;
  if (doc.contains("coding")) {
    const auto& c = doc.at("coding");
    if (c == "orthogonal") {
      coding = Coding::kOrthogonalPolynomial;
    } else if (c == "effects") {
      coding = Coding::kEffects;
    } else {
      throw SpecError("\"coding\" must be \"orthogonal\" or \"effects\"");
    }
  }
  const int given = static_cast<int>(doc.contains("terms")) +
                    static_cast<int>(doc.contains("model")) +
                    static_cast<int>(doc.contains("m"));
  if (given != 1) {
    throw SpecError("design spec needs exactly one of \"terms\", \"model\", \"m\"");
  }
  if (doc.contains("terms")) {
    std::vector<Term> terms;
    try {
      terms = doc.at("terms").get<std::vector<Term>>();
    } catch (const nlohmann::json::exception&) {
      throw SpecError("\"terms\" must be an array of integer arrays");
    }
    return DesignSpec(std::move(levels), std::move(terms), coding);
  }
  if (doc.contains("m")) {
    if (!doc.at("m").is_number_integer()) throw SpecError("\"m\" must be an integer");
    return DesignSpec::no_m_way(std::move(levels), doc.at("m").get<int>(), coding);
  }
  if (!doc.at("model").is_string()) throw SpecError("\"model\" must be a string");
  const std::string model = doc.at("model").get<std::string>();
  if (model == "main") return DesignSpec::no_m_way(std::move(levels), 2, coding);
  if (model == "full") return DesignSpec::no_m_way(std::move(levels), n + 1, coding);
  const std::string prefix = "interactions<";
  if (model.rfind(prefix, 0) == 0) {
    const std::string digits = model.substr(prefix.size());
    if (!digits.empty() &&
        std::all_of(digits.begin(), digits.end(),
                    [](char c) { return c >= '0' && c <= '9'; }) &&
        digits.size() < 4) {
      return DesignSpec::no_m_way(std::move(levels), std::stoi(digits), coding);
    }
  }
  throw SpecError("unknown model \"" + model + "\"");
}

DesignSpec load_design_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open design spec " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_design_spec(buf.str());
}

std::vector<DesignPoint> build_full_factorial(std::span<const int> levels,
                                              std::size_t cap) {
  std::size_t k = 1;
  for (int s : levels) {
    if (s < 2) {
      throw SpecError("factor level count " + std::to_string(s) +
                      " is below 2");
    }
    k = saturating_mul(k, static_cast<std::size_t>(s));
    if (k > cap) {
      throw ResourceError("full factorial exceeds the row cap of " +
                          std::to_string(cap));
    }
  }
  std::vector<DesignPoint> points;
  points.reserve(k);
  std::vector<int> coords(levels.size(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    points.push_back(DesignPoint{coords});
    for (std::size_t f = levels.size(); f-- > 0;) {
      if (++coords[f] < levels[f]) break;
      coords[f] = 0;
    }
  }
  return points;
}

std::vector<std::vector<std::int64_t>> orthogonal_contrasts(int levels) {
  if (levels < 2) throw SpecError("contrasts need at least 2 levels");
  const auto s = static_cast<std::size_t>(levels);
  // Gram-Schmidt on 1, x, x^2, ... over the scores 0..s-1.
  std::vector<std::vector<Rational>> basis;
  std::vector<Rational> norms;
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t degree = 0; degree < s; ++degree) {
    std::vector<Rational> v(s);
    for (std::size_t x = 0; x < s; ++x) {
      Rational power = 1;
      for (std::size_t e = 0; e < degree; ++e) power *= static_cast<long>(x);
      v[x] = power;
    }
    for (std::size_t b = 0; b < basis.size(); ++b) {
      Rational dot = 0;
      for (std::size_t x = 0; x < s; ++x) dot += v[x] * basis[b][x];
      const Rational coef = dot / norms[b];
      for (std::size_t x = 0; x < s; ++x) v[x] -= coef * basis[b][x];
    }
    Rational norm = 0;
    for (const Rational& e : v) norm += e * e;
    basis.push_back(v);
    norms.push_back(norm);
    if (degree == 0) continue;

    BigInt lcm = 1;
    for (const Rational& e : v) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.get_den_mpz_t());
    }
    std::vector<BigInt> ints(s);
    for (std::size_t x = 0; x < s; ++x) {
      ints[x] = v[x].get_num() * (lcm / v[x].get_den());
    }
    make_primitive<BigInt>(ints);
    if (sgn(ints.back()) < 0) {
      for (BigInt& e : ints) e = -e;
    }
    std::vector<std::int64_t> column(s);
    for (std::size_t x = 0; x < s; ++x) column[x] = to_int64(ints[x]);
    out.push_back(std::move(column));
  }
  return out;
}

std::vector<std::vector<std::int64_t>> effects_contrasts(int levels) {
  if (levels < 2) throw SpecError("contrasts need at least 2 levels");
  std::vector<std::vector<std::int64_t>> out;
  for (int i = 0; i + 1 < levels; ++i) {
    std::vector<std::int64_t> column(static_cast<std::size_t>(levels), 0);
    column[static_cast<std::size_t>(i)] = 1;
    column.back() = -1;
    out.push_back(std::move(column));
  }
  return out;
}

ModelMatrix::ModelMatrix(DesignSpec spec, std::vector<DesignPoint> points,
                         std::vector<std::string> labels,
                         std::vector<std::int64_t> entries)
    : spec_(std::move(spec)),
      points_(std::move(points)),
      labels_(std::move(labels)),
      entries_(std::move(entries)) {}

Matrix<BigInt> ModelMatrix::to_bigint() const {
  Matrix<BigInt> m(rows(), cols());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols(); ++c) {
      m(r, c) = static_cast<long>((*this)(r, c));
    }
  }
  return m;
}

Matrix<BigInt> ModelMatrix::transpose_bigint() const {
  Matrix<BigInt> m(cols(), rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols(); ++c) {
      m(c, r) = static_cast<long>((*this)(r, c));
    }
  }
  return m;
}

Matrix<BigInt> ModelMatrix::submatrix(std::span<const std::size_t> indices) const {
  Matrix<BigInt> m(indices.size(), cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t c = 0; c < cols(); ++c) {
      m(i, c) = static_cast<long>((*this)(indices[i], c));
    }
  }
  return m;
}

ModelMatrix build_model_matrix(const DesignSpec& spec, std::size_t cap) {
  std::vector<DesignPoint> points = build_full_factorial(spec.levels(), cap);
  std::vector<std::vector<std::vector<std::int64_t>>> contrasts;
  for (int s : spec.levels()) {
    contrasts.push_back(spec.coding() == Coding::kEffects ? effects_contrasts(s)
                                                          : orthogonal_contrasts(s));
  }

  // Column generators: (term, contrast index per factor of the term).
  struct Column {
    const Term* term;
    std::vector<int> degree;
  };
  std::vector<Column> columns;
  std::vector<std::string> labels;
  for (const Term& term : spec.terms()) {
    std::vector<int> degree(term.size(), 0);
    do {
      std::string label;
      for (std::size_t i = 0; i < term.size(); ++i) {
        if (i > 0) label += ':';
        label += "F" + std::to_string(term[i]) + "." + std::to_string(degree[i] + 1);
      }
      labels.push_back(term.empty() ? "1" : label);
      columns.push_back(Column{&term, degree});
    } while (next_degree(degree, term, spec.levels()));
  }

  const std::size_t k = points.size();
  const std::size_t p = columns.size();
  std::vector<std::int64_t> entries(k * p);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < p; ++c) {
      std::int64_t v = 1;
      const Term& term = *columns[c].term;
      for (std::size_t i = 0; i < term.size(); ++i) {
        const int f = term[i];
        v *= contrasts[f][columns[c].degree[i]][points[r].coords[f]];
      }
      entries[r * p + c] = v;
    }
  }
  ModelMatrix x(spec, std::move(points), std::move(labels), std::move(entries));
  const std::size_t rank = rank_of(x.to_bigint());
  if (rank != p) {
    throw ModelError("model matrix has rank " + std::to_string(rank) +
                     " below p = " + std::to_string(p));
  }
  return x;
}

void write_model_matrix(std::ostream& out, const ModelMatrix& x) {
  out << x.rows() << ' ' << x.cols() << '\n';
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      if (c > 0) out << ' ';
      out << x(r, c);
    }
    out << '\n';
  }
}

}  // namespace circuit_doe
