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

#ifndef CIRCUIT_DOE_EXACT_HPP_
#define CIRCUIT_DOE_EXACT_HPP_

// Exact integer and rational arithmetic: an overflow-checked int64 scalar
// for fast paths, GMP integers for the general case, a small dense matrix
// and fraction-free elimination routines.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace circuit_doe {

using BigInt = mpz_class;
using Rational = mpq_class;

// Thrown by CheckedInt64 when a result leaves the int64 range. Kernels that
// run on CheckedInt64 catch it and retry on BigInt.
class ArithmeticOverflow : public std::overflow_error {
 public:
  ArithmeticOverflow() : std::overflow_error("int64 overflow") {}
};

class CheckedInt64 {
 public:
  constexpr CheckedInt64() = default;
  constexpr CheckedInt64(std::int64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  constexpr std::int64_t value() const { return v_; }

  friend CheckedInt64 operator+(CheckedInt64 a, CheckedInt64 b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow();
    return r;
  }
  friend CheckedInt64 operator-(CheckedInt64 a, CheckedInt64 b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow();
    return r;
  }
  friend CheckedInt64 operator*(CheckedInt64 a, CheckedInt64 b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow();
    return r;
  }
  // Only used for exact division by a gcd.
  friend CheckedInt64 operator/(CheckedInt64 a, CheckedInt64 b) {
    if (b.v_ == -1 && a.v_ == INT64_MIN) throw ArithmeticOverflow();
    return a.v_ / b.v_;
  }
  CheckedInt64 operator-() const {
    if (v_ == INT64_MIN) throw ArithmeticOverflow();
    return -v_;
  }
  friend bool operator==(CheckedInt64 a, CheckedInt64 b) = default;
  friend auto operator<=>(CheckedInt64 a, CheckedInt64 b) = default;

 private:
  std::int64_t v_ = 0;
};

// Scalar helpers shared by the templated kernels.
inline bool is_zero(const CheckedInt64& x) { return x.value() == 0; }
inline bool is_zero(const BigInt& x) { return sgn(x) == 0; }
inline int sign_of(const CheckedInt64& x) {
  return (x.value() > 0) - (x.value() < 0);
}
inline int sign_of(const BigInt& x) { return sgn(x); }

inline CheckedInt64 gcd_of(CheckedInt64 a, CheckedInt64 b) {
  std::uint64_t x = a.value() < 0 ? 0 - static_cast<std::uint64_t>(a.value())
                                  : static_cast<std::uint64_t>(a.value());
  std::uint64_t y = b.value() < 0 ? 0 - static_cast<std::uint64_t>(b.value())
                                  : static_cast<std::uint64_t>(b.value());
  while (y != 0) {
    std::uint64_t t = x % y;
    x = y;
    y = t;
  }
  if (x > static_cast<std::uint64_t>(INT64_MAX)) throw ArithmeticOverflow();
  return static_cast<std::int64_t>(x);
}
inline BigInt gcd_of(const BigInt& a, const BigInt& b) { return gcd(a, b); }

template <class Scalar>
Scalar scalar_from(std::int64_t v) {
  if constexpr (std::is_same_v<Scalar, BigInt>) {
    return BigInt(static_cast<long>(v));
  } else {
    return Scalar(v);
  }
}

template <class Scalar>
Scalar scalar_from(const BigInt& v) {
  if constexpr (std::is_same_v<Scalar, BigInt>) {
    return v;
  } else {
    if (!v.fits_slong_p()) throw ArithmeticOverflow();
    return Scalar(static_cast<std::int64_t>(v.get_si()));
  }
}

inline BigInt to_bigint(const CheckedInt64& x) {
  return BigInt(static_cast<long>(x.value()));
}
inline const BigInt& to_bigint(const BigInt& x) { return x; }

// Throws ArithmeticOverflow when the value does not fit.
inline std::int64_t to_int64(const BigInt& x) {
  if (!x.fits_slong_p()) throw ArithmeticOverflow();
  return static_cast<std::int64_t>(x.get_si());
}

// Divides the vector by the gcd of its entries. Leaves a zero vector alone.
template <class Scalar>
void make_primitive(std::span<Scalar> v) {
  Scalar g = scalar_from<Scalar>(0);
  for (const Scalar& x : v) {
    if (!is_zero(x)) g = gcd_of(g, x);
  }
  if (is_zero(g) || g == scalar_from<Scalar>(1)) return;
  for (Scalar& x : v) x = x / g;
}

// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) {
    return std::span<T>(data_).subspan(r * cols_, cols_);
  }
  std::span<const T> row(std::size_t r) const {
    return std::span<const T>(data_).subspan(r * cols_, cols_);
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Fraction-free (Bareiss) determinant of a square matrix.
BigInt determinant(Matrix<BigInt> m);

// Rank over the rationals by fraction-free elimination.
std::size_t rank_of(Matrix<BigInt> m);

// Columns form a basis of {x : m x = 0}; each column is a primitive integer
// vector. Result has m.cols() rows and (m.cols() - rank) columns.
Matrix<BigInt> integer_kernel_basis(const Matrix<BigInt>& m);

// Fraction-free Gauss-Jordan on [m | I]. Returns (d, e) with e = d * m^-1
// and |d| = |det m|; d = 0 (and e empty) when m is singular.
struct ScaledInverse {
  BigInt d;
  Matrix<BigInt> e;
};
ScaledInverse scaled_inverse(const Matrix<BigInt>& m);

// Exact inverse; throws ContractError when singular.
Matrix<Rational> inverse(const Matrix<Rational>& m);

// Natural log of |x| for nonzero x, without converting x to double first.
double log_abs(const BigInt& x);

}  // namespace circuit_doe

#endif  // CIRCUIT_DOE_EXACT_HPP_
