/*
 * Copyright 2026 The fracspec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FRACSPEC_BANDED_HPP
#define FRACSPEC_BANDED_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fracspec/scalar.hpp"

namespace fracspec {

/**
 * Rectangular banded matrix with lower bandwidth l and upper bandwidth u.
 *
 * Entry (i,j) is structurally zero when i-j > l or j-i > u. Storage is the
 * LAPACK band layout: column j holds rows j-u .. j+l contiguously. A matrix
 * with u = cols-1 is dense above the diagonal; the same type is used for the
 * lower-banded systems produced by weighted coefficients.
 */
class BandedMat {
 public:
  BandedMat() = default;
  BandedMat(std::size_t rows, std::size_t cols, std::size_t lower, std::size_t upper);

  static BandedMat identity(std::size_t n);
  static BandedMat zeros(std::size_t rows, std::size_t cols) {
    return BandedMat(rows, cols, 0, 0);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t lower() const { return lower_; }
  std::size_t upper() const { return upper_; }

  bool in_band(std::size_t i, std::size_t j) const {
    return i < rows_ && j < cols_ && i <= j + lower_ && j <= i + upper_;
  }

  /// Entry (i,j); zero outside the band.
  Scalar operator()(std::size_t i, std::size_t j) const {
    return in_band(i, j) ? data_[index(i, j)] : Scalar{};
  }

  /// Mutable entry; (i,j) must lie inside the band.
  Scalar& at(std::size_t i, std::size_t j);

  /// Leading rows x cols block.
  BandedMat section(std::size_t rows, std::size_t cols) const;
  BandedMat section(std::size_t n) const { return section(n, n); }

  /// Same entries stored with (at least) the requested bandwidths.
  BandedMat widened(std::size_t lower, std::size_t upper) const;

  /// Same entries with bandwidths shrunk to the outermost nonzero diagonals.
  BandedMat trimmed(double tol = 0.0) const;

  /// Matrix-vector product. x may be shorter than cols (zero padded).
  Vector apply(std::span<const Scalar> x) const;

  /// Row vector times matrix: returns sum_i row[i] * A(i,:).
  Vector apply_left(std::span<const Scalar> row) const;

  BandedMat& operator*=(Scalar s);
  BandedMat& operator+=(const BandedMat& other);

  /// Row-major dense copy, for tests and small problems.
  std::vector<Scalar> dense() const;

  /// Largest |entry|.
  double max_abs() const;

  friend BandedMat operator*(const BandedMat& a, const BandedMat& b);
  friend BandedMat operator+(BandedMat a, const BandedMat& b) { return a += b; }
  friend BandedMat operator*(Scalar s, BandedMat a) { return a *= s; }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    return (upper_ + i - j) + j * (lower_ + upper_ + 1);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t lower_ = 0;
  std::size_t upper_ = 0;
  std::vector<Scalar> data_;
};

BandedMat operator-(const BandedMat& a, const BandedMat& b);

/// A square system that is banded below the diagonal and dense above it.
class LowerBandedMat {
 public:
  LowerBandedMat() = default;
  explicit LowerBandedMat(const BandedMat& m);

  std::size_t size() const { return mat_.rows(); }
  std::size_t lower() const { return mat_.lower(); }
  const BandedMat& matrix() const { return mat_; }
  Scalar operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

 private:
  BandedMat mat_;
};

/// A dense row acting on the coefficient layout of a truncated system.
struct FunctionalRow {
  Vector entries;
  std::string label;
};

/// K dense border rows stacked on top of a banded body.
struct AlmostBandedMat {
  std::vector<FunctionalRow> border;
  BandedMat body;

  std::size_t rows() const { return border.size() + body.rows(); }
  std::size_t cols() const { return body.cols(); }
  Scalar operator()(std::size_t i, std::size_t j) const;
  Vector apply(std::span<const Scalar> x) const;
};

/**
 * Banded LU factorisation with partial pivoting (row interchanges within
 * the band). Fill in U is bounded by l+u. Cost O(n l (l+u)).
 */
class BandedLU {
 public:
  explicit BandedLU(const BandedMat& a);

  std::size_t size() const { return n_; }
  Vector solve(std::span<const Scalar> rhs) const;

  /// Ratio of the largest to the smallest pivot magnitude.
  double condition_estimate() const;

  /// Outermost diagonals of the factors that hold nonzeros: multipliers stay
  /// within the lower bandwidth, U within lower+upper.
  std::size_t factor_lower_extent() const;
  std::size_t factor_upper_extent() const;

 private:
  Scalar& entry(std::size_t i, std::size_t j) { return ab_[(kv_ + i - j) + j * ld_]; }
  Scalar entry(std::size_t i, std::size_t j) const { return ab_[(kv_ + i - j) + j * ld_]; }

  std::size_t n_ = 0;
  std::size_t kl_ = 0;
  std::size_t ku_ = 0;
  std::size_t kv_ = 0;
  std::size_t ld_ = 0;
  std::vector<Scalar> ab_;
  std::vector<std::size_t> ipiv_;
};

Vector solve_banded(const BandedMat& a, std::span<const Scalar> rhs);
Vector solve_lower_banded(const LowerBandedMat& a, std::span<const Scalar> rhs);

/**
 * Solves a bordered system by a Schur complement about the border.
 *
 * K body columns are set aside (chosen by partial pivoting on the transposed
 * body so the remaining square block is nonsingular); the remaining banded
 * block is factored once and the K x K Schur complement couples the border
 * rows. Cost O(K^2 N + K^3) beyond the banded factorisation.
 */
Vector solve_almost_banded(const AlmostBandedMat& a, std::span<const Scalar> rhs,
                           double* condition = nullptr);

/// Dense solve with partial pivoting for small K x K systems (row-major).
Vector solve_dense(std::vector<Scalar> a, Vector b);

struct SpyEntry {
  std::size_t row;
  std::size_t col;
  Scalar value;
};

/// Nonzero entries in row-major order.
std::vector<SpyEntry> sparsity(const BandedMat& a);
std::vector<SpyEntry> sparsity(const AlmostBandedMat& a);

/// CSV with header row,col,value; zero-based indices.
void write_spy_csv(std::ostream& os, const std::vector<SpyEntry>& entries);

/// Scalar formatting shared by every CSV/JSON writer: 17 significant digits,
/// complex values as a+bi.
std::string format_scalar(Scalar z);
std::string format_real(double v);

}  // namespace fracspec

#endif  // FRACSPEC_BANDED_HPP
