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

#include "fracspec/banded.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "fracspec/error.hpp"

namespace fracspec {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::size_t clip(std::size_t band, std::size_t extent) {
  return extent == 0 ? 0 : std::min(band, extent - 1);
}

// Unblocked banded LU with partial pivoting in LAPACK band storage
// (leading dimension ld >= 2*kl+ku+1) on an m x n matrix. Returns the first
// column whose best pivot magnitude is <= tiny, or npos.
std::size_t band_factor(std::size_t m, std::size_t n, std::size_t kl, std::size_t ku,
                        std::vector<Scalar>& ab, std::size_t ld,
                        std::vector<std::size_t>& ipiv, std::vector<double>& pivots,
                        double tiny) {
  const std::size_t kv = kl + ku;
  auto at = [&](std::size_t i, std::size_t j) -> Scalar& {
    return ab[(kv + i - j) + j * ld];
  };
  const std::size_t steps = std::min(m, n);
  ipiv.assign(steps, 0);
  pivots.assign(steps, 0.0);
  std::size_t ju = 0;
  for (std::size_t j = 0; j < steps; ++j) {
    const std::size_t km = std::min(kl, m - 1 - j);
    std::size_t jp = 0;
    double best = std::abs(at(j, j));
    for (std::size_t r = 1; r <= km; ++r) {
      const double v = std::abs(at(j + r, j));
      if (v > best) {
        best = v;
        jp = r;
      }
    }
    ipiv[j] = j + jp;
    pivots[j] = best;
    if (!(best > tiny)) return j;
    ju = std::max(ju, std::min(j + ku + jp, n - 1));
    if (jp != 0) {
      for (std::size_t c = j; c <= ju; ++c) std::swap(at(j, c), at(j + jp, c));
    }
    if (km > 0) {
      const Scalar inv = 1.0 / at(j, j);
      for (std::size_t r = 1; r <= km; ++r) at(j + r, j) *= inv;
      for (std::size_t c = j + 1; c <= ju; ++c) {
        const Scalar f = at(j, c);
        if (f == Scalar{}) continue;
        Scalar* col = &at(j, c);
        const Scalar* mult = &at(j, j);
        for (std::size_t r = 1; r <= km; ++r) col[r] -= mult[r] * f;
      }
    }
  }
  return npos;
}

double norm_inf(const BandedMat& a) {
  std::vector<double> rowsum(a.rows(), 0.0);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const std::size_t lo = j > a.upper() ? j - a.upper() : 0;
    const std::size_t hi = std::min(a.rows() - 1, j + a.lower());
    for (std::size_t i = lo; i <= hi && a.rows() > 0; ++i) rowsum[i] += std::abs(a(i, j));
  }
  return rowsum.empty() ? 0.0 : *std::max_element(rowsum.begin(), rowsum.end());
}

}  // namespace

BandedMat::BandedMat(std::size_t rows, std::size_t cols, std::size_t lower, std::size_t upper)
    : rows_(rows), cols_(cols), lower_(clip(lower, rows)), upper_(clip(upper, cols)) {
  data_.assign((lower_ + upper_ + 1) * cols_, Scalar{});
}

BandedMat BandedMat::identity(std::size_t n) {
  BandedMat m(n, n, 0, 0);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Scalar& BandedMat::at(std::size_t i, std::size_t j) {
  if (!in_band(i, j)) {
    throw ShapeMismatch("entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") outside band");
  }
  return data_[index(i, j)];
}

BandedMat BandedMat::section(std::size_t rows, std::size_t cols) const {
  BandedMat out(rows, cols, lower_, upper_);
  const std::size_t nc = std::min(cols, cols_);
  for (std::size_t j = 0; j < nc; ++j) {
    const std::size_t lo = j > out.upper_ ? j - out.upper_ : 0;
    const std::size_t hi = std::min({rows, rows_, j + out.lower_ + 1});
    for (std::size_t i = lo; i < hi; ++i) out.data_[out.index(i, j)] = (*this)(i, j);
  }
  return out;
}

BandedMat BandedMat::widened(std::size_t lower, std::size_t upper) const {
  BandedMat out(rows_, cols_, std::max(lower, lower_), std::max(upper, upper_));
  for (std::size_t j = 0; j < cols_; ++j) {
    const std::size_t lo = j > upper_ ? j - upper_ : 0;
    const std::size_t hi = std::min(rows_, j + lower_ + 1);
    for (std::size_t i = lo; i < hi; ++i) out.data_[out.index(i, j)] = data_[index(i, j)];
  }
  return out;
}

BandedMat BandedMat::trimmed(double tol) const {
  std::size_t l = 0;
  std::size_t u = 0;
  for (std::size_t j = 0; j < cols_; ++j) {
    const std::size_t lo = j > upper_ ? j - upper_ : 0;
    const std::size_t hi = std::min(rows_, j + lower_ + 1);
    for (std::size_t i = lo; i < hi; ++i) {
      if (std::abs(data_[index(i, j)]) > tol) {
        if (i > j) l = std::max(l, i - j);
        if (j > i) u = std::max(u, j - i);
      }
    }
  }
  BandedMat out(rows_, cols_, l, u);
  for (std::size_t j = 0; j < cols_; ++j) {
    const std::size_t lo = j > u ? j - u : 0;
    const std::size_t hi = std::min(rows_, j + l + 1);
    for (std::size_t i = lo; i < hi; ++i) {
      const Scalar v = (*this)(i, j);
      if (std::abs(v) > tol) out.data_[out.index(i, j)] = v;
    }
  }
  return out;
}

Vector BandedMat::apply(std::span<const Scalar> x) const {
  Vector y(rows_, Scalar{});
  const std::size_t nc = std::min(cols_, x.size());
  for (std::size_t j = 0; j < nc; ++j) {
    if (x[j] == Scalar{}) continue;
    const std::size_t lo = j > upper_ ? j - upper_ : 0;
    const std::size_t hi = std::min(rows_, j + lower_ + 1);
    for (std::size_t i = lo; i < hi; ++i) y[i] += data_[index(i, j)] * x[j];
  }
  return y;
}

Vector BandedMat::apply_left(std::span<const Scalar> row) const {
  Vector y(cols_, Scalar{});
  const std::size_t nr = std::min(rows_, row.size());
  for (std::size_t j = 0; j < cols_; ++j) {
    const std::size_t lo = j > upper_ ? j - upper_ : 0;
    const std::size_t hi = std::min(nr, j + lower_ + 1);
    Scalar acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += row[i] * data_[index(i, j)];
    y[j] = acc;
  }
  return y;
}

BandedMat& BandedMat::operator*=(Scalar s) {
  for (auto& v : data_) v *= s;
  return *this;
}

BandedMat& BandedMat::operator+=(const BandedMat& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) {
    throw ShapeMismatch("adding " + std::to_string(other.rows_) + "x" +
                        std::to_string(other.cols_) + " to " + std::to_string(rows_) + "x" +
                        std::to_string(cols_));
  }
  if (other.lower_ > lower_ || other.upper_ > upper_) {
    *this = widened(other.lower_, other.upper_);
  }
  for (std::size_t j = 0; j < cols_; ++j) {
    const std::size_t lo = j > other.upper_ ? j - other.upper_ : 0;
    const std::size_t hi = std::min(rows_, j + other.lower_ + 1);
    for (std::size_t i = lo; i < hi; ++i) data_[index(i, j)] += other.data_[other.index(i, j)];
  }
  return *this;
}

BandedMat operator*(const BandedMat& a, const BandedMat& b) {
  if (a.cols_ != b.rows_) {
    throw ShapeMismatch("product of " + std::to_string(a.rows_) + "x" +
                        std::to_string(a.cols_) + " and " + std::to_string(b.rows_) + "x" +
                        std::to_string(b.cols_));
  }
  BandedMat c(a.rows_, b.cols_, a.lower_ + b.lower_, a.upper_ + b.upper_);
  if (a.rows_ == 0 || b.rows_ == 0) return c;
  for (std::size_t j = 0; j < b.cols_; ++j) {
    const std::size_t mlo = j > b.upper_ ? j - b.upper_ : 0;
    const std::size_t mhi = std::min(b.rows_, j + b.lower_ + 1);
    for (std::size_t m = mlo; m < mhi; ++m) {
      const Scalar bmj = b.data_[b.index(m, j)];
      if (bmj == Scalar{}) continue;
      const std::size_t ilo = m > a.upper_ ? m - a.upper_ : 0;
      const std::size_t ihi = std::min(a.rows_, m + a.lower_ + 1);
      for (std::size_t i = ilo; i < ihi; ++i) {
        c.data_[c.index(i, j)] += a.data_[a.index(i, m)] * bmj;
      }
    }
  }
  return c;
}

BandedMat operator-(const BandedMat& a, const BandedMat& b) {
  BandedMat nb = b;
  nb *= -1.0;
  return a + nb;
}

std::vector<Scalar> BandedMat::dense() const {
  std::vector<Scalar> out(rows_ * cols_, Scalar{});
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i * cols_ + j] = (*this)(i, j);
  }
  return out;
}

double BandedMat::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

LowerBandedMat::LowerBandedMat(const BandedMat& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("lower-banded system must be square");
  mat_ = m.widened(m.lower(), m.cols() == 0 ? 0 : m.cols() - 1);
}

Scalar AlmostBandedMat::operator()(std::size_t i, std::size_t j) const {
  if (i < border.size()) return j < border[i].entries.size() ? border[i].entries[j] : Scalar{};
  return body(i - border.size(), j);
}

Vector AlmostBandedMat::apply(std::span<const Scalar> x) const {
  Vector y;
  y.reserve(rows());
  for (const auto& row : border) {
    Scalar acc{};
    const std::size_t n = std::min(row.entries.size(), x.size());
    for (std::size_t j = 0; j < n; ++j) acc += row.entries[j] * x[j];
    y.push_back(acc);
  }
  const Vector b = body.apply(x);
  y.insert(y.end(), b.begin(), b.end());
  return y;
}

BandedLU::BandedLU(const BandedMat& a)
    : n_(a.rows()), kl_(a.lower()), ku_(a.upper()), kv_(a.lower() + a.upper()) {
  if (a.rows() != a.cols()) throw ShapeMismatch("banded LU requires a square matrix");
  ld_ = 2 * kl_ + ku_ + 1;
  ab_.assign(ld_ * n_, Scalar{});
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t lo = j > ku_ ? j - ku_ : 0;
    const std::size_t hi = std::min(n_, j + kl_ + 1);
    for (std::size_t i = lo; i < hi; ++i) entry(i, j) = a(i, j);
  }
  std::vector<double> pivots;
  const double tiny = 1e-300 * norm_inf(a);
  const std::size_t bad = band_factor(n_, n_, kl_, ku_, ab_, ld_, ipiv_, pivots, tiny);
  if (bad != npos) {
    throw SingularMatrix("zero pivot in column " + std::to_string(bad) + " of " +
                         std::to_string(n_) + "x" + std::to_string(n_) + " banded system");
  }
}

Vector BandedLU::solve(std::span<const Scalar> rhs) const {
  if (rhs.size() != n_) {
    throw ShapeMismatch("right-hand side has length " + std::to_string(rhs.size()) +
                        ", expected " + std::to_string(n_));
  }
  Vector b(rhs.begin(), rhs.end());
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t km = std::min(kl_, n_ - 1 - j);
    if (ipiv_[j] != j) std::swap(b[j], b[ipiv_[j]]);
    if (b[j] == Scalar{}) continue;
    for (std::size_t r = 1; r <= km; ++r) b[j + r] -= entry(j + r, j) * b[j];
  }
  for (std::size_t j = n_; j-- > 0;) {
    b[j] /= entry(j, j);
    if (b[j] == Scalar{}) continue;
    const std::size_t lo = j > kv_ ? j - kv_ : 0;
    for (std::size_t i = lo; i < j; ++i) b[i] -= entry(i, j) * b[j];
  }
  return b;
}

double BandedLU::condition_estimate() const {
  double big = 0.0;
  double small = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n_; ++j) {
    const double p = std::abs(entry(j, j));
    big = std::max(big, p);
    small = std::min(small, p);
  }
  return n_ == 0 ? 1.0 : big / small;
}

std::size_t BandedLU::factor_lower_extent() const {
  std::size_t ext = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t r = 1; r <= std::min(kl_, n_ - 1 - j); ++r) {
      if (entry(j + r, j) != Scalar{}) ext = std::max(ext, r);
    }
  }
  return ext;
}

std::size_t BandedLU::factor_upper_extent() const {
  std::size_t ext = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t lo = j > kv_ ? j - kv_ : 0;
    for (std::size_t i = lo; i < j; ++i) {
      if (entry(i, j) != Scalar{}) ext = std::max(ext, j - i);
    }
  }
  return ext;
}

Vector solve_banded(const BandedMat& a, std::span<const Scalar> rhs) {
  return BandedLU(a).solve(rhs);
}

Vector solve_lower_banded(const LowerBandedMat& a, std::span<const Scalar> rhs) {
  return BandedLU(a.matrix()).solve(rhs);
}

Vector solve_dense(std::vector<Scalar> a, Vector b) {
  const std::size_t n = b.size();
  if (a.size() != n * n) throw ShapeMismatch("dense system is not square");
  double scale = 0.0;
  for (const auto& v : a) scale = std::max(scale, std::abs(v));
  const double tiny = 64.0 * std::numeric_limits<double>::epsilon() * scale * std::max<std::size_t>(n, 1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i * n + k]) > std::abs(a[p * n + k])) p = i;
    }
    if (!(std::abs(a[p * n + k]) > tiny)) {
      throw SingularMatrix("dense system is singular at column " + std::to_string(k));
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Scalar f = a[i * n + k] / a[k * n + k];
      if (f == Scalar{}) continue;
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    Scalar acc = b[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= a[k * n + j] * b[j];
    b[k] = acc / a[k * n + k];
  }
  return b;
}

Vector solve_almost_banded(const AlmostBandedMat& a, std::span<const Scalar> rhs,
                           double* condition) {
  const std::size_t n = a.cols();
  const std::size_t k = a.border.size();
  const BandedMat& body = a.body;
  if (body.rows() + k != n) {
    throw ShapeMismatch("almost-banded system is " + std::to_string(body.rows() + k) + "x" +
                        std::to_string(n) + ", expected square");
  }
  if (rhs.size() != n) throw ShapeMismatch("right-hand side length does not match system");
  for (const auto& row : a.border) {
    if (row.entries.size() != n) throw ShapeMismatch("border row '" + row.label + "' has wrong length");
  }
  if (k == 0) {
    const BandedLU lu(body);
    if (condition) *condition = lu.condition_estimate();
    return lu.solve(rhs);
  }

  const std::size_t nb = n - k;
  // Choose the K body columns to set aside: partial pivoting on body^T picks
  // nb columns forming a nonsingular square block.
  std::vector<std::size_t> set_aside;
  {
    const std::size_t kl = body.upper();
    const std::size_t ku = body.lower();
    const std::size_t ld = 2 * kl + ku + 1;
    std::vector<Scalar> ab(ld * nb, Scalar{});
    for (std::size_t j = 0; j < nb; ++j) {
      // column j of body^T is row j of body
      const std::size_t lo = j > body.lower() ? j - body.lower() : 0;
      const std::size_t hi = std::min(n, j + body.upper() + 1);
      for (std::size_t i = lo; i < hi; ++i) ab[(kl + ku + i - j) + j * ld] = body(j, i);
    }
    std::vector<std::size_t> ipiv;
    std::vector<double> pivots;
    const double tiny = 1e-300 * std::max(body.max_abs(), 1e-300);
    if (band_factor(n, nb, kl, ku, ab, ld, ipiv, pivots, tiny) != npos) {
      throw SingularMatrix("banded body of the bordered system is rank deficient");
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t j = 0; j < ipiv.size(); ++j) std::swap(perm[j], perm[ipiv[j]]);
    set_aside.assign(perm.begin() + static_cast<std::ptrdiff_t>(nb), perm.end());
    std::sort(set_aside.begin(), set_aside.end());
  }

  // kept[j'] = original column of reduced column j'
  std::vector<std::size_t> kept;
  kept.reserve(nb);
  std::vector<bool> aside(n, false);
  for (std::size_t c : set_aside) aside[c] = true;
  for (std::size_t c = 0; c < n; ++c) {
    if (!aside[c]) kept.push_back(c);
  }

  BandedMat reduced(nb, nb, body.lower() + k, body.upper());
  for (std::size_t jr = 0; jr < nb; ++jr) {
    const std::size_t j = kept[jr];
    const std::size_t lo = j > body.upper() ? j - body.upper() : 0;
    const std::size_t hi = std::min(nb, j + body.lower() + 1);
    for (std::size_t i = lo; i < hi; ++i) {
      const Scalar v = body(i, j);
      if (v != Scalar{}) reduced.at(i, jr) = v;
    }
  }
  const BandedLU lu(reduced);
  if (condition) *condition = lu.condition_estimate();

  const Vector g(rhs.begin() + static_cast<std::ptrdiff_t>(k), rhs.end());
  const Vector w = lu.solve(g);
  std::vector<Vector> z;
  z.reserve(k);
  for (std::size_t c : set_aside) {
    Vector col(nb, Scalar{});
    const std::size_t lo = c > body.upper() ? c - body.upper() : 0;
    const std::size_t hi = std::min(nb, c + body.lower() + 1);
    for (std::size_t i = lo; i < hi; ++i) col[i] = body(i, c);
    z.push_back(lu.solve(col));
  }

  std::vector<Scalar> schur(k * k, Scalar{});
  Vector srhs(k, Scalar{});
  for (std::size_t r = 0; r < k; ++r) {
    const Vector& row = a.border[r].entries;
    Scalar acc = rhs[r];
    for (std::size_t jr = 0; jr < nb; ++jr) acc -= row[kept[jr]] * w[jr];
    srhs[r] = acc;
    for (std::size_t t = 0; t < k; ++t) {
      Scalar s = row[set_aside[t]];
      for (std::size_t jr = 0; jr < nb; ++jr) s -= row[kept[jr]] * z[t][jr];
      schur[r * k + t] = s;
    }
  }
  Vector xa;
  try {
    xa = solve_dense(std::move(schur), std::move(srhs));
  } catch (const SingularMatrix& e) {
    throw SingularSchurComplement(std::string("border Schur complement: ") + e.what());
  }

  Vector x(n, Scalar{});
  for (std::size_t t = 0; t < k; ++t) x[set_aside[t]] = xa[t];
  for (std::size_t jr = 0; jr < nb; ++jr) {
    Scalar v = w[jr];
    for (std::size_t t = 0; t < k; ++t) v -= z[t][jr] * xa[t];
    x[kept[jr]] = v;
  }
  return x;
}

std::vector<SpyEntry> sparsity(const BandedMat& a) {
  std::vector<SpyEntry> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const std::size_t lo = i > a.lower() ? i - a.lower() : 0;
    const std::size_t hi = std::min(a.cols(), i + a.upper() + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      const Scalar v = a(i, j);
      if (v != Scalar{}) out.push_back({i, j, v});
    }
  }
  return out;
}

std::vector<SpyEntry> sparsity(const AlmostBandedMat& a) {
  std::vector<SpyEntry> out;
  for (std::size_t r = 0; r < a.border.size(); ++r) {
    const auto& e = a.border[r].entries;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] != Scalar{}) out.push_back({r, j, e[j]});
    }
  }
  for (const auto& s : sparsity(a.body)) out.push_back({s.row + a.border.size(), s.col, s.value});
  return out;
}

std::string format_real(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_scalar(Scalar z) {
  if (z.imag() == 0.0) return format_real(z.real());
  std::string s = z.real() == 0.0 ? std::string() : format_real(z.real());
  const double im = z.imag();
  if (!s.empty() || im < 0) s += im < 0 ? "-" : "+";
  s += format_real(std::abs(im)) + "i";
  return s;
}

void write_spy_csv(std::ostream& os, const std::vector<SpyEntry>& entries) {
  os << "row,col,value\n";
  for (const auto& e : entries) {
    os << e.row << ',' << e.col << ',' << format_scalar(e.value) << '\n';
  }
}

}  // namespace fracspec
