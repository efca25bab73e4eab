// Copyright 2026 The HodgeFlow Authors
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

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "hodgeflow/error.hpp"

namespace hodgeflow {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using Index = std::int64_t;

template <typename T>
struct Triplet {
  Index row;
  Index col;
  T value;
};

/// Compressed sparse row matrix.
///
/// Column indices are sorted within each row and no explicit zeros are
/// stored. Instantiated with `std::int64_t` for exact topology (incidence
/// matrices, Laplacians) and with `double` for the numerical shift operators.
template <typename T>
class CsrMatrix {
 public:
  CsrMatrix() : row_ptr_(1, 0) {}
  CsrMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

  /// Duplicate coordinates are summed; entries that sum to zero are dropped.
  static CsrMatrix from_triplets(Index rows, Index cols, std::vector<Triplet<T>> triplets) {
    for (const auto& t : triplets) {
      if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
        throw DimensionMismatch("triplet (" + std::to_string(t.row) + ", " +
                                std::to_string(t.col) + ") outside " + std::to_string(rows) +
                                "x" + std::to_string(cols) + " matrix");
      }
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet<T>& a, const Triplet<T>& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    CsrMatrix m(rows, cols);
    std::size_t i = 0;
    while (i < triplets.size()) {
      const Index r = triplets[i].row;
      const Index c = triplets[i].col;
      T sum{};
      while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) {
        sum += triplets[i].value;
        ++i;
      }
      if (sum != T{}) {
        m.col_idx_.push_back(c);
        m.values_.push_back(sum);
        ++m.row_ptr_[r + 1];
      }
    }
    for (Index r = 0; r < rows; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    return m;
  }

  static CsrMatrix identity(Index n) {
    std::vector<Triplet<T>> t;
    t.reserve(n);
    for (Index i = 0; i < n; ++i) t.push_back({i, i, T{1}});
    return from_triplets(n, n, std::move(t));
  }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index nonzeros() const { return static_cast<Index>(values_.size()); }

  std::span<const Index> row_indices(Index r) const {
    return {col_idx_.data() + row_ptr_[r], static_cast<std::size_t>(row_ptr_[r + 1] - row_ptr_[r])};
  }
  std::span<const T> row_values(Index r) const {
    return {values_.data() + row_ptr_[r], static_cast<std::size_t>(row_ptr_[r + 1] - row_ptr_[r])};
  }

  T coeff(Index r, Index c) const {
    const auto idx = row_indices(r);
    const auto it = std::lower_bound(idx.begin(), idx.end(), c);
    if (it == idx.end() || *it != c) return T{};
    return row_values(r)[static_cast<std::size_t>(it - idx.begin())];
  }

  std::vector<Triplet<T>> triplets() const {
    std::vector<Triplet<T>> out;
    out.reserve(values_.size());
    for (Index r = 0; r < rows_; ++r) {
      for (Index p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) out.push_back({r, col_idx_[p], values_[p]});
    }
    return out;
  }

  CsrMatrix transpose() const {
    auto t = triplets();
    for (auto& e : t) std::swap(e.row, e.col);
    return from_triplets(cols_, rows_, std::move(t));
  }

  template <typename U>
  CsrMatrix<U> cast() const {
    std::vector<Triplet<U>> t;
    t.reserve(values_.size());
    for (const auto& e : triplets()) t.push_back({e.row, e.col, static_cast<U>(e.value)});
    return CsrMatrix<U>::from_triplets(rows_, cols_, std::move(t));
  }

  DenseMatrix to_dense() const {
    DenseMatrix d = DenseMatrix::Zero(rows_, cols_);
    for (Index r = 0; r < rows_; ++r) {
      for (Index p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) d(r, col_idx_[p]) = static_cast<double>(values_[p]);
    }
    return d;
  }

  /// Largest absolute entry; zero for an empty matrix.
  T max_abs() const {
    T m{};
    for (const T& v : values_) m = std::max(m, v < T{} ? -v : v);
    return m;
  }

  friend bool operator==(const CsrMatrix& a, const CsrMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_ptr_ == b.row_ptr_ &&
           a.col_idx_ == b.col_idx_ && a.values_ == b.values_;
  }

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> row_ptr_;
  std::vector<Index> col_idx_;
  std::vector<T> values_;
};

using SparseMatrix = CsrMatrix<double>;
using IntSparseMatrix = CsrMatrix<std::int64_t>;

/// Sparse-sparse product, exact for integer scalar types.
template <typename T>
CsrMatrix<T> multiply(const CsrMatrix<T>& a, const CsrMatrix<T>& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("sparse product: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " times " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
  std::vector<Triplet<T>> out;
  for (Index r = 0; r < a.rows(); ++r) {
    const auto ai = a.row_indices(r);
    const auto av = a.row_values(r);
    for (std::size_t p = 0; p < ai.size(); ++p) {
      const auto bi = b.row_indices(ai[p]);
      const auto bv = b.row_values(ai[p]);
      for (std::size_t q = 0; q < bi.size(); ++q) out.push_back({r, bi[q], av[p] * bv[q]});
    }
  }
  return CsrMatrix<T>::from_triplets(a.rows(), b.cols(), std::move(out));
}

template <typename T>
CsrMatrix<T> add(const CsrMatrix<T>& a, const CsrMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("sparse sum: shape mismatch");
  auto t = a.triplets();
  auto tb = b.triplets();
  t.insert(t.end(), tb.begin(), tb.end());
  return CsrMatrix<T>::from_triplets(a.rows(), a.cols(), std::move(t));
}

template <typename T>
CsrMatrix<T> scale(const CsrMatrix<T>& a, T factor) {
  auto t = a.triplets();
  for (auto& e : t) e.value *= factor;
  return CsrMatrix<T>::from_triplets(a.rows(), a.cols(), std::move(t));
}

/// y = A x.
Vector spmv(const SparseMatrix& a, const Vector& x);

/// y = A x, writing into a caller-owned buffer (resized as needed).
void spmv_into(const SparseMatrix& a, const Vector& x, Vector& y);

struct EigenResult {
  Vector eigenvalues;       // ascending
  DenseMatrix eigenvectors; // column i pairs with eigenvalues[i]
};

/// Dense symmetric eigendecomposition. Rejects inputs whose asymmetry
/// exceeds `symmetry_tol` (absolute, entrywise).
EigenResult sym_eig(const DenseMatrix& a, double symmetry_tol = 1e-10);

/// Largest eigenvalue of a symmetric positive semidefinite sparse matrix by
/// power iteration from the all-ones start vector (plus a fixed ramp, so the
/// start is never orthogonal to a constant-free top eigenvector).
double largest_eigenvalue(const SparseMatrix& a, int max_iter = 5000, double rel_tol = 1e-12);

/// Orthogonal projection U Uᵀ x onto the span of orthonormal columns U.
Vector project_onto(const DenseMatrix& columns, const Vector& x);

}  // namespace hodgeflow
