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

#include "hodgeflow/linalg.hpp"

#include <cmath>

namespace hodgeflow {

void spmv_into(const SparseMatrix& a, const Vector& x, Vector& y) {
  if (x.size() != a.cols()) {
    throw DimensionMismatch("spmv: matrix has " + std::to_string(a.cols()) + " columns, vector has " +
                            std::to_string(x.size()) + " entries");
  }
  y.resize(a.rows());
  for (Index r = 0; r < a.rows(); ++r) {
    const auto idx = a.row_indices(r);
    const auto val = a.row_values(r);
    double acc = 0.0;
    for (std::size_t p = 0; p < idx.size(); ++p) acc += val[p] * x[idx[p]];
    y[r] = acc;
  }
}

Vector spmv(const SparseMatrix& a, const Vector& x) {
  Vector y;
  spmv_into(a, x, y);
  return y;
}

EigenResult sym_eig(const DenseMatrix& a, double symmetry_tol) {
  if (a.rows() != a.cols()) throw DimensionMismatch("sym_eig: matrix is not square");
  if (a.size() > 0) {
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (!(asym <= symmetry_tol)) {
      throw InvalidArgument("sym_eig: matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
    }
  }
  if (a.rows() == 0) return {Vector(0), DenseMatrix(0, 0)};
  // Symmetrize so round-off asymmetry does not leak into the eigensolver.
  const DenseMatrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericalError("sym_eig: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double largest_eigenvalue(const SparseMatrix& a, int max_iter, double rel_tol) {
  if (a.rows() != a.cols()) throw DimensionMismatch("largest_eigenvalue: matrix is not square");
  const Index n = a.rows();
  if (n == 0 || a.nonzeros() == 0) return 0.0;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = 1.0 + static_cast<double>(i % 7) / 7.0;
  v.normalize();
  Vector w;
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    spmv_into(a, v, w);
    const double next = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    if (it > 0 && std::abs(next - lambda) <= rel_tol * std::abs(next)) return next;
    lambda = next;
  }
  return lambda;
}

Vector project_onto(const DenseMatrix& columns, const Vector& x) {
  if (columns.rows() != x.size()) throw DimensionMismatch("project_onto: basis/vector length mismatch");
  if (columns.cols() == 0) return Vector::Zero(x.size());
  return columns * (columns.transpose() * x);
}

}  // namespace hodgeflow
