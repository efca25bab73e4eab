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

#include <doctest.h>

#include <random>

#include "hodgeflow/complex.hpp"
#include "oracles.hpp"

using namespace hodgeflow;
using hodgeflow::testing::max_abs;

namespace {

SimplicialComplex filled_triangle() { return build_complex({{1, 2, 3}}, 2); }

}  // namespace

TEST_CASE("from_triplets sums duplicates, drops zeros and sorts columns") {
  const auto m = SparseMatrix::from_triplets(2, 3, {{0, 2, 1.0}, {0, 0, 2.0}, {0, 2, -1.0}, {1, 1, 3.0}, {1, 1, 1.0}});
  CHECK(m.nonzeros() == 2);
  CHECK(m.coeff(0, 0) == 2.0);
  CHECK(m.coeff(0, 2) == 0.0);
  CHECK(m.coeff(1, 1) == 4.0);
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, {{2, 0, 1.0}}), DimensionMismatch);
}

TEST_CASE("spmv") {
  SUBCASE("identity") {
    const Vector x = (Vector(4) << 1.5, -2.0, 0.0, 7.0).finished();
    CHECK(spmv(SparseMatrix::identity(4), x) == x);
  }
  SUBCASE("filled-triangle lower Laplacian") {
    const auto ops = shift_operators(filled_triangle(), 1);
    const Vector y = spmv(ops.lower, Vector::Unit(3, 0));
    CHECK(y == (Vector(3) << 2, 1, -1).finished());
  }
  SUBCASE("matches dense product on random matrices") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Index> pos(0, 39);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Triplet<double>> t;
      for (int i = 0; i < 200; ++i) t.push_back({pos(rng), pos(rng) % 30, g(rng)});
      const auto a = SparseMatrix::from_triplets(40, 30, t);
      const Vector x = hodgeflow::testing::random_vector(30, rng);
      const Vector dense = a.to_dense() * x;
      CHECK(max_abs(spmv(a, x) - dense) <= 1e-12 * std::max(1.0, max_abs(dense)));
    }
  }
  SUBCASE("dimension mismatch") { CHECK_THROWS_AS(spmv(SparseMatrix::identity(3), Vector::Zero(2)), DimensionMismatch); }
}

TEST_CASE("integer sparse products are exact") {
  const auto b1 = incidence(filled_triangle(), 1);
  const auto b2 = incidence(filled_triangle(), 2);
  CHECK(multiply(b1, b2).nonzeros() == 0);
  CHECK(multiply(b1.transpose(), b1).to_dense() == b1.to_dense().transpose() * b1.to_dense());
}

TEST_CASE("sym_eig") {
  SUBCASE("diagonal") {
    const DenseMatrix a = Vector((Vector(3) << 1, 2, 3).finished()).asDiagonal();
    const auto r = sym_eig(a);
    CHECK(r.eigenvalues.isApprox((Vector(3) << 1, 2, 3).finished()));
    CHECK(max_abs(DenseMatrix(r.eigenvectors.cwiseAbs()) - DenseMatrix::Identity(3, 3)) < 1e-12);
  }
  SUBCASE("filled triangle L1 = 3I") {
    const auto r = sym_eig(laplacians(filled_triangle(), 1).full.to_dense());
    CHECK(max_abs(r.eigenvalues - Vector::Constant(3, 3.0)) < 1e-12);
  }
  SUBCASE("filled triangle upper Laplacian is rank one") {
    const auto r = sym_eig(laplacians(filled_triangle(), 1).upper.to_dense());
    CHECK(max_abs(r.eigenvalues - (Vector(3) << 0, 0, 3).finished()) < 1e-12);
    const Vector top = r.eigenvectors.col(2);
    const Vector expected = (Vector(3) << 1, -1, 1).finished() / std::sqrt(3.0);
    CHECK(std::abs(std::abs(top.dot(expected)) - 1.0) < 1e-12);
  }
  SUBCASE("rejects non-symmetric input") {
    DenseMatrix a = DenseMatrix::Identity(3, 3);
    a(0, 1) = 1e-6;
    CHECK_THROWS_AS(sym_eig(a), InvalidArgument);
  }
  SUBCASE("residual bounds on random symmetric matrices up to 300x300") {
    std::mt19937_64 rng(5);
    for (Index n : {1, 7, 50, 300}) {
      const DenseMatrix g = DenseMatrix::NullaryExpr(n, n, [&]() { return std::normal_distribution<double>()(rng); });
      const DenseMatrix a = g + g.transpose();
      const auto r = sym_eig(a);
      const DenseMatrix& q = r.eigenvectors;
      const double scale = max_abs(a);
      CHECK(max_abs(DenseMatrix(q.transpose() * q - DenseMatrix::Identity(n, n))) <= 1e-8);
      CHECK(max_abs(DenseMatrix(a * q - q * r.eigenvalues.asDiagonal())) <= 1e-7 * scale);
      CHECK(max_abs(DenseMatrix(q * r.eigenvalues.asDiagonal() * q.transpose() - a)) <= 1e-7 * scale);
      for (Index i = 1; i < n; ++i) CHECK(r.eigenvalues[i - 1] <= r.eigenvalues[i]);
    }
  }
}

TEST_CASE("largest_eigenvalue agrees with the dense solver") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = build_complex({{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {0, 4}, {4, 5, 6}}, 2);
    const auto l = laplacians(x, 1).full.cast<double>();
    const auto r = sym_eig(l.to_dense());
    CHECK(largest_eigenvalue(l) == doctest::Approx(r.eigenvalues[r.eigenvalues.size() - 1]).epsilon(1e-9));
  }
  CHECK(largest_eigenvalue(SparseMatrix(4, 4)) == 0.0);
}

TEST_CASE("project_onto") {
  std::mt19937_64 rng(2);
  const DenseMatrix q = Eigen::HouseholderQR<DenseMatrix>(DenseMatrix::Random(6, 6)).householderQ();
  const DenseMatrix sub = q.leftCols(3);
  const Vector x = hodgeflow::testing::random_vector(6, rng);
  const Vector p = project_onto(sub, x);
  CHECK(max_abs(project_onto(sub, p) - p) <= 1e-10);
  CHECK(max_abs(project_onto(q, x) - x) <= 1e-10);

  const DenseMatrix u = (Vector(3) << 1, -1, 1).finished() / std::sqrt(3.0);
  const Vector proj = project_onto(u, Vector::Unit(3, 0));
  CHECK(max_abs(proj - (Vector(3) << 1, -1, 1).finished() / 3.0) <= 1e-15);
}
