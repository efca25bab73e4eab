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
#include <set>

#include "hodgeflow/complex.hpp"
#include "hodgeflow/data.hpp"
#include "oracles.hpp"

using namespace hodgeflow;
using hodgeflow::testing::max_abs;

namespace {

SimplicialComplex filled_triangle() { return build_complex({{1, 2, 3}}, 2); }

DenseMatrix mat3(std::initializer_list<double> v) {
  DenseMatrix m(3, 3);
  auto it = v.begin();
  for (Index r = 0; r < 3; ++r)
    for (Index c = 0; c < 3; ++c) m(r, c) = *it++;
  return m;
}

std::set<std::pair<Index, Index>> er_edges(Index n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::set<std::pair<Index, Index>> edges;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (coin(rng)) edges.insert({i, j});
  return edges;
}

}  // namespace

TEST_CASE("closure counts") {
  CHECK(filled_triangle().counts() == std::vector<Index>{3, 3, 1});
  CHECK(build_complex({{1, 2}, {2, 3}}, 2).counts() == std::vector<Index>{3, 2, 0});
  CHECK(filled_triangle().simplices(1) == std::vector<Simplex>{{1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("closure is idempotent and order independent") {
  const auto x = build_complex({{3, 1, 2}, {2, 4}}, 2);
  std::vector<std::vector<Index>> all;
  for (int k = 0; k <= x.max_order(); ++k)
    for (const auto& s : x.simplices(k)) all.push_back(s);
  std::reverse(all.begin(), all.end());
  CHECK(build_complex(all, 2) == x);
}

TEST_CASE("invalid simplex lists") {
  CHECK_THROWS_AS(build_complex({{}}, 2), InvalidArgument);
  CHECK_THROWS_AS(build_complex({{-1, 2}}, 2), InvalidArgument);
  CHECK_THROWS_AS(build_complex({{0, 1, 2, 3}}, 2), InvalidArgument);
}

TEST_CASE("clique complex of a seeded Erdos-Renyi graph matches brute force") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto edges = er_edges(10, 0.5, seed);
    const auto x = clique_complex(10, {edges.begin(), edges.end()}, 3);
    CHECK(x.counts() == hodgeflow::testing::brute_force_clique_counts(10, edges, 3));
  }
}

TEST_CASE("filled triangle incidence matrices") {
  const auto x = filled_triangle();
  const auto b1 = incidence(x, 1).to_dense();
  const auto b2 = incidence(x, 2).to_dense();
  CHECK(b1 == mat3({-1, -1, 0, 1, 0, -1, 0, 1, 1}));
  CHECK(b2 == (Vector(3) << 1, -1, 1).finished());
  CHECK(max_abs(DenseMatrix(b1 * b2)) == 0.0);
  CHECK(b1.colwise().sum().cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(incidence(x, 0), InvalidOrder);
  CHECK_THROWS_AS(incidence(x, 3), InvalidOrder);
}

TEST_CASE("incidence matches the dense oracle on random complexes") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto x = synth_complex(12, 0.5, 3, seed);
    x = reorient_complex(x, hodgeflow::testing::random_orientations(x, rng));
    for (int k = 1; k <= 3; ++k) {
      if (x.count(k) == 0) continue;
      CHECK(incidence(x, k).to_dense() == hodgeflow::testing::dense_incidence(x, k));
    }
    for (int k = 1; k < 3; ++k) CHECK(multiply(incidence(x, k), incidence(x, k + 1)).nonzeros() == 0);
  }
}

TEST_CASE("filled triangle Laplacians") {
  const auto l = laplacians(filled_triangle(), 1);
  CHECK(l.lower.to_dense() == mat3({2, 1, -1, 1, 2, 1, -1, 1, 2}));
  CHECK(l.upper.to_dense() == mat3({1, -1, 1, -1, 1, -1, 1, -1, 1}));
  CHECK(l.full.to_dense() == 3.0 * DenseMatrix::Identity(3, 3));
  CHECK(multiply(l.lower, l.upper).nonzeros() == 0);
}

TEST_CASE("boundary orders") {
  const auto x = filled_triangle();
  CHECK(laplacians(x, 0).lower.nonzeros() == 0);
  CHECK(laplacians(x, 2).upper.nonzeros() == 0);
  CHECK_THROWS_AS(laplacians(x, 3), InvalidOrder);
}

TEST_CASE("path graph node Laplacian") {
  const auto l = laplacians(build_complex({{1, 2}, {2, 3}}, 1), 0);
  CHECK(l.full.to_dense() == mat3({1, -1, 0, -1, 2, -1, 0, -1, 1}));
}

TEST_CASE("permutation conjugates the Laplacians") {
  const auto x = filled_triangle();
  SUBCASE("identity") { CHECK(permute_complex(x, identity_permutations(x)) == x); }
  SUBCASE("swap the first two edges") {
    auto p = identity_permutations(x);
    p.perms[1] = {1, 0, 2};
    const auto before = laplacians(x, 1).lower.to_dense();
    const auto after = laplacians(permute_complex(x, p), 1).lower.to_dense();
    DenseMatrix expected = before;
    expected.row(0).swap(expected.row(1));
    expected.col(0).swap(expected.col(1));
    CHECK(after == expected);
  }
  SUBCASE("random permutations on an ER clique complex") {
    std::mt19937_64 rng(4);
    const auto y = synth_complex(10, 0.5, 3, 1);
    const auto p = hodgeflow::testing::random_permutations(y, rng);
    const auto z = permute_complex(y, p);
    for (int k = 1; k < 3; ++k) CHECK(multiply(incidence(z, k), incidence(z, k + 1)).nonzeros() == 0);
    for (int k = 0; k <= 3; ++k) {
      const auto a = laplacians(y, k).full.to_dense();
      const auto b = laplacians(z, k).full.to_dense();
      for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) CHECK(b(p.perms[k][i], p.perms[k][j]) == a(i, j));
    }
  }
  SUBCASE("bad maps") {
    auto p = identity_permutations(x);
    p.perms[1] = {0, 0, 2};
    CHECK_THROWS_AS(permute_complex(x, p), InvalidArgument);
    p.perms[1] = {0, 1};
    CHECK_THROWS_AS(permute_complex(x, p), DimensionMismatch);
  }
}

TEST_CASE("reorientation flips incidence rows and columns") {
  const auto x = filled_triangle();
  CHECK(reorient_complex(x, identity_orientations(x)) == x);

  auto d = identity_orientations(x);
  d.signs[1][1] = -1;  // edge (1,3)
  const auto y = reorient_complex(x, d);
  DenseMatrix b1 = incidence(x, 1).to_dense();
  DenseMatrix b2 = incidence(x, 2).to_dense();
  b1.col(1) *= -1.0;
  b2.row(1) *= -1.0;
  CHECK(incidence(y, 1).to_dense() == b1);
  CHECK(incidence(y, 2).to_dense() == b2);

  const auto ev = sym_eig(laplacians(y, 1).lower.to_dense()).eigenvalues;
  const auto ev0 = sym_eig(laplacians(x, 1).lower.to_dense()).eigenvalues;
  CHECK(max_abs(Vector(ev - ev0)) <= 1e-12);

  auto bad = identity_orientations(x);
  bad.signs[0][0] = -1;
  CHECK_THROWS_AS(reorient_complex(x, bad), InvalidArgument);
  bad = identity_orientations(x);
  bad.signs[2][0] = 0;
  CHECK_THROWS_AS(reorient_complex(x, bad), InvalidArgument);
}

TEST_CASE("neighbors") {
  SUBCASE("filled triangle") {
    const auto n = neighbors(filled_triangle(), 1, 0);
    CHECK(n.lower == std::vector<Index>{1, 2});
    CHECK(n.upper == std::vector<Index>{1, 2});
  }
  SUBCASE("disconnected edges") {
    const auto n = neighbors(build_complex({{1, 2}, {3, 4}}, 1), 1, 0);
    CHECK(n.lower.empty());
    CHECK(n.upper.empty());
  }
  SUBCASE("path graph") {
    const auto x = build_complex({{1, 2}, {2, 3}}, 2);
    CHECK(neighbors(x, 1, 0).lower == std::vector<Index>{1});
    CHECK(neighbors(x, 1, 1).lower == std::vector<Index>{0});
    CHECK(neighbors(x, 1, 0).upper.empty());
  }
  CHECK_THROWS_AS(neighbors(filled_triangle(), 1, 3), InvalidArgument);
}

TEST_CASE("signal helpers") {
  const Vector x = (Vector(3) << 1, 2, 3).finished();
  CHECK(permute_signal({2, 0, 1}, x) == (Vector(3) << 2, 3, 1).finished());
  CHECK(orient_signal({1, -1, 1}, x) == (Vector(3) << 1, -2, 3).finished());
}

TEST_CASE("normalized operators have unit spectral radius") {
  const auto ops = normalized(shift_operators(synth_complex(15, 0.4, 3, 2), 1));
  const auto r = sym_eig(add(ops.lower, ops.upper).to_dense());
  CHECK(r.eigenvalues.maxCoeff() == doctest::Approx(1.0).epsilon(1e-9));
}
