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

#include "hodgeflow/data.hpp"
#include "hodgeflow/filter.hpp"
#include "oracles.hpp"

using namespace hodgeflow;
using hodgeflow::testing::max_abs;

namespace {

ShiftOperators triangle_ops() { return shift_operators(build_complex({{1, 2, 3}}, 2), 1); }

Vector v3(double a, double b, double c) { return (Vector(3) << a, b, c).finished(); }

}  // namespace

TEST_CASE("single shifts") {
  const auto ops = triangle_ops();
  CHECK(shift_lower(ops, v3(1, 0, 0)) == v3(2, 1, -1));
  CHECK(shift_upper(ops, v3(1, 0, 0)) == v3(1, -1, 1));
  CHECK(shift_lower(ops, Vector::Zero(3)) == Vector::Zero(3));
}

TEST_CASE("apply_filter examples") {
  const auto ops = triangle_ops();
  const Vector e0 = v3(1, 0, 0);
  CHECK(apply_filter(ops, SimplicialFilter::identity(), e0) == e0);
  CHECK(apply_filter(ops, {0.0, {1.0}, {}}, e0) == v3(2, 1, -1));
  CHECK(apply_filter(ops, {1.0, {1.0}, {2.0}}, e0) == v3(5, -1, 1));
  CHECK_THROWS_AS(apply_filter(ops, SimplicialFilter::identity(), Vector::Zero(2)), DimensionMismatch);
}

TEST_CASE("shift counts follow the filter orders") {
  const auto ops = triangle_ops();
  for (int l1 = 0; l1 <= 3; ++l1) {
    for (int l2 = 0; l2 <= 3; ++l2) {
      SimplicialFilter h{0.5, std::vector<double>(l1, 1.0), std::vector<double>(l2, 1.0)};
      ShiftStats stats;
      apply_filter(ops, h, v3(1, 2, 3), &stats);
      CHECK(stats.lower == l1);
      CHECK(stats.upper == l2);
    }
  }
}

TEST_CASE("materialize agrees with apply_filter") {
  const auto ops = triangle_ops();
  CHECK(materialize(ops, SimplicialFilter::identity()) == DenseMatrix::Identity(3, 3));
  CHECK(materialize(ops, {0.0, {1.0}, {}}) == ops.lower.to_dense());

  std::mt19937_64 rng(21);
  const auto big = shift_operators(synth_complex(14, 0.45, 3, 3), 1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = hodgeflow::testing::random_filter(3, 2, rng);
    const Vector x = hodgeflow::testing::random_vector(big.size(), rng);
    const Vector dense = materialize(big, h) * x;
    CHECK(max_abs(Vector(apply_filter(big, h, x) - dense)) <= 1e-10 * std::max(1.0, max_abs(dense)));
  }
}

TEST_CASE("snn_filter") {
  const auto ops = triangle_ops();
  CHECK(snn_filter({1.0}) == SimplicialFilter::identity());
  const SimplicialFilter tied = snn_filter({1.0, 2.0, 3.0});
  CHECK(tied.alpha == tied.beta);

  const DenseMatrix l = add(ops.lower, ops.upper).to_dense();
  std::mt19937_64 rng(8);
  const Vector x = hodgeflow::testing::random_vector(3, rng);
  CHECK(max_abs(Vector(apply_filter(ops, snn_filter({0.0, 1.0}), x) - l * x)) <= 1e-12);
  const Vector expected = hodgeflow::testing::dense_polynomial(l, {1.0, 2.0, 3.0}) * x;
  CHECK(max_abs(Vector(apply_filter(ops, tied, x) - expected)) <= 1e-9);
}

TEST_CASE("locality") {
  // An order-L shift reaches at most L hops away from the impulse.
  const auto x = synth_complex(16, 0.35, 2, 5);
  const auto ops = shift_operators(x, 1);
  // Union of the two adjacency patterns; L_l + L_u can cancel entries.
  const DenseMatrix reach = ops.lower.to_dense().cwiseAbs() + ops.upper.to_dense().cwiseAbs();
  const auto dist = hodgeflow::testing::hop_distances(reach, 0);
  for (int order = 0; order <= 3; ++order) {
    const SimplicialFilter h{1.0, std::vector<double>(order, 1.0), std::vector<double>(order, 1.0)};
    const Vector y = apply_filter(ops, h, Vector::Unit(ops.size(), 0));
    for (Index i = 0; i < y.size(); ++i) {
      if (dist[i] < 0 || dist[i] > order) CHECK(y[i] == 0.0);
    }
  }
}

TEST_CASE("linearity") {
  std::mt19937_64 rng(12);
  const auto ops = shift_operators(synth_complex(12, 0.5, 3, 9), 1);
  const auto h = hodgeflow::testing::random_filter(2, 2, rng);
  const Vector x = hodgeflow::testing::random_vector(ops.size(), rng);
  const Vector y = hodgeflow::testing::random_vector(ops.size(), rng);
  const Vector lhs = apply_filter(ops, h, 2.5 * x - 0.75 * y);
  const Vector rhs = 2.5 * apply_filter(ops, h, x) - 0.75 * apply_filter(ops, h, y);
  CHECK(max_abs(Vector(lhs - rhs)) <= 1e-10 * std::max(1.0, max_abs(rhs)));
}

TEST_CASE("json round trip") {
  const SimplicialFilter h{0.25, {1.0, -2.0}, {3.5}};
  const nlohmann::json j = h;
  CHECK(j.at("epsilon") == 0.25);
  CHECK(j.get<SimplicialFilter>() == h);
}
