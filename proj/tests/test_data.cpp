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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "hodgeflow/data.hpp"
#include "hodgeflow/spectral.hpp"
#include "oracles.hpp"

using namespace hodgeflow;
using hodgeflow::testing::max_abs;

namespace {

Vector v3(double a, double b, double c) { return (Vector(3) << a, b, c).finished(); }

std::vector<double> known_values(const Vector& v, const Mask& mask) {
  std::vector<double> out;
  for (Index i = 0; i < v.size(); ++i)
    if (mask[i]) out.push_back(v[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("coauthorship signals") {
  const auto d = build_coauthorship({{{1, 2}, 10.0}, {{1, 2, 3}, 5.0}}, 2);
  const auto& x = d.complex;
  CHECK(x.counts() == std::vector<Index>{3, 3, 1});
  CHECK(d.signals[1][*x.index_of({1, 2})] == 10.0);
  CHECK(d.signals[1][*x.index_of({1, 3})] == 0.0);
  CHECK(d.signals[1][*x.index_of({2, 3})] == 0.0);
  CHECK(d.signals[2][0] == 5.0);
  CHECK(d.signals[0] == Vector::Zero(3));
}

TEST_CASE("coauthorship edge cases") {
  CHECK_THROWS_AS(build_coauthorship({}, 2), InvalidArgument);
  CHECK_THROWS_AS(build_coauthorship({{{}, 1.0}}, 2), FormatError);
  CHECK_THROWS_AS(build_coauthorship({{{1, 2}, -1.0}}, 2), FormatError);

  const auto dup = build_coauthorship({{{2, 1}, 3.0}, {{1, 2}, 4.0}}, 1);
  CHECK(dup.signals[1][0] == 7.0);

  const auto skipped = build_coauthorship({{{1, 2}, 1.0}, {{1, 2, 3, 4}, 9.0}}, 2);
  CHECK(skipped.warnings.size() == 1);
  CHECK(skipped.complex.counts() == std::vector<Index>{2, 1, 0});
}

TEST_CASE("coauthorship JSON") {
  const auto j = nlohmann::json::parse(R"({"format": 1, "K": 2,
    "papers": [{"authors": [1, 2], "citations": 10}, {"authors": [1, 2, 3], "citations": 5}]})");
  const auto a = parse_coauthorship(j);
  const auto b = parse_coauthorship(j);
  CHECK(a.complex == b.complex);
  CHECK(a.signals[2][0] == 5.0);

  CHECK_THROWS_AS(parse_coauthorship(nlohmann::json::parse(R"({"K": 2, "papers": [{"authors": [1]}]})")), FormatError);
  CHECK_THROWS_AS(parse_coauthorship(nlohmann::json::parse(R"({"format": 2, "K": 1, "papers": []})")), FormatError);

  const auto path = std::filesystem::temp_directory_path() / "hodgeflow_test_papers.json";
  std::ofstream(path) << j.dump();
  CHECK(load_coauthorship(path).complex == a.complex);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_coauthorship("/nonexistent/papers.json"), FormatError);
}

TEST_CASE("complex JSON round trip") {
  const auto x = synth_complex(9, 0.5, 3, 4);
  CHECK(parse_complex(complex_to_json(x)) == x);
}

TEST_CASE("median") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({1.0, 2.0}) == 1.5);
  CHECK_THROWS_AS(median({}), InvalidArgument);
}

TEST_CASE("make_task") {
  SUBCASE("no entry missing when the rate rounds down to zero") {
    const auto t = make_task(v3(1, 2, 100), 1, 0.1, 0);
    CHECK(t.missing_count() == 0);
    CHECK(t.input == t.target);
  }
  SUBCASE("median fill of the known entries") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto t = make_task(v3(1, 2, 100), 1, 0.34, seed);
      REQUIRE(t.missing_count() == 1);
      if (t.mask[2] == 0) {
        CHECK(t.input == v3(1, 2, 1.5));
        break;
      }
    }
  }
  SUBCASE("counts, reproducibility and known entries") {
    std::mt19937_64 rng(2);
    const Vector s = hodgeflow::testing::random_vector(57, rng);
    for (double rate : {0.1, 0.2, 0.3, 0.4, 0.5}) {
      const auto t = make_task(s, 1, rate, 3);
      CHECK(t.missing_count() == static_cast<Index>(std::floor(rate * 57)));
      CHECK(make_task(s, 1, rate, 3).mask == t.mask);
      CHECK(known_values(t.input, t.mask) == known_values(t.target, t.mask));
      const double fill = median(known_values(t.target, t.mask));
      for (Index i = 0; i < s.size(); ++i)
        if (!t.mask[i]) CHECK(t.input[i] == fill);
    }
    CHECK(make_task(s, 1, 0.3, 3).mask != make_task(s, 1, 0.3, 4).mask);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(make_task(Vector(0), 1, 0.1, 0), InvalidArgument);
    CHECK_THROWS_AS(make_task(v3(1, 2, 3), 1, 0.0, 0), InvalidArgument);
    CHECK_THROWS_AS(make_task(v3(1, 2, 3), 1, 1.0, 0), InvalidArgument);
  }
}

TEST_CASE("task CSV") {
  const auto t = make_task(v3(1, 2, 100), 1, 0.34, 0);
  const auto path = std::filesystem::temp_directory_path() / "hodgeflow_test_task.csv";
  write_task_csv(t, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "index,target,mask,input");
  std::filesystem::remove(path);
}

TEST_CASE("accuracy") {
  const Mask all{1};
  CHECK(accuracy(Vector::Constant(1, 104.0), Vector::Constant(1, 100.0), all) == 1.0);
  CHECK(accuracy(Vector::Constant(1, 106.0), Vector::Constant(1, 100.0), all) == 0.0);
  CHECK(accuracy(Vector::Constant(1, 0.04), Vector::Zero(1), all) == 1.0);
  CHECK(accuracy(Vector::Constant(1, 0.06), Vector::Zero(1), all) == 0.0);
  CHECK(accuracy(v3(1, 2, 3), v3(1, 2, 3), {1, 1, 1}) == 1.0);
  CHECK(accuracy(v3(1, 50, 3), v3(1, 2, 3), {0, 1, 1}) == 0.5);
  CHECK_THROWS_AS(accuracy(v3(1, 2, 3), v3(1, 2, 3), {0, 0, 0}), InvalidArgument);

  std::mt19937_64 rng(7);
  const Vector target = hodgeflow::testing::random_vector(40, rng, 10.0);
  const Vector pred = target + hodgeflow::testing::random_vector(40, rng, 0.3);
  Mask missing(40);
  for (auto& m : missing) m = rng() % 2;
  missing[0] = 1;
  std::vector<Index> perm(40);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Mask pm(40);
  for (Index i = 0; i < 40; ++i) pm[perm[i]] = missing[i];
  CHECK(accuracy(permute_signal(perm, pred), permute_signal(perm, target), pm) == accuracy(pred, target, missing));
}

TEST_CASE("synth_complex") {
  CHECK(synth_complex(6, 0.0, 2, 0).counts() == std::vector<Index>{6, 0, 0});
  CHECK(synth_complex(4, 1.0, 2, 0).counts() == std::vector<Index>{4, 6, 4});
  CHECK(synth_complex(12, 0.5, 3, 5) == synth_complex(12, 0.5, 3, 5));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto x = synth_complex(12, 0.6, 3, seed);
    for (int k = 1; k < 3; ++k) CHECK(multiply(incidence(x, k), incidence(x, k + 1)).nonzeros() == 0);
  }
}

TEST_CASE("synthetic signals") {
  const auto x = synth_complex(14, 0.5, 3, 1);
  const auto basis = hodge_basis(x, 1);

  const Vector g = synth_signal(x, 1, SignalKind::SmoothGradient, 2);
  const auto eg = sft(basis, g);
  CHECK(max_abs(eg.curl) <= 1e-8 * std::max(1.0, max_abs(g)));
  CHECK(max_abs(eg.harmonic) <= 1e-8 * std::max(1.0, max_abs(g)));

  const Vector c = synth_signal(x, 1, SignalKind::SmoothCurl, 2);
  CHECK(max_abs(sft(basis, c).gradient) <= 1e-8 * std::max(1.0, max_abs(c)));

  const Vector cites = synth_signal(x, 2, SignalKind::CitationLike, 3);
  CHECK(cites.minCoeff() >= 0.0);
  CHECK(cites == cites.array().round().matrix());
  CHECK(synth_signal(x, 2, SignalKind::CitationLike, 3) == cites);

  CHECK_THROWS_AS(synth_signal(x, 0, SignalKind::SmoothGradient, 0), InvalidOrder);
  CHECK_THROWS_AS(synth_signal(x, 3, SignalKind::SmoothCurl, 0), InvalidOrder);
  CHECK(parse_signal_kind("smooth-curl") == SignalKind::SmoothCurl);
  CHECK_THROWS_AS(parse_signal_kind("noise"), InvalidArgument);
}

TEST_CASE("synthetic coauthorship") {
  const auto d = synth_coauthorship({}, 0);
  CHECK(d.complex.max_order() == 3);
  CHECK(d.complex.count(0) <= 40);
  for (const auto& s : d.signals) CHECK(s.minCoeff() >= 0.0);
  const auto again = synth_coauthorship({}, 0);
  CHECK(again.complex == d.complex);
  CHECK(again.signals == d.signals);
}
