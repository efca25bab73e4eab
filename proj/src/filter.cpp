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

#include "hodgeflow/filter.hpp"

namespace hodgeflow {

namespace {

void check_length(const ShiftOperators& ops, const Vector& x, const char* what) {
  if (x.size() != ops.size()) {
    throw DimensionMismatch(std::string(what) + ": signal has " + std::to_string(x.size()) +
                            " entries, operator expects " + std::to_string(ops.size()));
  }
}

}  // namespace

Vector shift_lower(const ShiftOperators& ops, const Vector& x) {
  check_length(ops, x, "shift_lower");
  return spmv(ops.lower, x);
}

Vector shift_upper(const ShiftOperators& ops, const Vector& x) {
  check_length(ops, x, "shift_upper");
  return spmv(ops.upper, x);
}

Vector apply_filter(const ShiftOperators& ops, const SimplicialFilter& h, const Vector& x, ShiftStats* stats) {
  check_length(ops, x, "apply_filter");
  Vector y = h.epsilon * x;
  Vector power = x;
  Vector next;
  for (double a : h.alpha) {
    spmv_into(ops.lower, power, next);
    power.swap(next);
    y += a * power;
    if (stats) ++stats->lower;
  }
  power = x;
  for (double b : h.beta) {
    spmv_into(ops.upper, power, next);
    power.swap(next);
    y += b * power;
    if (stats) ++stats->upper;
  }
  return y;
}

DenseMatrix materialize(const ShiftOperators& ops, const SimplicialFilter& h) {
  const Index n = ops.size();
  const DenseMatrix lower = ops.lower.to_dense();
  const DenseMatrix upper = ops.upper.to_dense();
  DenseMatrix out = h.epsilon * DenseMatrix::Identity(n, n);
  DenseMatrix power = DenseMatrix::Identity(n, n);
  for (double a : h.alpha) {
    power = lower * power;
    out += a * power;
  }
  power = DenseMatrix::Identity(n, n);
  for (double b : h.beta) {
    power = upper * power;
    out += b * power;
  }
  return out;
}

SimplicialFilter snn_filter(const std::vector<double>& h) {
  if (h.empty()) return {0.0, {}, {}};
  std::vector<double> tail(h.begin() + 1, h.end());
  return {h.front(), tail, tail};
}

void to_json(nlohmann::json& j, const SimplicialFilter& h) {
  j = nlohmann::json{{"epsilon", h.epsilon}, {"alpha", h.alpha}, {"beta", h.beta}};
}

void from_json(const nlohmann::json& j, SimplicialFilter& h) {
  try {
    h.epsilon = j.at("epsilon").get<double>();
    h.alpha = j.value("alpha", std::vector<double>{});
    h.beta = j.value("beta", std::vector<double>{});
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("filter JSON: ") + e.what());
  }
}

}  // namespace hodgeflow
