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

#include <vector>

#include <nlohmann/json.hpp>

#include "hodgeflow/complex.hpp"

namespace hodgeflow {

/// H = ε I + Σ_l α_l L_lower^l + Σ_l β_l L_upper^l.
///
/// Either coefficient vector may be empty.
struct SimplicialFilter {
  double epsilon = 0.0;
  std::vector<double> alpha;
  std::vector<double> beta;

  int lower_order() const { return static_cast<int>(alpha.size()); }
  int upper_order() const { return static_cast<int>(beta.size()); }
  int length() const { return 1 + lower_order() + upper_order(); }

  static SimplicialFilter identity() { return {1.0, {}, {}}; }

  friend bool operator==(const SimplicialFilter&, const SimplicialFilter&) = default;
};

/// Counts shift invocations; used to check the recursive evaluation cost.
struct ShiftStats {
  int lower = 0;
  int upper = 0;
};

Vector shift_lower(const ShiftOperators& ops, const Vector& x);
Vector shift_upper(const ShiftOperators& ops, const Vector& x);

/// Applies `h` by recursive shifting: L^l x = L (L^{l-1} x). Performs exactly
/// lower_order() lower shifts and upper_order() upper shifts.
Vector apply_filter(const ShiftOperators& ops, const SimplicialFilter& h, const Vector& x,
                    ShiftStats* stats = nullptr);

/// Dense H. Test oracle; never used on the training path.
DenseMatrix materialize(const ShiftOperators& ops, const SimplicialFilter& h);

/// The single-polynomial filter Σ_l h_l L^l written as a simplicial filter
/// with ε = h_0 and α = β = (h_1..h_L). Exact because L_lower L_upper = 0.
SimplicialFilter snn_filter(const std::vector<double>& h);

void to_json(nlohmann::json& j, const SimplicialFilter& h);
void from_json(const nlohmann::json& j, SimplicialFilter& h);

}  // namespace hodgeflow
