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

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hodgeflow/filter.hpp"

namespace hodgeflow {

struct Nonlinearity {
  enum class Kind { LeakyReLU, Tanh, Identity };

  Kind kind = Kind::LeakyReLU;
  double slope = 0.01;  // LeakyReLU negative-side slope

  static Nonlinearity leaky_relu(double slope = 0.01) { return {Kind::LeakyReLU, slope}; }
  static Nonlinearity tanh() { return {Kind::Tanh, 0.0}; }
  static Nonlinearity identity() { return {Kind::Identity, 0.0}; }

  /// Parses "leaky_relu", "tanh" or "identity"; throws InvalidArgument otherwise.
  static Nonlinearity parse(const std::string& name, double slope = 0.01);
  std::string name() const;

  friend bool operator==(const Nonlinearity&, const Nonlinearity&) = default;
};

Vector apply_nonlinearity(const Nonlinearity& sigma, const Vector& z);
/// σ'(z) elementwise. LeakyReLU uses the negative-side slope at z = 0.
Vector nonlinearity_derivative(const Nonlinearity& sigma, const Vector& z);

/// One bank of f_out x f_in filters followed by σ. All filters of a layer
/// share (lower_order, upper_order). Filter (f, g) maps input feature g to
/// output feature f and lives at filters[f * f_in + g].
struct ScnnLayer {
  int f_in = 1;
  int f_out = 1;
  int lower_order = 0;
  int upper_order = 0;
  Nonlinearity sigma;
  std::vector<SimplicialFilter> filters;

  const SimplicialFilter& filter(int f, int g) const { return filters[static_cast<std::size_t>(f * f_in + g)]; }
  SimplicialFilter& filter(int f, int g) { return filters[static_cast<std::size_t>(f * f_in + g)]; }
};

/// Stack of layers with widths 1 -> F -> ... -> F -> 1.
///
/// A tied model constrains α = β in every filter; it is the single-polynomial
/// SNN baseline expressed as an SCNN, and its free parameters per filter are
/// (ε, h_1..h_L).
struct ScnnModel {
  int order = 1;
  bool tied = false;
  std::vector<ScnnLayer> layers;

  std::size_t parameter_count() const;
};

struct ModelShape {
  int order = 1;
  int layers = 3;      // P
  int features = 30;   // F
  int lower_order = 2; // L1
  int upper_order = 2; // L2
  Nonlinearity sigma;
  bool tied = false;   // requires lower_order == upper_order
};

/// Coefficients i.i.d. uniform on [-s, s], s = (f_in * filter_length)^{-1/2}.
/// Deterministic per seed.
ScnnModel init_model(const ModelShape& shape, std::uint64_t seed);

/// Throws InvalidArgument if feature widths or filter orders are inconsistent.
void validate(const ScnnModel& model);

/// Everything backward needs from one layer's forward pass.
struct LayerTape {
  DenseMatrix input;                            // N x f_in
  std::vector<std::vector<Vector>> lower_powers; // [g][l-1] = L_lower^l x_g
  std::vector<std::vector<Vector>> upper_powers; // [g][l-1] = L_upper^l x_g
  DenseMatrix pre_activation;                   // N x f_out, Σ_g z^{fg}
  DenseMatrix output;                           // N x f_out
};

struct Tape {
  std::vector<LayerTape> layers;

  /// z_p^{fg} = H_p^{fg} x_{p-1}^g rebuilt from the cached shift powers.
  Vector intermediate(const ScnnModel& model, int p, int f, int g) const;
};

DenseMatrix layer_forward(const ShiftOperators& ops, const ScnnLayer& layer, const DenseMatrix& inputs,
                          LayerTape* tape = nullptr);

struct ForwardResult {
  Vector output;
  Tape tape;
};

ForwardResult model_forward(const ScnnModel& model, const ShiftOperators& ops, const Vector& x0);
/// Forward without recording a tape.
Vector predict(const ScnnModel& model, const ShiftOperators& ops, const Vector& x0);

void to_json(nlohmann::json& j, const ScnnModel& model);
void from_json(const nlohmann::json& j, ScnnModel& model);

}  // namespace hodgeflow
