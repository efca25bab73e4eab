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
#include <span>
#include <vector>

#include "hodgeflow/data.hpp"
#include "hodgeflow/scnn.hpp"

namespace hodgeflow {

/// Gradient of the loss w.r.t. every filter coefficient, laid out exactly
/// like the model: layers[p][f * f_in + g] holds (∂ε, ∂α, ∂β).
struct GradientSet {
  std::vector<std::vector<SimplicialFilter>> layers;
};

/// Σ over known entries of |pred - target|. Throws if no entry is known.
double masked_l1(const Vector& pred, const Vector& target, const Mask& mask);

/// Reverse-mode gradient of masked_l1 through the recorded forward pass.
/// d|r|/dr at r = 0 is taken as 0.
GradientSet backward(const ScnnModel& model, const ShiftOperators& ops, const Tape& tape, const Vector& target,
                     const Mask& mask);

/// Free parameters as one flat vector. Per filter: [ε, α..., β...], or
/// [ε, h...] for a tied model.
std::vector<double> flatten_parameters(const ScnnModel& model);
void assign_parameters(ScnnModel& model, std::span<const double> params);
/// Gradient in the flat layout of flatten_parameters. A tied coefficient
/// receives ∂α_l + ∂β_l.
std::vector<double> flatten_gradient(const ScnnModel& model, const GradientSet& grads);

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  AdamConfig config;
  std::vector<double> m;
  std::vector<double> v;
  std::int64_t step = 0;

  AdamState() = default;
  AdamState(AdamConfig c, std::size_t n) : config(c), m(n, 0.0), v(n, 0.0) {}
};

/// Bias-corrected Adam update of `params` in place.
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads);

struct TrainConfig {
  AdamConfig adam;
  int iterations = 1000;
};

struct TrainResult {
  std::vector<double> loss_trace;  // loss before each update
};

/// Full-batch training on the known entries of `task`. Throws NumericalError
/// if the loss becomes non-finite.
TrainResult train(ScnnModel& model, const ShiftOperators& ops, const ImputationTask& task, const TrainConfig& config);

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // coordinates whose perturbation moves a value across a kink
};

/// Analytic gradient vs central finite differences, coordinate by coordinate.
/// Per-coordinate error is |a - n| / max(|a|, |n|, 1e-2), so 1e-5 means
/// within max(1e-5 relative, 1e-7 absolute). Coordinates that move a
/// LeakyReLU pre-activation or a loss residual lying within `kink_margin` of
/// zero (or across it) are skipped.
GradCheckReport gradient_check(const ScnnModel& model, const ShiftOperators& ops, const Vector& input,
                               const Vector& target, const Mask& mask, double step = 1e-6, double kink_margin = 1e-4);

/// Gradient check on a seeded random problem: clique complex of G(10, 0.5)
/// with K = 2, edge signals, P <= 3 layers, F <= 4 features, filter orders
/// <= 2, random nonlinearity and mask.
GradCheckReport seeded_gradient_check(std::uint64_t seed);

}  // namespace hodgeflow
