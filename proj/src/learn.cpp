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

#include "hodgeflow/learn.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hodgeflow {

namespace {

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void check_mask(const Vector& pred, const Vector& target, const Mask& mask, const char* what) {
  if (pred.size() != target.size() || static_cast<Index>(mask.size()) != target.size()) {
    throw DimensionMismatch(std::string(what) + ": prediction, target and mask lengths differ");
  }
}

// Σ_l L^l a_l by Horner's rule: L(a_1 + L(a_2 + ... + L a_n)).
Vector polynomial_adjoint(const SparseMatrix& op, const std::vector<Vector>& coeffs) {
  if (coeffs.empty()) return Vector();
  Vector acc = coeffs.back();
  for (std::size_t l = coeffs.size() - 1; l-- > 0;) acc = coeffs[l] + spmv(op, acc);
  return spmv(op, acc);
}

}  // namespace

double masked_l1(const Vector& pred, const Vector& target, const Mask& mask) {
  check_mask(pred, target, mask, "masked_l1");
  double loss = 0.0;
  bool any = false;
  for (Index i = 0; i < target.size(); ++i) {
    if (!mask[i]) continue;
    any = true;
    loss += std::abs(pred[i] - target[i]);
  }
  if (!any) throw InvalidArgument("masked_l1: mask has no known entries");
  return loss;
}

GradientSet backward(const ScnnModel& model, const ShiftOperators& ops, const Tape& tape, const Vector& target,
                     const Mask& mask) {
  if (tape.layers.size() != model.layers.size() || tape.layers.empty()) {
    throw InvalidArgument("backward: tape does not come from this model");
  }
  const Index n = ops.size();
  const Vector pred = tape.layers.back().output.col(0);
  check_mask(pred, target, mask, "backward");

  GradientSet grads;
  grads.layers.resize(model.layers.size());

  DenseMatrix upstream(n, 1);
  for (Index i = 0; i < n; ++i) upstream(i, 0) = mask[i] ? sign(pred[i] - target[i]) : 0.0;

  for (std::size_t p = model.layers.size(); p-- > 0;) {
    const ScnnLayer& layer = model.layers[p];
    const LayerTape& t = tape.layers[p];
    if (t.pre_activation.cols() != layer.f_out || t.input.cols() != layer.f_in || t.input.rows() != n) {
      throw InvalidArgument("backward: tape layer " + std::to_string(p) + " does not match the model");
    }
    DenseMatrix delta(n, layer.f_out);
    for (int f = 0; f < layer.f_out; ++f) {
      delta.col(f) = upstream.col(f).cwiseProduct(nonlinearity_derivative(layer.sigma, t.pre_activation.col(f)));
    }

    auto& layer_grads = grads.layers[p];
    layer_grads.resize(layer.filters.size());
    for (int f = 0; f < layer.f_out; ++f) {
      for (int g = 0; g < layer.f_in; ++g) {
        SimplicialFilter& d = layer_grads[static_cast<std::size_t>(f * layer.f_in + g)];
        d.epsilon = delta.col(f).dot(t.input.col(g));
        d.alpha.resize(static_cast<std::size_t>(layer.lower_order));
        d.beta.resize(static_cast<std::size_t>(layer.upper_order));
        for (int l = 0; l < layer.lower_order; ++l) d.alpha[l] = delta.col(f).dot(t.lower_powers[g][l]);
        for (int l = 0; l < layer.upper_order; ++l) d.beta[l] = delta.col(f).dot(t.upper_powers[g][l]);
      }
    }

    if (p == 0) break;
    // Input adjoint Σ_f H^{fg} δ_f; H is symmetric.
    DenseMatrix next(n, layer.f_in);
    for (int g = 0; g < layer.f_in; ++g) {
      Vector eps_sum = Vector::Zero(n);
      std::vector<Vector> lower(static_cast<std::size_t>(layer.lower_order), Vector::Zero(n));
      std::vector<Vector> upper(static_cast<std::size_t>(layer.upper_order), Vector::Zero(n));
      for (int f = 0; f < layer.f_out; ++f) {
        const SimplicialFilter& h = layer.filter(f, g);
        eps_sum += h.epsilon * delta.col(f);
        for (int l = 0; l < layer.lower_order; ++l) lower[l] += h.alpha[l] * delta.col(f);
        for (int l = 0; l < layer.upper_order; ++l) upper[l] += h.beta[l] * delta.col(f);
      }
      Vector col = eps_sum;
      if (!lower.empty()) col += polynomial_adjoint(ops.lower, lower);
      if (!upper.empty()) col += polynomial_adjoint(ops.upper, upper);
      next.col(g) = col;
    }
    upstream = std::move(next);
  }
  return grads;
}

std::vector<double> flatten_parameters(const ScnnModel& model) {
  std::vector<double> out;
  out.reserve(model.parameter_count());
  for (const auto& layer : model.layers) {
    for (const auto& h : layer.filters) {
      out.push_back(h.epsilon);
      out.insert(out.end(), h.alpha.begin(), h.alpha.end());
      if (!model.tied) out.insert(out.end(), h.beta.begin(), h.beta.end());
    }
  }
  return out;
}

void assign_parameters(ScnnModel& model, std::span<const double> params) {
  if (params.size() != model.parameter_count()) {
    throw DimensionMismatch("assign_parameters: expected " + std::to_string(model.parameter_count()) +
                            " values, got " + std::to_string(params.size()));
  }
  std::size_t pos = 0;
  for (auto& layer : model.layers) {
    for (auto& h : layer.filters) {
      h.epsilon = params[pos++];
      for (auto& a : h.alpha) a = params[pos++];
      if (model.tied) {
        h.beta = h.alpha;
      } else {
        for (auto& b : h.beta) b = params[pos++];
      }
    }
  }
}

std::vector<double> flatten_gradient(const ScnnModel& model, const GradientSet& grads) {
  if (grads.layers.size() != model.layers.size()) throw DimensionMismatch("flatten_gradient: layer count mismatch");
  std::vector<double> out;
  out.reserve(model.parameter_count());
  for (std::size_t p = 0; p < model.layers.size(); ++p) {
    if (grads.layers[p].size() != model.layers[p].filters.size()) {
      throw DimensionMismatch("flatten_gradient: filter count mismatch in layer " + std::to_string(p));
    }
    for (const auto& d : grads.layers[p]) {
      out.push_back(d.epsilon);
      if (model.tied) {
        for (std::size_t l = 0; l < d.alpha.size(); ++l) out.push_back(d.alpha[l] + d.beta[l]);
      } else {
        out.insert(out.end(), d.alpha.begin(), d.alpha.end());
        out.insert(out.end(), d.beta.begin(), d.beta.end());
      }
    }
  }
  return out;
}

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads) {
  if (params.size() != grads.size()) throw DimensionMismatch("adam_step: parameter/gradient size mismatch");
  if (state.m.empty() && state.step == 0) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  if (state.m.size() != params.size()) throw DimensionMismatch("adam_step: state size does not match parameters");
  const AdamConfig& c = state.config;
  ++state.step;
  const double correction1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.step));
  const double correction2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = c.beta1 * state.m[i] + (1.0 - c.beta1) * grads[i];
    state.v[i] = c.beta2 * state.v[i] + (1.0 - c.beta2) * grads[i] * grads[i];
    const double m_hat = state.m[i] / correction1;
    const double v_hat = state.v[i] / correction2;
    params[i] -= c.lr * m_hat / (std::sqrt(v_hat) + c.eps);
  }
}

TrainResult train(ScnnModel& model, const ShiftOperators& ops, const ImputationTask& task, const TrainConfig& config) {
  validate(model);
  if (task.target.size() != ops.size()) {
    throw DimensionMismatch("train: task has " + std::to_string(task.target.size()) + " entries, complex order has " +
                            std::to_string(ops.size()));
  }
  TrainResult result;
  result.loss_trace.reserve(static_cast<std::size_t>(std::max(config.iterations, 0)));
  std::vector<double> params = flatten_parameters(model);
  AdamState adam(config.adam, params.size());
  for (int it = 0; it < config.iterations; ++it) {
    const ForwardResult fwd = model_forward(model, ops, task.input);
    const double loss = masked_l1(fwd.output, task.target, task.mask);
    if (!std::isfinite(loss)) {
      throw NumericalError("train: loss became non-finite at iteration " + std::to_string(it));
    }
    result.loss_trace.push_back(loss);
    const auto grads = flatten_gradient(model, backward(model, ops, fwd.tape, task.target, task.mask));
    adam_step(adam, params, grads);
    assign_parameters(model, params);
  }
  return result;
}

namespace {

// Values that carry a kink: LeakyReLU pre-activations and loss residuals on
// known entries.
std::vector<double> kink_values(const ScnnModel& model, const Tape& tape, const Vector& target, const Mask& mask) {
  std::vector<double> out;
  for (std::size_t p = 0; p < model.layers.size(); ++p) {
    if (model.layers[p].sigma.kind != Nonlinearity::Kind::LeakyReLU) continue;
    const auto& z = tape.layers[p].pre_activation;
    out.insert(out.end(), z.data(), z.data() + z.size());
  }
  const Vector pred = tape.layers.back().output.col(0);
  for (Index i = 0; i < target.size(); ++i) {
    if (mask[i]) out.push_back(pred[i] - target[i]);
  }
  return out;
}

}  // namespace

GradCheckReport gradient_check(const ScnnModel& model, const ShiftOperators& ops, const Vector& input,
                               const Vector& target, const Mask& mask, double step, double kink_margin) {
  const ForwardResult base = model_forward(model, ops, input);
  const std::vector<double> analytic = flatten_gradient(model, backward(model, ops, base.tape, target, mask));
  const std::vector<double> base_kinks = kink_values(model, base.tape, target, mask);
  const std::vector<double> theta = flatten_parameters(model);

  GradCheckReport report;
  ScnnModel probe = model;
  std::vector<double> shifted = theta;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    shifted[i] = theta[i] + step;
    assign_parameters(probe, shifted);
    const ForwardResult plus = model_forward(probe, ops, input);
    shifted[i] = theta[i] - step;
    assign_parameters(probe, shifted);
    const ForwardResult minus = model_forward(probe, ops, input);
    shifted[i] = theta[i];

    const auto kp = kink_values(probe, plus.tape, target, mask);
    const auto km = kink_values(probe, minus.tape, target, mask);
    bool near_kink = false;
    for (std::size_t q = 0; q < base_kinks.size() && !near_kink; ++q) {
      if (kp[q] == km[q]) continue;  // unaffected by this coordinate
      near_kink = std::abs(base_kinks[q]) < kink_margin || sign(kp[q]) != sign(km[q]);
    }
    if (near_kink) {
      ++report.skipped;
      continue;
    }
    const double numeric =
        (masked_l1(plus.output, target, mask) - masked_l1(minus.output, target, mask)) / (2.0 * step);
    const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), 1e-2});
    report.max_rel_error = std::max(report.max_rel_error, std::abs(analytic[i] - numeric) / denom);
    ++report.checked;
  }
  return report;
}

GradCheckReport seeded_gradient_check(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const SimplicialComplex x = synth_complex(10, 0.5, 2, seed);
  const ShiftOperators ops = shift_operators(x, 1);
  const Index n = ops.size();

  std::uniform_int_distribution<int> layers(1, 3);
  std::uniform_int_distribution<int> features(1, 4);
  std::uniform_int_distribution<int> orders(0, 2);
  std::uniform_int_distribution<int> kinds(0, 2);
  ModelShape shape;
  shape.order = 1;
  shape.layers = layers(rng);
  shape.features = features(rng);
  shape.lower_order = orders(rng);
  shape.upper_order = orders(rng);
  const int kind = kinds(rng);
  shape.sigma = kind == 0 ? Nonlinearity::leaky_relu() : kind == 1 ? Nonlinearity::tanh() : Nonlinearity::identity();
  const ScnnModel model = init_model(shape, seed ^ 0x5eedULL);

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::bernoulli_distribution known(0.8);
  Vector input(n);
  Vector target(n);
  Mask mask(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    input[i] = gauss(rng);
    target[i] = gauss(rng);
    mask[i] = known(rng) ? 1 : 0;
  }
  if (n > 0 && std::count(mask.begin(), mask.end(), std::uint8_t{1}) == 0) mask[0] = 1;
  return gradient_check(model, ops, input, target, mask);
}

}  // namespace hodgeflow
