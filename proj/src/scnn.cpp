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

#include "hodgeflow/scnn.hpp"

#include <cmath>
#include <random>

namespace hodgeflow {

Nonlinearity Nonlinearity::parse(const std::string& name, double slope) {
  if (name == "leaky_relu" || name == "leakyrelu") return leaky_relu(slope);
  if (name == "tanh") return tanh();
  if (name == "identity") return identity();
  throw InvalidArgument("unknown nonlinearity '" + name + "' (expected leaky_relu, tanh or identity)");
}

std::string Nonlinearity::name() const {
  switch (kind) {
    case Kind::LeakyReLU:
      return "leaky_relu";
    case Kind::Tanh:
      return "tanh";
    case Kind::Identity:
      return "identity";
  }
  return "unknown";
}

Vector apply_nonlinearity(const Nonlinearity& sigma, const Vector& z) {
  switch (sigma.kind) {
    case Nonlinearity::Kind::LeakyReLU:
      return z.unaryExpr([s = sigma.slope](double v) { return v >= 0.0 ? v : s * v; });
    case Nonlinearity::Kind::Tanh:
      return z.array().tanh().matrix();
    case Nonlinearity::Kind::Identity:
      return z;
  }
  throw InvalidArgument("unknown nonlinearity kind");
}

Vector nonlinearity_derivative(const Nonlinearity& sigma, const Vector& z) {
  switch (sigma.kind) {
    case Nonlinearity::Kind::LeakyReLU:
      return z.unaryExpr([s = sigma.slope](double v) { return v > 0.0 ? 1.0 : s; });
    case Nonlinearity::Kind::Tanh:
      return z.unaryExpr([](double v) {
        const double t = std::tanh(v);
        return 1.0 - t * t;
      });
    case Nonlinearity::Kind::Identity:
      return Vector::Ones(z.size());
  }
  throw InvalidArgument("unknown nonlinearity kind");
}

std::size_t ScnnModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers) {
    const std::size_t per_filter = tied ? 1 + static_cast<std::size_t>(layer.lower_order)
                                        : 1 + static_cast<std::size_t>(layer.lower_order + layer.upper_order);
    n += per_filter * layer.filters.size();
  }
  return n;
}

void validate(const ScnnModel& model) {
  if (model.layers.empty()) throw InvalidArgument("model has no layers");
  if (model.layers.front().f_in != 1) throw InvalidArgument("first layer must take a single input feature");
  if (model.layers.back().f_out != 1) throw InvalidArgument("last layer must produce a single output feature");
  for (std::size_t p = 0; p < model.layers.size(); ++p) {
    const auto& layer = model.layers[p];
    const std::string where = "layer " + std::to_string(p) + ": ";
    if (layer.f_in < 1 || layer.f_out < 1) throw InvalidArgument(where + "feature counts must be positive");
    if (p > 0 && model.layers[p - 1].f_out != layer.f_in) {
      throw InvalidArgument(where + "f_in does not match previous layer's f_out");
    }
    if (layer.filters.size() != static_cast<std::size_t>(layer.f_in * layer.f_out)) {
      throw InvalidArgument(where + "filter grid has wrong size");
    }
    if (model.tied && layer.lower_order != layer.upper_order) {
      throw InvalidArgument(where + "tied model needs equal lower and upper orders");
    }
    for (const auto& h : layer.filters) {
      if (h.lower_order() != layer.lower_order || h.upper_order() != layer.upper_order) {
        throw InvalidArgument(where + "filter orders differ from the layer's (L1, L2)");
      }
      if (model.tied && h.alpha != h.beta) throw InvalidArgument(where + "tied model has a filter with alpha != beta");
    }
  }
}

ScnnModel init_model(const ModelShape& shape, std::uint64_t seed) {
  if (shape.layers < 1 || shape.features < 1) throw InvalidArgument("init_model: need at least one layer and one feature");
  if (shape.lower_order < 0 || shape.upper_order < 0) throw InvalidArgument("init_model: negative filter order");
  if (shape.tied && shape.lower_order != shape.upper_order) {
    throw InvalidArgument("init_model: tied filters need lower_order == upper_order");
  }
  std::mt19937_64 rng(seed);
  ScnnModel model;
  model.order = shape.order;
  model.tied = shape.tied;
  for (int p = 0; p < shape.layers; ++p) {
    ScnnLayer layer;
    layer.f_in = p == 0 ? 1 : shape.features;
    layer.f_out = p == shape.layers - 1 ? 1 : shape.features;
    layer.lower_order = shape.lower_order;
    layer.upper_order = shape.upper_order;
    layer.sigma = shape.sigma;
    const int length = shape.tied ? 1 + shape.lower_order : 1 + shape.lower_order + shape.upper_order;
    const double s = 1.0 / std::sqrt(static_cast<double>(layer.f_in * length));
    std::uniform_real_distribution<double> coeff(-s, s);
    for (int i = 0; i < layer.f_in * layer.f_out; ++i) {
      SimplicialFilter h;
      h.epsilon = coeff(rng);
      for (int l = 0; l < shape.lower_order; ++l) h.alpha.push_back(coeff(rng));
      if (shape.tied) {
        h.beta = h.alpha;
      } else {
        for (int l = 0; l < shape.upper_order; ++l) h.beta.push_back(coeff(rng));
      }
      layer.filters.push_back(std::move(h));
    }
    model.layers.push_back(std::move(layer));
  }
  return model;
}

namespace {

std::vector<Vector> powers(const SparseMatrix& op, const Vector& x, int count) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  const Vector* prev = &x;
  for (int l = 0; l < count; ++l) {
    out.push_back(spmv(op, *prev));
    prev = &out.back();
  }
  return out;
}

// Same accumulation order as apply_filter, so a 1x1 layer reproduces it bit for bit.
void accumulate_filter(const SimplicialFilter& h, const Vector& x, const std::vector<Vector>& lower,
                       const std::vector<Vector>& upper, Vector& y) {
  y = h.epsilon * x;
  for (std::size_t l = 0; l < h.alpha.size(); ++l) y += h.alpha[l] * lower[l];
  for (std::size_t l = 0; l < h.beta.size(); ++l) y += h.beta[l] * upper[l];
}

}  // namespace

DenseMatrix layer_forward(const ShiftOperators& ops, const ScnnLayer& layer, const DenseMatrix& inputs,
                          LayerTape* tape) {
  const Index n = ops.size();
  if (inputs.rows() != n || inputs.cols() != layer.f_in) {
    throw DimensionMismatch("layer_forward: input is " + std::to_string(inputs.rows()) + "x" +
                            std::to_string(inputs.cols()) + ", expected " + std::to_string(n) + "x" +
                            std::to_string(layer.f_in));
  }
  std::vector<std::vector<Vector>> lower(static_cast<std::size_t>(layer.f_in));
  std::vector<std::vector<Vector>> upper(static_cast<std::size_t>(layer.f_in));
  std::vector<Vector> columns(static_cast<std::size_t>(layer.f_in));
  for (int g = 0; g < layer.f_in; ++g) {
    columns[g] = inputs.col(g);
    lower[g] = powers(ops.lower, columns[g], layer.lower_order);
    upper[g] = powers(ops.upper, columns[g], layer.upper_order);
  }
  DenseMatrix pre(n, layer.f_out);
  DenseMatrix out(n, layer.f_out);
  Vector z(n);
  Vector y(n);
  for (int f = 0; f < layer.f_out; ++f) {
    z.setZero();
    for (int g = 0; g < layer.f_in; ++g) {
      accumulate_filter(layer.filter(f, g), columns[g], lower[g], upper[g], y);
      z += y;
    }
    pre.col(f) = z;
    out.col(f) = apply_nonlinearity(layer.sigma, z);
  }
  if (tape) {
    tape->input = inputs;
    tape->lower_powers = std::move(lower);
    tape->upper_powers = std::move(upper);
    tape->pre_activation = pre;
    tape->output = out;
  }
  return out;
}

Vector Tape::intermediate(const ScnnModel& model, int p, int f, int g) const {
  const LayerTape& t = layers.at(static_cast<std::size_t>(p));
  const ScnnLayer& layer = model.layers.at(static_cast<std::size_t>(p));
  Vector y;
  accumulate_filter(layer.filter(f, g), t.input.col(g), t.lower_powers[g], t.upper_powers[g], y);
  return y;
}

ForwardResult model_forward(const ScnnModel& model, const ShiftOperators& ops, const Vector& x0) {
  if (x0.size() != ops.size()) {
    throw DimensionMismatch("model_forward: input has " + std::to_string(x0.size()) + " entries, expected " +
                            std::to_string(ops.size()));
  }
  ForwardResult result;
  result.tape.layers.resize(model.layers.size());
  DenseMatrix current = x0;
  for (std::size_t p = 0; p < model.layers.size(); ++p) {
    current = layer_forward(ops, model.layers[p], current, &result.tape.layers[p]);
  }
  result.output = current.col(0);
  return result;
}

Vector predict(const ScnnModel& model, const ShiftOperators& ops, const Vector& x0) {
  if (x0.size() != ops.size()) throw DimensionMismatch("predict: input length does not match operator size");
  DenseMatrix current = x0;
  for (const auto& layer : model.layers) current = layer_forward(ops, layer, current);
  return current.col(0);
}

void to_json(nlohmann::json& j, const ScnnModel& model) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : model.layers) {
    layers.push_back({{"f_in", layer.f_in},
                      {"f_out", layer.f_out},
                      {"lower_order", layer.lower_order},
                      {"upper_order", layer.upper_order},
                      {"nonlinearity", {{"kind", layer.sigma.name()}, {"slope", layer.sigma.slope}}},
                      {"filters", layer.filters}});
  }
  j = nlohmann::json{{"format", 1}, {"order", model.order}, {"tied", model.tied}, {"layers", layers}};
}

void from_json(const nlohmann::json& j, ScnnModel& model) {
  try {
    if (j.value("format", 1) != 1) throw FormatError("model JSON: unsupported format version");
    model.order = j.at("order").get<int>();
    model.tied = j.value("tied", false);
    model.layers.clear();
    for (const auto& jl : j.at("layers")) {
      ScnnLayer layer;
      layer.f_in = jl.at("f_in").get<int>();
      layer.f_out = jl.at("f_out").get<int>();
      layer.lower_order = jl.at("lower_order").get<int>();
      layer.upper_order = jl.at("upper_order").get<int>();
      const auto& nl = jl.at("nonlinearity");
      layer.sigma = Nonlinearity::parse(nl.at("kind").get<std::string>(), nl.value("slope", 0.01));
      layer.filters = jl.at("filters").get<std::vector<SimplicialFilter>>();
      model.layers.push_back(std::move(layer));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("model JSON: ") + e.what());
  }
  validate(model);
}

}  // namespace hodgeflow
