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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hodgeflow/data.hpp"
#include "hodgeflow/learn.hpp"

namespace hodgeflow {

enum class ModelKind { Scnn, Snn };

ModelKind parse_model_kind(const std::string& name);
std::string model_kind_name(ModelKind kind);

/// One experiment: data source, task grid, architecture and optimizer.
struct ExperimentConfig {
  std::optional<std::filesystem::path> dataset;  // coauthorship or complex JSON
  CoauthorshipSynthParams synth;                 // used when no dataset path
  std::uint64_t data_seed = 0;
  int order = 2;
  std::vector<double> rates{0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<ModelKind> models{ModelKind::Scnn, ModelKind::Snn};
  int layers = 3;
  int features = 30;
  int lower_order = 2;
  int upper_order = 2;
  Nonlinearity sigma;
  TrainConfig training;
  bool normalize_laplacians = true;  // train on L / λ_max(L_k)
  std::filesystem::path out = "hodgeflow-out";
};

/// Throws InvalidArgument unless rates lie in (0, 1), seeds and models are
/// nonempty and the shape is positive.
void validate(const ExperimentConfig& config);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Architecture for a model kind. The SNN baseline is the tied SCNN with one
/// polynomial of degree L1 + L2, so both kinds have filters of the same
/// length 1 + L1 + L2.
ModelShape model_shape(const ExperimentConfig& config, ModelKind kind);

/// Dataset from the configured path (coauthorship JSON, or complex JSON with a
/// synthetic citation-like signal on every order) or the synthetic generator.
CoauthorshipDataset load_dataset(const ExperimentConfig& config);

struct CellResult {
  ModelKind model = ModelKind::Scnn;
  double rate = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> loss_trace;
  double final_loss = 0.0;  // masked ℓ1 of the trained model
  double accuracy = 0.0;    // on missing entries
};

/// Shift operators the models are trained on for the configured order.
ShiftOperators training_operators(const ExperimentConfig& config, const SimplicialComplex& x);

/// Trains one (model, rate, seed) cell: task and initialization both use `seed`.
CellResult run_cell(const ExperimentConfig& config, const CoauthorshipDataset& data, ModelKind kind, double rate,
                    std::uint64_t seed, ScnnModel* trained = nullptr, ImputationTask* task_out = nullptr);

/// Every (rate, seed, model) cell, in that nesting order. Cells run on up to
/// `threads` workers; results do not depend on the thread count.
std::vector<CellResult> run_sweep(const ExperimentConfig& config, const CoauthorshipDataset& data, unsigned threads);

/// Worker count: hardware concurrency capped by HODGEFLOW_THREADS.
unsigned sweep_threads();

struct Aggregate {
  ModelKind model;
  double rate;
  double mean;
  double stddev;  // sample standard deviation over seeds
  std::size_t n;
};

std::vector<Aggregate> aggregate(const std::vector<CellResult>& cells);

/// Moving average with a trailing window; entry i averages trace[i..i+w-1].
std::vector<double> moving_average(const std::vector<double>& trace, std::size_t window);

void write_loss_trace(const std::vector<double>& trace, const std::filesystem::path& path);

/// Entry point behind the `hodgeflow` executable. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hodgeflow
