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

#include "hodgeflow/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hodgeflow/spectral.hpp"

namespace hodgeflow {

namespace fs = std::filesystem;

ModelKind parse_model_kind(const std::string& name) {
  if (name == "scnn") return ModelKind::Scnn;
  if (name == "snn") return ModelKind::Snn;
  throw InvalidArgument("unknown model '" + name + "' (expected scnn or snn)");
}

std::string model_kind_name(ModelKind kind) { return kind == ModelKind::Scnn ? "scnn" : "snn"; }

void validate(const ExperimentConfig& c) {
  if (c.rates.empty()) throw InvalidArgument("config: no missing rates");
  for (double r : c.rates) {
    if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("config: missing rate " + std::to_string(r) + " outside (0, 1)");
  }
  if (c.seeds.empty()) throw InvalidArgument("config: no seeds");
  if (c.models.empty()) throw InvalidArgument("config: no models");
  if (c.order < 0) throw InvalidArgument("config: negative order");
  if (c.layers < 1 || c.features < 1) throw InvalidArgument("config: layers and features must be positive");
  if (c.lower_order < 0 || c.upper_order < 0) throw InvalidArgument("config: negative filter order");
  if (c.training.iterations < 0) throw InvalidArgument("config: negative iteration count");
  if (!(c.training.adam.lr > 0.0)) throw InvalidArgument("config: learning rate must be positive");
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    if (j.value("format", 1) != 1) throw FormatError("config JSON: unsupported format version");
    if (j.contains("dataset")) c.dataset = j.at("dataset").get<std::string>();
    if (j.contains("synth")) {
      const auto& s = j.at("synth");
      c.synth.authors = s.value("authors", c.synth.authors);
      c.synth.papers = s.value("papers", c.synth.papers);
      c.synth.max_order = s.value("K", c.synth.max_order);
      c.synth.window = s.value("window", c.synth.window);
    }
    c.data_seed = j.value("data_seed", c.data_seed);
    c.order = j.value("order", c.order);
    c.rates = j.value("rates", c.rates);
    c.seeds = j.value("seeds", c.seeds);
    if (j.contains("models")) {
      c.models.clear();
      for (const auto& m : j.at("models")) c.models.push_back(parse_model_kind(m.get<std::string>()));
    }
    if (j.contains("model")) {
      const auto& m = j.at("model");
      c.layers = m.value("layers", c.layers);
      c.features = m.value("features", c.features);
      c.lower_order = m.value("l1", c.lower_order);
      c.upper_order = m.value("l2", c.upper_order);
      c.sigma = Nonlinearity::parse(m.value("nonlinearity", c.sigma.name()), m.value("slope", c.sigma.slope));
    }
    if (j.contains("training")) {
      const auto& t = j.at("training");
      c.training.adam.lr = t.value("lr", c.training.adam.lr);
      c.training.adam.beta1 = t.value("beta1", c.training.adam.beta1);
      c.training.adam.beta2 = t.value("beta2", c.training.adam.beta2);
      c.training.adam.eps = t.value("eps", c.training.adam.eps);
      c.training.iterations = t.value("iters", c.training.iterations);
      c.normalize_laplacians = t.value("normalize_laplacians", c.normalize_laplacians);
    }
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("config JSON: ") + e.what());
  }
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json models = nlohmann::json::array();
  for (auto m : c.models) models.push_back(model_kind_name(m));
  nlohmann::json j{
      {"format", 1},
      {"synth", {{"authors", c.synth.authors}, {"papers", c.synth.papers}, {"K", c.synth.max_order}, {"window", c.synth.window}}},
      {"data_seed", c.data_seed},
      {"order", c.order},
      {"rates", c.rates},
      {"seeds", c.seeds},
      {"models", models},
      {"model",
       {{"layers", c.layers},
        {"features", c.features},
        {"l1", c.lower_order},
        {"l2", c.upper_order},
        {"nonlinearity", c.sigma.name()},
        {"slope", c.sigma.slope}}},
      {"training",
       {{"lr", c.training.adam.lr},
        {"beta1", c.training.adam.beta1},
        {"beta2", c.training.adam.beta2},
        {"eps", c.training.adam.eps},
        {"iters", c.training.iterations},
        {"normalize_laplacians", c.normalize_laplacians}}},
      {"out", c.out.string()}};
  if (c.dataset) j["dataset"] = c.dataset->string();
  return j;
}

ModelShape model_shape(const ExperimentConfig& c, ModelKind kind) {
  ModelShape s;
  s.order = c.order;
  s.layers = c.layers;
  s.features = c.features;
  s.sigma = c.sigma;
  if (kind == ModelKind::Scnn) {
    s.lower_order = c.lower_order;
    s.upper_order = c.upper_order;
  } else {
    s.tied = true;
    s.lower_order = s.upper_order = c.lower_order + c.upper_order;
  }
  return s;
}

CoauthorshipDataset load_dataset(const ExperimentConfig& c) {
  if (!c.dataset) return synth_coauthorship(c.synth, c.data_seed);
  std::ifstream in(*c.dataset);
  if (!in) throw FormatError("cannot open " + c.dataset->string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(c.dataset->string() + ": " + e.what());
  }
  if (j.contains("papers")) return parse_coauthorship(j);
  CoauthorshipDataset data;
  data.complex = parse_complex(j);
  for (int k = 0; k <= data.complex.max_order(); ++k) {
    data.signals.push_back(synth_signal(data.complex, k, SignalKind::CitationLike, c.data_seed + static_cast<std::uint64_t>(k)));
  }
  data.warnings.push_back("complex file carries no signal; using synthetic citation-like counts");
  return data;
}

ShiftOperators training_operators(const ExperimentConfig& c, const SimplicialComplex& x) {
  ShiftOperators ops = shift_operators(x, c.order);
  return c.normalize_laplacians ? normalized(ops) : ops;
}

CellResult run_cell(const ExperimentConfig& c, const CoauthorshipDataset& data, ModelKind kind, double rate,
                    std::uint64_t seed, ScnnModel* trained, ImputationTask* task_out) {
  const ImputationTask task = make_task(data, c.order, rate, seed);
  const ShiftOperators ops = training_operators(c, data.complex);
  ScnnModel model = init_model(model_shape(c, kind), seed);
  CellResult r;
  r.model = kind;
  r.rate = rate;
  r.seed = seed;
  r.loss_trace = train(model, ops, task, c.training).loss_trace;
  const Vector pred = predict(model, ops, task.input);
  r.final_loss = masked_l1(pred, task.target, task.mask);
  r.accuracy = task.missing_count() > 0 ? accuracy(pred, task.target, task.missing()) : 1.0;
  if (trained) *trained = std::move(model);
  if (task_out) *task_out = task;
  return r;
}

unsigned sweep_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HODGEFLOW_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

std::vector<CellResult> run_sweep(const ExperimentConfig& c, const CoauthorshipDataset& data, unsigned threads) {
  struct Job {
    ModelKind model;
    double rate;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (double rate : c.rates) {
    for (auto seed : c.seeds) {
      for (auto m : c.models) jobs.push_back({m, rate, seed});
    }
  }
  std::vector<CellResult> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = run_cell(c, data, jobs[i].model, jobs[i].rate, jobs[i].seed);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::vector<Aggregate> aggregate(const std::vector<CellResult>& cells) {
  std::map<std::pair<double, int>, std::vector<double>> groups;
  for (const auto& c : cells) groups[{c.rate, static_cast<int>(c.model)}].push_back(c.accuracy);
  std::vector<Aggregate> out;
  for (const auto& [key, values] : groups) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double sd = values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;
    out.push_back({static_cast<ModelKind>(key.second), key.first, mean, sd, values.size()});
  }
  return out;
}

std::vector<double> moving_average(const std::vector<double>& trace, std::size_t window) {
  if (window == 0 || trace.size() < window) return {};
  std::vector<double> out;
  out.reserve(trace.size() - window + 1);
  for (std::size_t i = 0; i + window <= trace.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = i; j < i + window; ++j) s += trace[j];
    out.push_back(s / static_cast<double>(window));
  }
  return out;
}

void write_loss_trace(const std::vector<double>& trace, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << "iter,loss\n" << std::setprecision(17);
  for (std::size_t i = 0; i < trace.size(); ++i) out << i << ',' << trace[i] << '\n';
}

namespace {

std::string rate_tag(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", rate);
  return buf;
}

std::string cell_stem(ModelKind m, int order, double rate, std::uint64_t seed) {
  return model_kind_name(m) + "_k" + std::to_string(order) + "_r" + rate_tag(rate) + "_s" + std::to_string(seed);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw FormatError("cannot create directory " + dir.string() + ": " + ec.message());
}

Vector read_signal_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find_last_of(',');
    const std::string field = comma == std::string::npos ? line : line.substr(comma + 1);
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str()) {
      if (lineno == 1) continue;  // header
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": not a number");
    }
    values.push_back(v);
  }
  return Eigen::Map<Vector>(values.data(), static_cast<Index>(values.size()));
}

std::string fmt_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

// Options shared by train and eval, bound straight into the config.
struct ExperimentFlags {
  std::string config_path;
  std::string dataset;
  std::vector<double> rates;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> models;
  std::string nonlinearity;
  std::string dump_task;
  bool raw_laplacians = false;
  ExperimentConfig cfg;
  CLI::App* app = nullptr;

  void add(CLI::App* sub) {
    app = sub;
    sub->add_option("--config", config_path, "Experiment config JSON")->check(CLI::ExistingFile);
    sub->add_option("--complex,--dataset", dataset, "Coauthorship or complex JSON (default: synthetic)");
    sub->add_option("--order", cfg.order, "Simplex order k");
    sub->add_option("--rate", rates, "Missing rate(s)")->delimiter(',');
    sub->add_option("--seed", seeds, "Seed(s)")->delimiter(',');
    sub->add_option("--model", models, "scnn and/or snn")->delimiter(',');
    sub->add_option("--layers", cfg.layers, "Number of layers P");
    sub->add_option("--features", cfg.features, "Features per hidden layer F");
    sub->add_option("--l1", cfg.lower_order, "Lower filter order L1");
    sub->add_option("--l2", cfg.upper_order, "Upper filter order L2");
    sub->add_option("--nonlinearity", nonlinearity, "leaky_relu, tanh or identity");
    sub->add_option("--lr", cfg.training.adam.lr, "Adam learning rate");
    sub->add_option("--iters", cfg.training.iterations, "Training iterations");
    sub->add_option("--out", cfg.out, "Output directory");
    sub->add_option("--authors", cfg.synth.authors, "Synthetic dataset: number of authors");
    sub->add_option("--papers", cfg.synth.papers, "Synthetic dataset: number of papers");
    sub->add_option("--K", cfg.synth.max_order, "Synthetic dataset: maximum order");
    sub->add_option("--data-seed", cfg.data_seed, "Seed for synthetic data");
    sub->add_flag("--raw-laplacians", raw_laplacians, "Train on unnormalized Laplacians");
  }

  bool given(const std::string& name) const { return app->count(name) > 0; }

  // Config file first, explicit flags on top.
  ExperimentConfig resolve() const {
    ExperimentConfig c = cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw FormatError(config_path + ": " + e.what());
      }
      c = config_from_json(j);
      if (given("--order")) c.order = cfg.order;
      if (given("--layers")) c.layers = cfg.layers;
      if (given("--features")) c.features = cfg.features;
      if (given("--l1")) c.lower_order = cfg.lower_order;
      if (given("--l2")) c.upper_order = cfg.upper_order;
      if (given("--lr")) c.training.adam.lr = cfg.training.adam.lr;
      if (given("--iters")) c.training.iterations = cfg.training.iterations;
      if (given("--out")) c.out = cfg.out;
      if (given("--authors")) c.synth.authors = cfg.synth.authors;
      if (given("--papers")) c.synth.papers = cfg.synth.papers;
      if (given("--K")) c.synth.max_order = cfg.synth.max_order;
      if (given("--data-seed")) c.data_seed = cfg.data_seed;
    }
    if (!dataset.empty()) c.dataset = dataset;
    if (!rates.empty()) c.rates = rates;
    if (!seeds.empty()) c.seeds = seeds;
    if (!models.empty()) {
      c.models.clear();
      for (const auto& m : models) c.models.push_back(parse_model_kind(m));
    }
    if (!nonlinearity.empty()) c.sigma = Nonlinearity::parse(nonlinearity);
    if (raw_laplacians) c.normalize_laplacians = false;
    validate(c);
    return c;
  }
};

int cmd_build(const std::string& input, const std::string& out_path, bool summary, std::ostream& out) {
  std::ifstream in(input);
  if (!in) throw FormatError("cannot open " + input);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(input + ": " + e.what());
  }
  CoauthorshipDataset data;
  if (j.contains("papers")) {
    data = parse_coauthorship(j);
  } else {
    data.complex = parse_complex(j);
  }
  for (const auto& w : data.warnings) out << "warning: " << w << '\n';
  const SimplicialComplex& x = data.complex;
  out << "N:";
  for (Index n : x.counts()) out << ' ' << n;
  out << '\n';
  if (summary) {
    out << "order,count,max_neighbors\n";
    for (int k = 0; k <= x.max_order(); ++k) {
      const Index d = x.count(k) > 0 ? neighbors(x, k, 0).max_neighbors : 0;
      out << k << ',' << x.count(k) << ',' << d << '\n';
    }
  }
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw FormatError("cannot write " + out_path);
    f << complex_to_json(x).dump(1) << '\n';
  }
  return 0;
}

int cmd_decompose(const std::string& complex_path, int order, const std::string& signal_path,
                  const std::string& out_path, std::ostream& out) {
  ExperimentConfig c;
  c.dataset = complex_path;
  const CoauthorshipDataset data = load_dataset(c);
  if (order < 0 || order > data.complex.max_order()) throw InvalidOrder("decompose: order out of range");
  Vector x;
  if (!signal_path.empty()) {
    x = read_signal_csv(signal_path);
  } else {
    x = data.signals[order];
  }
  const ShiftOperators ops = shift_operators(data.complex, order);
  if (x.size() != ops.size()) {
    throw DimensionMismatch("decompose: signal has " + std::to_string(x.size()) + " entries, order " +
                            std::to_string(order) + " has " + std::to_string(ops.size()) + " simplices");
  }
  const SpectralBasis basis = hodge_basis(ops);
  const HodgeComponents parts = hodge_components(basis, x);
  const Embedding e = sft(basis, x);

  const fs::path target = out_path.empty() ? fs::path("components.csv") : fs::path(out_path);
  if (target.has_parent_path()) ensure_dir(target.parent_path());
  {
    std::ofstream f(target);
    if (!f) throw FormatError("cannot write " + target.string());
    f << "index,signal,gradient,curl,harmonic\n" << std::setprecision(17);
    for (Index i = 0; i < x.size(); ++i) {
      f << i << ',' << x[i] << ',' << parts.gradient[i] << ',' << parts.curl[i] << ',' << parts.harmonic[i] << '\n';
    }
  }
  const fs::path emb = target.parent_path() / (target.stem().string() + "_embedding.csv");
  {
    std::ofstream f(emb);
    if (!f) throw FormatError("cannot write " + emb.string());
    f << "block,index,frequency,coefficient\n" << std::setprecision(17);
    for (Index i = 0; i < e.harmonic.size(); ++i) f << "harmonic," << i << ",0," << e.harmonic[i] << '\n';
    for (Index i = 0; i < e.gradient.size(); ++i) {
      f << "gradient," << i << ',' << basis.gradient_freq[i] << ',' << e.gradient[i] << '\n';
    }
    for (Index i = 0; i < e.curl.size(); ++i) f << "curl," << i << ',' << basis.curl_freq[i] << ',' << e.curl[i] << '\n';
  }
  const double recon = (parts.gradient + parts.curl + parts.harmonic - x).cwiseAbs().maxCoeff();
  out << "N_H=" << basis.harmonic_dim() << " N_G=" << basis.gradient_dim() << " N_C=" << basis.curl_dim() << '\n';
  out << "reconstruction residual: " << (x.size() ? recon : 0.0) << '\n';
  out << "wrote " << target.string() << " and " << emb.string() << '\n';
  return 0;
}

int cmd_gradcheck(std::uint64_t seed, int configs, double tol, std::ostream& out) {
  double worst = 0.0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  for (int i = 0; i < configs; ++i) {
    const GradCheckReport r = seeded_gradient_check(seed + static_cast<std::uint64_t>(i));
    worst = std::max(worst, r.max_rel_error);
    checked += r.checked;
    skipped += r.skipped;
  }
  out << "max relative error: " << std::scientific << std::setprecision(3) << worst << std::defaultfloat
      << " (checked " << checked << ", skipped " << skipped << " near kinks)\n";
  if (!(worst <= tol) || checked == 0) {
    out << "FAIL: exceeds tolerance " << tol << '\n';
    return 1;
  }
  return 0;
}

int cmd_train(const ExperimentFlags& flags, const std::string& save_model, std::ostream& out) {
  ExperimentConfig c = flags.resolve();
  const CoauthorshipDataset data = load_dataset(c);
  for (const auto& w : data.warnings) out << "warning: " << w << '\n';
  const double rate = c.rates.front();
  const std::uint64_t seed = c.seeds.front();
  const ModelKind kind = c.models.front();
  ScnnModel model;
  ImputationTask task;
  const CellResult r = run_cell(c, data, kind, rate, seed, &model, &task);

  fs::path trace_path;
  if (c.out.extension() == ".csv") {
    trace_path = c.out;
    if (trace_path.has_parent_path()) ensure_dir(trace_path.parent_path());
  } else {
    ensure_dir(c.out);
    trace_path = c.out / ("loss_" + cell_stem(kind, c.order, rate, seed) + ".csv");
  }
  write_loss_trace(r.loss_trace, trace_path);
  if (!save_model.empty()) {
    std::ofstream f(save_model);
    if (!f) throw FormatError("cannot write " + save_model);
    f << nlohmann::json(model).dump(1) << '\n';
  }
  if (!flags.dump_task.empty()) write_task_csv(task, flags.dump_task);
  out << "model=" << model_kind_name(kind) << " order=" << c.order << " rate=" << rate_tag(rate) << " seed=" << seed
      << " params=" << model.parameter_count() << '\n';
  if (!r.loss_trace.empty()) out << "initial loss: " << fmt_double(r.loss_trace.front()) << '\n';
  out << "final loss: " << fmt_double(r.final_loss) << '\n';
  out << "accuracy: " << fmt_double(r.accuracy) << '\n';
  out << "wrote " << trace_path.string() << '\n';
  return 0;
}

int cmd_eval(const ExperimentFlags& flags, std::ostream& out) {
  const ExperimentConfig c = flags.resolve();
  const CoauthorshipDataset data = load_dataset(c);
  for (const auto& w : data.warnings) out << "warning: " << w << '\n';
  const auto cells = run_sweep(c, data, sweep_threads());

  ensure_dir(c.out / "traces");
  {
    std::ofstream f(c.out / "results.csv");
    if (!f) throw FormatError("cannot write results.csv");
    f << "order,rate,seed,model,accuracy\n" << std::setprecision(17);
    for (const auto& r : cells) {
      f << c.order << ',' << rate_tag(r.rate) << ',' << r.seed << ',' << model_kind_name(r.model) << ',' << r.accuracy << '\n';
      write_loss_trace(r.loss_trace, c.out / "traces" / ("loss_" + cell_stem(r.model, c.order, r.rate, r.seed) + ".csv"));
    }
  }
  const auto agg = aggregate(cells);
  {
    std::ofstream f(c.out / "summary.csv");
    if (!f) throw FormatError("cannot write summary.csv");
    f << "order,rate,model,mean_accuracy,std_accuracy,runs\n" << std::setprecision(17);
    for (const auto& a : agg) {
      f << c.order << ',' << rate_tag(a.rate) << ',' << model_kind_name(a.model) << ',' << a.mean << ',' << a.stddev
        << ',' << a.n << '\n';
    }
  }
  {
    std::ofstream f(c.out / "config.json");
    f << config_to_json(c).dump(1) << '\n';
  }
  out << "order " << c.order << " (N=" << data.complex.count(c.order) << "), " << c.seeds.size() << " seeds\n";
  out << "rate  model  accuracy\n";
  for (const auto& a : agg) {
    out << rate_tag(a.rate) << "  " << std::left << std::setw(5) << model_kind_name(a.model) << "  " << std::fixed
        << std::setprecision(3) << a.mean << " +- " << a.stddev << std::defaultfloat << '\n';
  }
  out << "wrote " << (c.out / "results.csv").string() << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hodgeflow: simplicial convolutional filters and networks"};
  app.require_subcommand(1);

  std::string build_input;
  std::string build_out;
  bool build_summary = false;
  auto* build = app.add_subcommand("build", "Close a complex and print its simplex counts");
  build->add_option("--input,--complex", build_input, "Complex or coauthorship JSON")->required();
  build->add_option("--out", build_out, "Write the closed complex as JSON");
  build->add_flag("--summary", build_summary, "Also print per-order counts and neighbourhood sizes");

  std::string dec_complex;
  int dec_order = 1;
  std::string dec_signal;
  std::string dec_out;
  auto* decompose = app.add_subcommand("decompose", "Hodge components and spectral embedding of a signal");
  decompose->add_option("--complex", dec_complex, "Complex or coauthorship JSON")->required();
  decompose->add_option("--order", dec_order, "Simplex order k");
  decompose->add_option("--signal", dec_signal, "Signal CSV (one value per line, or index,value)");
  decompose->add_option("--out", dec_out, "Components CSV");

  std::uint64_t gc_seed = 7;
  int gc_configs = 1;
  double gc_tol = 1e-5;
  auto* gradcheck = app.add_subcommand("gradcheck", "Compare analytic gradients with finite differences");
  gradcheck->add_option("--seed", gc_seed, "First seed");
  gradcheck->add_option("--configs", gc_configs, "Number of consecutive seeds to check");
  gradcheck->add_option("--tol", gc_tol, "Maximum relative error");

  ExperimentFlags train_flags;
  std::string save_model;
  auto* train_cmd = app.add_subcommand("train", "Train one (order, rate, seed) cell and write its loss trace");
  train_flags.add(train_cmd);
  train_cmd->add_option("--save-model", save_model, "Write the trained model JSON");
  train_cmd->add_option("--dump-task", train_flags.dump_task, "Write the task CSV (index,target,mask,input)");

  ExperimentFlags eval_flags;
  auto* eval = app.add_subcommand("eval", "Sweep rates x seeds x models and write results.csv");
  eval_flags.add(eval);

  std::vector<std::string> argv_storage = args;
  argv_storage.insert(argv_storage.begin(), "hodgeflow");
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*build) return cmd_build(build_input, build_out, build_summary, out);
    if (*decompose) return cmd_decompose(dec_complex, dec_order, dec_signal, dec_out, out);
    if (*gradcheck) return cmd_gradcheck(gc_seed, gc_configs, gc_tol, out);
    if (*train_cmd) return cmd_train(train_flags, save_model, out);
    if (*eval) return cmd_eval(eval_flags, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace hodgeflow
