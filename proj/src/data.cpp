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

#include "hodgeflow/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace hodgeflow {

namespace {

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void check_format_version(const nlohmann::json& j, const char* what) {
  if (j.contains("format") && j.at("format") != 1) {
    throw FormatError(std::string(what) + ": unsupported format version " + j.at("format").dump());
  }
}

// Low-pass smoothing x <- (I - L/bound)^steps x, where bound is a Gershgorin
// bound on the spectrum of L, so every eigenvalue of the step lies in [0, 1].
Vector low_pass(const SparseMatrix& l, Vector x, int steps) {
  double bound = 0.0;
  for (Index r = 0; r < l.rows(); ++r) {
    double row = 0.0;
    for (double v : l.row_values(r)) row += std::abs(v);
    bound = std::max(bound, row);
  }
  if (bound == 0.0) return x;
  for (int s = 0; s < steps; ++s) x -= spmv(l, x) / bound;
  return x;
}

}  // namespace

CoauthorshipDataset build_coauthorship(const std::vector<Paper>& papers, int max_order) {
  if (max_order < 0) throw InvalidOrder("coauthorship: K must be nonnegative");
  if (papers.empty()) throw InvalidArgument("coauthorship: empty paper list");
  CoauthorshipDataset data;
  std::vector<std::vector<Index>> kept;
  std::vector<double> kept_citations;
  for (std::size_t i = 0; i < papers.size(); ++i) {
    const Paper& p = papers[i];
    const std::set<Index> authors(p.authors.begin(), p.authors.end());
    if (authors.empty()) throw FormatError("coauthorship: paper " + std::to_string(i) + " has no authors");
    if (*authors.begin() < 0) throw FormatError("coauthorship: paper " + std::to_string(i) + " has a negative author id");
    if (!std::isfinite(p.citations) || p.citations < 0.0) {
      throw FormatError("coauthorship: paper " + std::to_string(i) + " has an invalid citation count");
    }
    if (authors.size() > static_cast<std::size_t>(max_order) + 1) {
      data.warnings.push_back("skipped paper " + std::to_string(i) + " with " + std::to_string(authors.size()) +
                              " authors (more than K+1 = " + std::to_string(max_order + 1) + ")");
      continue;
    }
    kept.emplace_back(authors.begin(), authors.end());
    kept_citations.push_back(p.citations);
  }
  if (kept.empty()) throw InvalidArgument("coauthorship: no paper fits within order K");
  data.complex = build_complex(kept, max_order);
  for (int k = 0; k <= max_order; ++k) data.signals.push_back(Vector::Zero(data.complex.count(k)));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const Index idx = *data.complex.index_of(kept[i]);
    data.signals[kept[i].size() - 1][idx] += kept_citations[i];
  }
  return data;
}

CoauthorshipDataset parse_coauthorship(const nlohmann::json& j) {
  check_format_version(j, "coauthorship JSON");
  std::vector<Paper> papers;
  int max_order = 0;
  try {
    max_order = j.at("K").get<int>();
    for (const auto& jp : j.at("papers")) {
      Paper p;
      p.authors = jp.at("authors").get<std::vector<Index>>();
      p.citations = jp.at("citations").get<double>();
      papers.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("coauthorship JSON: malformed record: ") + e.what());
  }
  return build_coauthorship(papers, max_order);
}

CoauthorshipDataset load_coauthorship(const std::filesystem::path& path) { return parse_coauthorship(read_json(path)); }

SimplicialComplex parse_complex(const nlohmann::json& j) {
  check_format_version(j, "complex JSON");
  try {
    return build_complex(j.at("simplices").get<std::vector<std::vector<Index>>>(), j.at("K").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("complex JSON: ") + e.what());
  }
}

SimplicialComplex load_complex(const std::filesystem::path& path) { return parse_complex(read_json(path)); }

nlohmann::json complex_to_json(const SimplicialComplex& x) {
  nlohmann::json simplices = nlohmann::json::array();
  for (int k = 0; k <= x.max_order(); ++k) {
    for (const auto& s : x.simplices(k)) simplices.push_back(s);
  }
  return {{"format", 1}, {"K", x.max_order()}, {"counts", x.counts()}, {"simplices", simplices}};
}

Mask ImputationTask::missing() const {
  Mask m(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) m[i] = mask[i] ? 0 : 1;
  return m;
}

Index ImputationTask::missing_count() const {
  return static_cast<Index>(std::count(mask.begin(), mask.end(), std::uint8_t{0}));
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

ImputationTask make_task(const Vector& signal, int order, double rate, std::uint64_t seed) {
  const Index n = signal.size();
  if (n == 0) throw InvalidArgument("make_task: order " + std::to_string(order) + " has no simplices");
  if (!(rate > 0.0 && rate < 1.0)) throw InvalidArgument("make_task: missing rate must lie in (0, 1)");
  // The epsilon keeps e.g. 0.3 * 10 from flooring to 2 through round-off.
  const auto missing = static_cast<Index>(std::floor(rate * static_cast<double>(n) + 1e-9));
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);

  ImputationTask task;
  task.order = order;
  task.rate = rate;
  task.target = signal;
  task.mask.assign(static_cast<std::size_t>(n), 1);
  for (Index i = 0; i < missing; ++i) task.mask[idx[i]] = 0;

  std::vector<double> known;
  for (Index i = 0; i < n; ++i) {
    if (task.mask[i]) known.push_back(signal[i]);
  }
  const double fill = median(known);
  task.input = signal;
  for (Index i = 0; i < n; ++i) {
    if (!task.mask[i]) task.input[i] = fill;
  }
  return task;
}

ImputationTask make_task(const CoauthorshipDataset& data, int order, double rate, std::uint64_t seed) {
  if (order < 0 || order >= static_cast<int>(data.signals.size())) {
    throw InvalidOrder("make_task: order " + std::to_string(order) + " not present in dataset");
  }
  return make_task(data.signals[order], order, rate, seed);
}

void write_task_csv(const ImputationTask& task, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << "index,target,mask,input\n" << std::setprecision(17);
  for (Index i = 0; i < task.target.size(); ++i) {
    out << i << ',' << task.target[i] << ',' << int{task.mask[i]} << ',' << task.input[i] << '\n';
  }
}

double accuracy(const Vector& pred, const Vector& target, const Mask& missing) {
  if (pred.size() != target.size() || static_cast<Index>(missing.size()) != target.size()) {
    throw DimensionMismatch("accuracy: prediction, target and mask lengths differ");
  }
  Index total = 0;
  Index correct = 0;
  for (Index i = 0; i < target.size(); ++i) {
    if (!missing[i]) continue;
    ++total;
    const double band = target[i] == 0.0 ? 0.05 : 0.05 * std::abs(target[i]);
    if (std::abs(pred[i] - target[i]) <= band) ++correct;
  }
  if (total == 0) throw InvalidArgument("accuracy: no missing entries to score");
  return static_cast<double>(correct) / static_cast<double>(total);
}

SimplicialComplex clique_complex(Index n_vertices, const std::vector<std::pair<Index, Index>>& edges, int max_order) {
  if (max_order < 0) throw InvalidOrder("clique_complex: negative order");
  std::vector<std::set<Index>> adj(static_cast<std::size_t>(n_vertices));
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_vertices || b >= n_vertices) throw InvalidArgument("clique_complex: edge endpoint out of range");
    if (a == b) continue;
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<std::vector<Index>> all;
  std::vector<std::vector<Index>> level;
  for (Index v = 0; v < n_vertices; ++v) level.push_back({v});
  all.insert(all.end(), level.begin(), level.end());
  for (int k = 1; k <= max_order && !level.empty(); ++k) {
    std::vector<std::vector<Index>> next;
    for (const auto& clique : level) {
      // Extend only by vertices larger than the last one so each clique appears once.
      for (auto it = adj[clique.back()].upper_bound(clique.back()); it != adj[clique.back()].end(); ++it) {
        const Index v = *it;
        const bool adjacent_to_all =
            std::all_of(clique.begin(), clique.end(), [&](Index u) { return adj[u].count(v) > 0; });
        if (adjacent_to_all) {
          auto bigger = clique;
          bigger.push_back(v);
          next.push_back(std::move(bigger));
        }
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return build_complex(all, max_order);
}

SimplicialComplex synth_complex(Index n_vertices, double edge_prob, int max_order, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(std::clamp(edge_prob, 0.0, 1.0));
  std::vector<std::pair<Index, Index>> edges;
  for (Index i = 0; i < n_vertices; ++i) {
    for (Index j = i + 1; j < n_vertices; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return clique_complex(n_vertices, edges, max_order);
}

SignalKind parse_signal_kind(const std::string& name) {
  if (name == "smooth-gradient") return SignalKind::SmoothGradient;
  if (name == "smooth-curl") return SignalKind::SmoothCurl;
  if (name == "citation-like") return SignalKind::CitationLike;
  throw InvalidArgument("unknown signal kind '" + name + "'");
}

Vector synth_signal(const SimplicialComplex& x, int k, SignalKind kind, std::uint64_t seed) {
  if (k < 0 || k > x.max_order()) throw InvalidOrder("synth_signal: order " + std::to_string(k) + " out of range");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  constexpr int kSmoothingSteps = 3;
  switch (kind) {
    case SignalKind::SmoothGradient: {
      if (k < 1) throw InvalidOrder("synth_signal: gradient signals need order >= 1");
      Vector u(x.count(k - 1));
      for (Index i = 0; i < u.size(); ++i) u[i] = gauss(rng);
      const SparseMatrix bt = incidence(x, k).transpose().cast<double>();
      return low_pass(shift_operators(x, k).lower, spmv(bt, u), kSmoothingSteps);
    }
    case SignalKind::SmoothCurl: {
      if (k >= x.max_order()) throw InvalidOrder("synth_signal: curl signals need order < K");
      Vector w(x.count(k + 1));
      for (Index i = 0; i < w.size(); ++i) w[i] = gauss(rng);
      const SparseMatrix b = incidence(x, k + 1).cast<double>();
      return low_pass(shift_operators(x, k).upper, spmv(b, w), kSmoothingSteps);
    }
    case SignalKind::CitationLike: {
      std::lognormal_distribution<double> counts(2.0, 1.2);
      Vector s(x.count(k));
      for (Index i = 0; i < s.size(); ++i) s[i] = std::round(counts(rng));
      return s;
    }
  }
  throw InvalidArgument("synth_signal: unknown kind");
}

std::vector<Paper> synth_papers(const CoauthorshipSynthParams& params, std::uint64_t seed) {
  if (params.authors < 1 || params.papers < 1 || params.max_order < 0) {
    throw InvalidArgument("synth_papers: need at least one author, one paper and K >= 0");
  }
  std::mt19937_64 rng(seed);
  // Team sizes 1..K+1; small teams rarer than mid-sized ones.
  std::vector<double> weights;
  for (int s = 1; s <= params.max_order + 1; ++s) weights.push_back(s == 1 ? 1.0 : s == 2 ? 2.0 : 3.0);
  std::discrete_distribution<int> team_size(weights.begin(), weights.end());
  std::uniform_int_distribution<Index> center(0, params.authors - 1);
  std::lognormal_distribution<double> citations(2.0, 1.2);
  const Index window = std::clamp<Index>(params.window, 1, params.authors);

  std::vector<Paper> papers;
  for (Index i = 0; i < params.papers; ++i) {
    const auto size = std::min<Index>(team_size(rng) + 1, window);
    std::vector<Index> offsets(static_cast<std::size_t>(window));
    std::iota(offsets.begin(), offsets.end(), Index{0});
    std::shuffle(offsets.begin(), offsets.end(), rng);
    const Index c = center(rng);
    Paper p;
    for (Index a = 0; a < size; ++a) p.authors.push_back((c + offsets[a]) % params.authors);
    std::sort(p.authors.begin(), p.authors.end());
    p.citations = std::round(citations(rng));
    papers.push_back(std::move(p));
  }
  return papers;
}

CoauthorshipDataset synth_coauthorship(const CoauthorshipSynthParams& params, std::uint64_t seed) {
  return build_coauthorship(synth_papers(params, seed), params.max_order);
}

}  // namespace hodgeflow
