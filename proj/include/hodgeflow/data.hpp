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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hodgeflow/complex.hpp"

namespace hodgeflow {

/// 1 = known entry, 0 = missing.
using Mask = std::vector<std::uint8_t>;

struct Paper {
  std::vector<Index> authors;
  double citations = 0.0;
};

/// Coauthorship complex: a paper with k+1 distinct authors is the k-simplex
/// on those authors; its citations are the signal on that simplex.
struct CoauthorshipDataset {
  SimplicialComplex complex;
  std::vector<Vector> signals;        // signals[k] has count(k) entries
  std::vector<std::string> warnings;  // e.g. skipped papers
};

/// Signal of each simplex = sum of citations of the papers whose author set
/// is exactly that simplex; faces present only through closure get 0.
/// Papers with more than K+1 authors are skipped with a warning.
CoauthorshipDataset build_coauthorship(const std::vector<Paper>& papers, int max_order);

/// Reads `{"format": 1, "K": int, "papers": [{"authors": [...], "citations": x}, ...]}`.
CoauthorshipDataset load_coauthorship(const std::filesystem::path& path);
CoauthorshipDataset parse_coauthorship(const nlohmann::json& j);

/// Reads `{"format": 1, "K": int, "simplices": [[v, ...], ...]}` and closes it.
SimplicialComplex load_complex(const std::filesystem::path& path);
SimplicialComplex parse_complex(const nlohmann::json& j);
/// Every simplex of every order, canonical order.
nlohmann::json complex_to_json(const SimplicialComplex& x);

struct ImputationTask {
  int order = 0;
  Vector target;
  Mask mask;      // known entries
  Vector input;   // target on known entries, median of known entries elsewhere
  double rate = 0.0;

  Mask missing() const;
  Index missing_count() const;
};

/// Marks floor(rate * N[k]) entries, drawn uniformly without replacement,
/// as missing.
ImputationTask make_task(const Vector& signal, int order, double rate, std::uint64_t seed);
ImputationTask make_task(const CoauthorshipDataset& data, int order, double rate, std::uint64_t seed);

/// Writes `index,target,mask,input`.
void write_task_csv(const ImputationTask& task, const std::filesystem::path& path);

/// Median; even counts average the two middle values. Throws on empty input.
double median(std::vector<double> values);

/// Fraction of missing entries imputed within ±5% of the true value. A zero
/// target counts as correct when |pred| <= 0.05.
double accuracy(const Vector& pred, const Vector& target, const Mask& missing);

/// Clique complex (up to order K) of a seeded G(n, p) graph.
SimplicialComplex synth_complex(Index n_vertices, double edge_prob, int max_order, std::uint64_t seed);

/// Clique complex of an explicit graph given as an edge list.
SimplicialComplex clique_complex(Index n_vertices, const std::vector<std::pair<Index, Index>>& edges, int max_order);

enum class SignalKind { SmoothGradient, SmoothCurl, CitationLike };

SignalKind parse_signal_kind(const std::string& name);

/// smooth-gradient: B_kᵀ u for random u, low-pass filtered by the lower
/// Laplacian (needs k >= 1). smooth-curl: B_{k+1} w, low-pass filtered by the
/// upper Laplacian (needs k < K). citation-like: rounded log-normal counts.
Vector synth_signal(const SimplicialComplex& x, int k, SignalKind kind, std::uint64_t seed);

struct CoauthorshipSynthParams {
  Index authors = 40;
  Index papers = 120;
  int max_order = 3;
  Index window = 8;  // co-authors are drawn from a ring neighbourhood of this width
};

/// Seeded synthetic bibliography with 1..K+1 authors per paper and
/// citation-like counts, turned into a dataset by build_coauthorship.
std::vector<Paper> synth_papers(const CoauthorshipSynthParams& params, std::uint64_t seed);
CoauthorshipDataset synth_coauthorship(const CoauthorshipSynthParams& params, std::uint64_t seed);

}  // namespace hodgeflow
