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

#include "hodgeflow/complex.hpp"

#include <set>
#include <string>

namespace hodgeflow {

namespace {

std::string describe(const std::vector<Index>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

void check_order(const SimplicialComplex& x, int k, int lo, int hi, const char* what) {
  if (k < lo || k > hi) {
    throw InvalidOrder(std::string(what) + ": order " + std::to_string(k) + " outside [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "] for complex of order " +
                       std::to_string(x.max_order()));
  }
}

IntSparseMatrix zero_matrix(Index n) { return IntSparseMatrix(n, n); }

}  // namespace

Index SimplicialComplex::count(int k) const {
  if (k < 0 || k > max_order()) return 0;
  return static_cast<Index>(simplices_[k].size());
}

std::vector<Index> SimplicialComplex::counts() const {
  std::vector<Index> n;
  for (const auto& level : simplices_) n.push_back(static_cast<Index>(level.size()));
  return n;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
  if (k < 0 || k > max_order()) throw InvalidOrder("simplices: order " + std::to_string(k) + " out of range");
  return simplices_[k];
}

const std::vector<int>& SimplicialComplex::orientations(int k) const {
  if (k < 0 || k > max_order()) throw InvalidOrder("orientations: order " + std::to_string(k) + " out of range");
  return orientations_[k];
}

std::optional<Index> SimplicialComplex::index_of(const Simplex& s) const {
  const int k = static_cast<int>(s.size()) - 1;
  if (k < 0 || k > max_order()) return std::nullopt;
  const auto it = index_[k].find(s);
  if (it == index_[k].end()) return std::nullopt;
  return it->second;
}

void SimplicialComplex::rebuild_index() {
  index_.assign(simplices_.size(), {});
  for (std::size_t k = 0; k < simplices_.size(); ++k) {
    for (std::size_t i = 0; i < simplices_[k].size(); ++i) index_[k].emplace(simplices_[k][i], static_cast<Index>(i));
  }
}

SimplicialComplex build_complex(const std::vector<std::vector<Index>>& simplex_list, int max_order) {
  if (max_order < 0) throw InvalidOrder("build_complex: negative maximum order");
  std::vector<std::set<Simplex>> levels(static_cast<std::size_t>(max_order) + 1);
  for (const auto& raw : simplex_list) {
    std::set<Index> unique(raw.begin(), raw.end());
    if (unique.empty()) throw InvalidArgument("build_complex: empty simplex");
    if (*unique.begin() < 0) throw InvalidArgument("build_complex: negative vertex id in simplex " + describe(raw));
    if (unique.size() > static_cast<std::size_t>(max_order) + 1) {
      throw InvalidArgument("build_complex: simplex " + describe(raw) + " has " + std::to_string(unique.size()) +
                            " vertices, more than K+1 = " + std::to_string(max_order + 1));
    }
    const Simplex s(unique.begin(), unique.end());
    const std::size_t n = s.size();
    // Every nonempty subset; n <= K+1 keeps this small.
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      Simplex face;
      for (std::size_t b = 0; b < n; ++b) {
        if (mask & (std::uint64_t{1} << b)) face.push_back(s[b]);
      }
      levels[face.size() - 1].insert(std::move(face));
    }
  }
  SimplicialComplex x;
  for (auto& level : levels) {
    x.simplices_.emplace_back(level.begin(), level.end());
    x.orientations_.emplace_back(level.size(), 1);
  }
  x.rebuild_index();
  return x;
}

IntSparseMatrix incidence(const SimplicialComplex& x, int k) {
  check_order(x, k, 1, x.max_order(), "incidence");
  const auto& cols = x.simplices(k);
  const auto& col_sign = x.orientations(k);
  const auto& row_sign = x.orientations(k - 1);
  std::vector<Triplet<std::int64_t>> t;
  t.reserve(cols.size() * static_cast<std::size_t>(k + 1));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Simplex& s = cols[j];
    for (std::size_t p = 0; p < s.size(); ++p) {
      Simplex face;
      face.reserve(s.size() - 1);
      for (std::size_t q = 0; q < s.size(); ++q) {
        if (q != p) face.push_back(s[q]);
      }
      const auto i = x.index_of(face);
      if (!i) throw Error("incidence: face " + describe(face) + " missing; complex is not closed");
      const std::int64_t sign = (p % 2 == 0) ? 1 : -1;
      t.push_back({*i, static_cast<Index>(j), sign * row_sign[*i] * col_sign[j]});
    }
  }
  return IntSparseMatrix::from_triplets(x.count(k - 1), x.count(k), std::move(t));
}

LaplacianSet laplacians(const SimplicialComplex& x, int k) {
  check_order(x, k, 0, x.max_order(), "laplacians");
  const Index n = x.count(k);
  LaplacianSet l;
  if (k == 0) {
    l.lower = zero_matrix(n);
  } else {
    const auto b = incidence(x, k);
    l.lower = multiply(b.transpose(), b);
  }
  if (k == x.max_order()) {
    l.upper = zero_matrix(n);
  } else {
    const auto b = incidence(x, k + 1);
    l.upper = multiply(b, b.transpose());
  }
  l.full = add(l.lower, l.upper);
  return l;
}

ShiftOperators shift_operators(const LaplacianSet& l) {
  return {l.lower.cast<double>(), l.upper.cast<double>()};
}

ShiftOperators normalized(const ShiftOperators& ops) {
  const double lambda = largest_eigenvalue(add(ops.lower, ops.upper));
  if (lambda <= 0.0) return ops;
  return {scale(ops.lower, 1.0 / lambda), scale(ops.upper, 1.0 / lambda)};
}

ShiftOperators shift_operators(const SimplicialComplex& x, int k) { return shift_operators(laplacians(x, k)); }

SimplicialComplex permute_complex(const SimplicialComplex& x, const PermutationSequence& p) {
  const int levels = x.max_order() + 1;
  if (static_cast<int>(p.perms.size()) != levels) {
    throw DimensionMismatch("permute_complex: expected " + std::to_string(levels) + " permutations, got " +
                            std::to_string(p.perms.size()));
  }
  SimplicialComplex out;
  for (int k = 0; k < levels; ++k) {
    const auto& perm = p.perms[k];
    const Index n = x.count(k);
    if (static_cast<Index>(perm.size()) != n) {
      throw DimensionMismatch("permute_complex: order " + std::to_string(k) + " permutation has length " +
                              std::to_string(perm.size()) + ", expected " + std::to_string(n));
    }
    std::vector<Simplex> level(static_cast<std::size_t>(n));
    std::vector<int> signs(static_cast<std::size_t>(n), 0);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Index i = 0; i < n; ++i) {
      const Index target = perm[i];
      if (target < 0 || target >= n || seen[target]) {
        throw InvalidArgument("permute_complex: order " + std::to_string(k) + " map is not a bijection");
      }
      seen[target] = true;
      level[target] = x.simplices(k)[i];
      signs[target] = x.orientations(k)[i];
    }
    out.simplices_.push_back(std::move(level));
    out.orientations_.push_back(std::move(signs));
  }
  out.rebuild_index();
  return out;
}

SimplicialComplex reorient_complex(const SimplicialComplex& x, const OrientationSequence& d) {
  const int levels = x.max_order() + 1;
  if (static_cast<int>(d.signs.size()) != levels) {
    throw DimensionMismatch("reorient_complex: expected " + std::to_string(levels) + " sign vectors, got " +
                            std::to_string(d.signs.size()));
  }
  SimplicialComplex out = x;
  for (int k = 0; k < levels; ++k) {
    const auto& s = d.signs[k];
    if (static_cast<Index>(s.size()) != x.count(k)) {
      throw DimensionMismatch("reorient_complex: order " + std::to_string(k) + " sign vector has wrong length");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != 1 && s[i] != -1) throw InvalidArgument("reorient_complex: signs must be +1 or -1");
      if (k == 0 && s[i] != 1) throw InvalidArgument("reorient_complex: node signals carry no orientation (d_0 must be all ones)");
      out.orientations_[k][i] *= s[i];
    }
  }
  return out;
}

PermutationSequence identity_permutations(const SimplicialComplex& x) {
  PermutationSequence p;
  for (int k = 0; k <= x.max_order(); ++k) {
    std::vector<Index> perm(static_cast<std::size_t>(x.count(k)));
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<Index>(i);
    p.perms.push_back(std::move(perm));
  }
  return p;
}

OrientationSequence identity_orientations(const SimplicialComplex& x) {
  OrientationSequence d;
  for (int k = 0; k <= x.max_order(); ++k) d.signs.emplace_back(static_cast<std::size_t>(x.count(k)), 1);
  return d;
}

Vector permute_signal(const std::vector<Index>& perm, const Vector& x) {
  if (static_cast<Index>(perm.size()) != x.size()) throw DimensionMismatch("permute_signal: length mismatch");
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) out[perm[i]] = x[i];
  return out;
}

Vector orient_signal(const std::vector<int>& signs, const Vector& x) {
  if (static_cast<Index>(signs.size()) != x.size()) throw DimensionMismatch("orient_signal: length mismatch");
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) out[i] = signs[i] * x[i];
  return out;
}

NeighborSet neighbors(const SimplicialComplex& x, int k, Index i) {
  const auto l = laplacians(x, k);
  if (i < 0 || i >= x.count(k)) throw InvalidArgument("neighbors: simplex index " + std::to_string(i) + " out of range");
  auto off_diagonal = [](const IntSparseMatrix& m, Index row) {
    std::vector<Index> out;
    for (Index j : m.row_indices(row)) {
      if (j != row) out.push_back(j);
    }
    return out;
  };
  NeighborSet n{off_diagonal(l.lower, i), off_diagonal(l.upper, i), 0};
  for (Index r = 0; r < x.count(k); ++r) {
    const auto total = static_cast<Index>(off_diagonal(l.lower, r).size() + off_diagonal(l.upper, r).size());
    n.max_neighbors = std::max(n.max_neighbors, total);
  }
  return n;
}

}  // namespace hodgeflow
