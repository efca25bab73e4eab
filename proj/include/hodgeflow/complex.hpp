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
#include <map>
#include <optional>
#include <vector>

#include "hodgeflow/linalg.hpp"

namespace hodgeflow {

/// A k-simplex as its k+1 vertex ids in ascending order. The ascending order
/// is the reference orientation before any reorientation.
using Simplex = std::vector<Index>;

/// Per order k, `perms[k][i]` is the new index of old simplex i. Applying it
/// to a k-signal x gives x' with x'[perms[k][i]] = x[i], i.e. x' = P_k x.
struct PermutationSequence {
  std::vector<std::vector<Index>> perms;
};

/// Per order k, a sign in {-1, +1} per simplex. Order 0 must be all ones.
struct OrientationSequence {
  std::vector<std::vector<int>> signs;
};

/// Immutable simplicial complex of order K.
///
/// `build_complex` produces the canonical form: each order is sorted
/// lexicographically and every orientation is +1. `permute_complex` and
/// `reorient_complex` return relabeled views of the same topology whose
/// incidence matrices are the conjugated ones.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  int max_order() const { return static_cast<int>(simplices_.size()) - 1; }
  Index count(int k) const;
  std::vector<Index> counts() const;

  const std::vector<Simplex>& simplices(int k) const;
  const std::vector<int>& orientations(int k) const;

  /// Index of a (sorted) simplex within its order, if present.
  std::optional<Index> index_of(const Simplex& s) const;

  bool empty() const { return simplices_.empty() || simplices_[0].empty(); }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.simplices_ == b.simplices_ && a.orientations_ == b.orientations_;
  }

 private:
  friend SimplicialComplex build_complex(const std::vector<std::vector<Index>>&, int);
  friend SimplicialComplex permute_complex(const SimplicialComplex&, const PermutationSequence&);
  friend SimplicialComplex reorient_complex(const SimplicialComplex&, const OrientationSequence&);

  void rebuild_index();

  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::vector<int>> orientations_;
  std::vector<std::map<Simplex, Index>> index_;
};

/// Downward closure of `simplex_list` as a complex of order `max_order`.
/// Throws InvalidArgument for a simplex with more than max_order+1 vertices,
/// an empty simplex, or a negative vertex id.
SimplicialComplex build_complex(const std::vector<std::vector<Index>>& simplex_list, int max_order);

/// Signed incidence B_k, rows indexed by (k-1)-simplices, columns by k-simplices.
/// Entry (i, j) is (-1)^p times both orientation signs when simplex i is
/// simplex j with its p-th vertex removed. Valid for 1 <= k <= K.
IntSparseMatrix incidence(const SimplicialComplex& x, int k);

struct LaplacianSet {
  IntSparseMatrix lower;  // B_kᵀ B_k, zero for k = 0
  IntSparseMatrix upper;  // B_{k+1} B_{k+1}ᵀ, zero for k = K
  IntSparseMatrix full;
};

LaplacianSet laplacians(const SimplicialComplex& x, int k);

/// Floating-point lower/upper shift operators of one order; what filters,
/// models and training consume.
struct ShiftOperators {
  SparseMatrix lower;
  SparseMatrix upper;
  Index size() const { return lower.rows(); }
};

ShiftOperators shift_operators(const SimplicialComplex& x, int k);
ShiftOperators shift_operators(const LaplacianSet& l);

/// Both operators divided by λ_max(L_lower + L_upper). A common factor keeps
/// L_lower L_upper = 0 and keeps tied filters polynomials in the scaled L.
/// Zero operators are returned unchanged.
ShiftOperators normalized(const ShiftOperators& ops);

SimplicialComplex permute_complex(const SimplicialComplex& x, const PermutationSequence& p);
SimplicialComplex reorient_complex(const SimplicialComplex& x, const OrientationSequence& d);

PermutationSequence identity_permutations(const SimplicialComplex& x);
OrientationSequence identity_orientations(const SimplicialComplex& x);

/// Apply P_k (resp. D_k) to a k-signal.
Vector permute_signal(const std::vector<Index>& perm, const Vector& x);
Vector orient_signal(const std::vector<int>& signs, const Vector& x);

struct NeighborSet {
  std::vector<Index> lower;
  std::vector<Index> upper;
  Index max_neighbors = 0;  // max over all k-simplices of lower + upper count
};

NeighborSet neighbors(const SimplicialComplex& x, int k, Index i);

}  // namespace hodgeflow
