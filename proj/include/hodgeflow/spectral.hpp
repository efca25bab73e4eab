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

#include "hodgeflow/filter.hpp"

namespace hodgeflow {

/// Simplicial Fourier basis U = [U_H U_G U_C] of one order.
///
/// Gradient and curl blocks come from separate eigendecompositions of the
/// lower and upper Laplacians, so frequencies shared by both blocks never
/// mix eigenvectors across subspaces.
struct SpectralBasis {
  DenseMatrix harmonic;   // U_H, columns span ker(L)
  DenseMatrix gradient;   // U_G, columns span im(B_kᵀ)
  DenseMatrix curl;       // U_C, columns span im(B_{k+1})
  Vector gradient_freq;   // Λ_G, ascending, > 0
  Vector curl_freq;       // Λ_C, ascending, > 0
  double zero_tol = 1e-8;

  Index size() const { return harmonic.rows(); }
  Index harmonic_dim() const { return harmonic.cols(); }
  Index gradient_dim() const { return gradient.cols(); }
  Index curl_dim() const { return curl.cols(); }

  /// [U_H U_G U_C].
  DenseMatrix stacked() const;
  /// Frequencies aligned with stacked(): zeros, Λ_G, Λ_C.
  Vector frequencies() const;
};

struct Embedding {
  Vector harmonic;
  Vector gradient;
  Vector curl;

  Vector concatenated() const;
};

/// Eigenvalues at or below zero_tol * λ_max of the respective matrix are
/// treated as zero. Throws NumericalError when the assembled basis is not
/// orthonormal to 1e-8 or does not cover the signal space.
SpectralBasis hodge_basis(const SimplicialComplex& x, int k, double zero_tol = 1e-8);
SpectralBasis hodge_basis(const ShiftOperators& ops, double zero_tol = 1e-8);

Embedding sft(const SpectralBasis& basis, const Vector& x);
Vector isft(const SpectralBasis& basis, const Embedding& e);

struct HodgeComponents {
  Vector gradient;
  Vector curl;
  Vector harmonic;
};

HodgeComponents hodge_components(const SpectralBasis& basis, const Vector& x);
HodgeComponents hodge_components(const SimplicialComplex& x, int k, const Vector& signal);

/// H̃ evaluated at each basis frequency, block by block:
/// ε on harmonic, ε + Σ α_l λ^l on gradient, ε + Σ β_l λ^l on curl.
struct FrequencyResponse {
  Vector harmonic;
  Vector gradient;
  Vector curl;

  Vector concatenated() const;
};

FrequencyResponse frequency_response(const SimplicialFilter& h, const SpectralBasis& basis);

/// max |(Uᵀ H U) - diag(H̃)| for a materialized H.
double spectral_diagonal_residual(const SimplicialFilter& h, const SpectralBasis& basis, const DenseMatrix& filter_matrix);

/// max_i |sft(H x)_i - H̃(λ_i) sft(x)_i|, with H x computed by shifting.
double layer_spectral_check(const ShiftOperators& ops, const SimplicialFilter& h, const SpectralBasis& basis,
                            const Vector& x);

}  // namespace hodgeflow
