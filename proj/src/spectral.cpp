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

#include "hodgeflow/spectral.hpp"

#include <cmath>

namespace hodgeflow {

namespace {

struct Block {
  DenseMatrix vectors;
  Vector values;
};

// Eigenpairs of `m` with eigenvalue above (positive = true) or at most
// (positive = false) zero_tol * λ_max.
Block eigen_block(const DenseMatrix& m, double zero_tol, bool positive) {
  const Index n = m.rows();
  if (n == 0) return {DenseMatrix(0, 0), Vector(0)};
  const EigenResult eig = sym_eig(m);
  const double lambda_max = std::max(0.0, eig.eigenvalues[n - 1]);
  const double threshold = zero_tol * lambda_max;
  std::vector<Index> keep;
  for (Index i = 0; i < n; ++i) {
    const bool above = eig.eigenvalues[i] > threshold && lambda_max > 0.0;
    if (above == positive) keep.push_back(i);
  }
  Block b{DenseMatrix(n, static_cast<Index>(keep.size())), Vector(static_cast<Index>(keep.size()))};
  for (std::size_t c = 0; c < keep.size(); ++c) {
    b.vectors.col(static_cast<Index>(c)) = eig.eigenvectors.col(keep[c]);
    b.values[static_cast<Index>(c)] = positive ? eig.eigenvalues[keep[c]] : 0.0;
  }
  return b;
}

double polynomial(double epsilon, const std::vector<double>& coeffs, double lambda) {
  double value = epsilon;
  double power = 1.0;
  for (double c : coeffs) {
    power *= lambda;
    value += c * power;
  }
  return value;
}

Vector concat3(const Vector& a, const Vector& b, const Vector& c) {
  Vector out(a.size() + b.size() + c.size());
  out << a, b, c;
  return out;
}

}  // namespace

DenseMatrix SpectralBasis::stacked() const {
  DenseMatrix u(size(), harmonic_dim() + gradient_dim() + curl_dim());
  u << harmonic, gradient, curl;
  return u;
}

Vector SpectralBasis::frequencies() const {
  return concat3(Vector::Zero(harmonic_dim()), gradient_freq, curl_freq);
}

Vector Embedding::concatenated() const { return concat3(harmonic, gradient, curl); }

Vector FrequencyResponse::concatenated() const { return concat3(harmonic, gradient, curl); }

SpectralBasis hodge_basis(const ShiftOperators& ops, double zero_tol) {
  const DenseMatrix lower = ops.lower.to_dense();
  const DenseMatrix upper = ops.upper.to_dense();
  const Block grad = eigen_block(lower, zero_tol, true);
  const Block curl = eigen_block(upper, zero_tol, true);
  const Block harm = eigen_block(lower + upper, zero_tol, false);

  SpectralBasis basis;
  const Index n = ops.size();
  basis.harmonic = harm.vectors.rows() == n ? harm.vectors : DenseMatrix(n, 0);
  basis.gradient = grad.vectors.rows() == n ? grad.vectors : DenseMatrix(n, 0);
  basis.curl = curl.vectors.rows() == n ? curl.vectors : DenseMatrix(n, 0);
  basis.gradient_freq = grad.values;
  basis.curl_freq = curl.values;
  basis.zero_tol = zero_tol;

  const Index total = basis.harmonic_dim() + basis.gradient_dim() + basis.curl_dim();
  if (total != n) {
    throw NumericalError("hodge_basis: block dimensions " + std::to_string(basis.harmonic_dim()) + "+" +
                         std::to_string(basis.gradient_dim()) + "+" + std::to_string(basis.curl_dim()) +
                         " do not sum to " + std::to_string(n));
  }
  if (n > 0) {
    const DenseMatrix u = basis.stacked();
    const double err = (u.transpose() * u - DenseMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (err > 1e-8) throw NumericalError("hodge_basis: basis not orthonormal (error " + std::to_string(err) + ")");
  }
  return basis;
}

SpectralBasis hodge_basis(const SimplicialComplex& x, int k, double zero_tol) {
  return hodge_basis(shift_operators(x, k), zero_tol);
}

Embedding sft(const SpectralBasis& basis, const Vector& x) {
  if (x.size() != basis.size()) throw DimensionMismatch("sft: signal length does not match basis");
  return {basis.harmonic.transpose() * x, basis.gradient.transpose() * x, basis.curl.transpose() * x};
}

Vector isft(const SpectralBasis& basis, const Embedding& e) {
  if (e.harmonic.size() != basis.harmonic_dim() || e.gradient.size() != basis.gradient_dim() ||
      e.curl.size() != basis.curl_dim()) {
    throw DimensionMismatch("isft: embedding block sizes do not match basis");
  }
  return basis.harmonic * e.harmonic + basis.gradient * e.gradient + basis.curl * e.curl;
}

HodgeComponents hodge_components(const SpectralBasis& basis, const Vector& x) {
  if (x.size() != basis.size()) throw DimensionMismatch("hodge_components: signal length does not match basis");
  return {project_onto(basis.gradient, x), project_onto(basis.curl, x), project_onto(basis.harmonic, x)};
}

HodgeComponents hodge_components(const SimplicialComplex& x, int k, const Vector& signal) {
  return hodge_components(hodge_basis(x, k), signal);
}

FrequencyResponse frequency_response(const SimplicialFilter& h, const SpectralBasis& basis) {
  FrequencyResponse r;
  r.harmonic = Vector::Constant(basis.harmonic_dim(), h.epsilon);
  r.gradient.resize(basis.gradient_dim());
  for (Index i = 0; i < r.gradient.size(); ++i) r.gradient[i] = polynomial(h.epsilon, h.alpha, basis.gradient_freq[i]);
  r.curl.resize(basis.curl_dim());
  for (Index i = 0; i < r.curl.size(); ++i) r.curl[i] = polynomial(h.epsilon, h.beta, basis.curl_freq[i]);
  return r;
}

double spectral_diagonal_residual(const SimplicialFilter& h, const SpectralBasis& basis, const DenseMatrix& filter_matrix) {
  if (basis.size() == 0) return 0.0;
  const DenseMatrix u = basis.stacked();
  const DenseMatrix d = u.transpose() * filter_matrix * u;
  const Vector response = frequency_response(h, basis).concatenated();
  return (d - DenseMatrix(response.asDiagonal())).cwiseAbs().maxCoeff();
}

double layer_spectral_check(const ShiftOperators& ops, const SimplicialFilter& h, const SpectralBasis& basis,
                            const Vector& x) {
  if (x.size() == 0) return 0.0;
  const Vector out = sft(basis, apply_filter(ops, h, x)).concatenated();
  const Vector in = sft(basis, x).concatenated();
  const Vector response = frequency_response(h, basis).concatenated();
  return (out - response.cwiseProduct(in)).cwiseAbs().maxCoeff();
}

}  // namespace hodgeflow
