// Copyright 2026 The oegap Authors
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

#include <vector>

#include "oegap/optimize.hpp"
#include "oegap/random.hpp"
#include "oegap/simplex.hpp"

namespace oegap::detail {

/// Observational entropy of the product measurement whose block-b effects are
/// f f^dagger for the columns f of frames[b]; rho is in block order.
double frame_entropy(const ComplexMatrix& rho_blocks, const std::vector<ComplexMatrix>& frames);

/// Column vectors of a rank-1 POVM as a Povm on the given dims.
Povm frame_povm(const ComplexMatrix& frame, const Dims& dims, PovmClass tag);

/// U0 exp(iH) with H the off-diagonal Hermitian matrix encoded by x (D^2 - D reals).
int unitary_chart_size(int d);
ComplexMatrix unitary_from_chart(const ComplexMatrix& u0, const double* x, int d);

/// Normalized rank-1 frame G^{-1/2} g from raw vectors g (2 n D reals, column major,
/// re/im interleaved). Returns false when G is singular.
bool frame_from_raw(const double* x, int d, int n, ComplexMatrix& frame);
std::vector<double> raw_from_frame(const ComplexMatrix& frame);

/// Eigenvectors of rho's marginal on each block, columns in descending eigenvalue order.
std::vector<ComplexMatrix> marginal_eigenbases(const DensityMatrix& rho, const PartitionSpec& partition);
ComplexMatrix eigenbasis(const ComplexMatrix& op);

/// Random raw frame with n Gaussian vectors.
ComplexMatrix gaussian_vectors(int d, int n, Rng& rng);
/// Frame padded with zero columns up to n.
ComplexMatrix pad_columns(const ComplexMatrix& frame, int n);
/// Rank-1 vectors sqrt(w) v of every effect (effects must be rank 1).
ComplexMatrix frame_of(const Povm& povm);

/// Fills cls, entropy, gap and witness helpers of a result.
void finish(OptResult& r, const DensityMatrix& rho, double entropy_bits);
/// Exact result for a single-block partition: the eigenprojector measurement.
OptResult single_block_result(const DensityMatrix& rho, PovmClass cls);
/// max_b S(rho_b) - S(rho), floored at 0.
double marginal_lower_bound(const DensityMatrix& rho, const PartitionSpec& partition);

/// Index of the minimum; ties resolve to the earliest entry.
std::size_t argmin(const std::vector<double>& values);

/// Nelder-Mead followed by two re-centred polishing passes through `recenter`.
struct PolishedRun {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
};
PolishedRun simplex_with_polish(const Objective& f, std::vector<double> x0, const OptConfig& cfg,
                                double initial_step);

/// Lawson-Hanson non-negative least squares: argmin ||A x - b|| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace oegap::detail
