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

#include <span>
#include <string>
#include <vector>

#include "oegap/qcore.hpp"

namespace oegap {

ComplexVector basis_vector(int d, int k);

ComplexVector bell_vector();
ComplexVector ghz_vector(int n);
ComplexVector w_vector(int n);
DensityMatrix bell();
DensityMatrix ghz(int n);
DensityMatrix w(int n);

ComplexMatrix flip_operator(int d);
ComplexMatrix symmetric_projector(int d);
ComplexMatrix antisymmetric_projector(int d);
DensityMatrix werner(int d, double lambda);

/// Classical-quantum state sum_k weights[k] |k><k| (x) conditionals[k]; the
/// classical register is subsystem 0 in its computational basis.
struct CqState {
  DensityMatrix state;
  std::vector<double> weights;
  std::vector<ComplexMatrix> conditionals;
};

CqState cq(int classical_dim, std::vector<ComplexMatrix> conditionals, std::vector<double> weights);
CqState trine_cq();
/// (|00><00| + |1+><1+|) / 2
CqState cq_example();
/// (|00> + |1+>) / sqrt 2, whose local dephasing is cq_example().
ComplexVector cq_pure_vector();
DensityMatrix cq_pure();

/// phi+_AC (x) phi+_BD on subsystems A, B, C, D.
DensityMatrix two_bell();

/// Nine orthonormal product vectors of C^3 (x) C^3.
std::vector<ComplexVector> domino_basis();
DensityMatrix domino_mixture(std::span<const double> p);
/// Five-vector unextendible product basis of C^3 (x) C^3.
std::vector<ComplexVector> tiles_upb();
DensityMatrix tiles_upb_state(std::span<const double> p);
/// Projector onto the orthogonal complement of the tiles UPB.
ComplexMatrix tiles_kernel_projector();

DensityMatrix dephase_local(const DensityMatrix& rho, int subsystem, const ComplexMatrix& basis);
DensityMatrix depolarize(const DensityMatrix& rho);
/// Exact U (x) U twirl: orthogonal projection onto span{1, F}.
ComplexMatrix twirl_uu(const ComplexMatrix& op, int d);

struct CatalogEntry {
  std::string name;     // canonical spec with default parameters
  std::string summary;
};

std::vector<CatalogEntry> catalog();
/// Builds a state from a spec such as "werner(d=3,lambda=0.7)", "w(4)" or "trine".
DensityMatrix from_catalog(const std::string& spec);

}  // namespace oegap
