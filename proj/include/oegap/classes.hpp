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

/// One unitary per block; column k is basis vector k of that block.
struct LocalBases {
  std::vector<ComplexMatrix> unitaries;
};

/// Column-stochastic matrix Lambda(j, i) = probability of relabelling outcome i as j.
struct StochasticMap {
  Eigen::MatrixXd matrix;
};

enum class Separability { Separable, Entangled, Unknown };
std::string to_string(Separability s);

/// Subsystem dims of each block, in block order.
std::vector<Dims> block_subsystem_dims(const Dims& dims, const PartitionSpec& partition);

Povm lostar_povm(const LocalBases& bases, const PartitionSpec& partition, const Dims& dims);
Povm lo_povm(std::span<const Povm> local, const PartitionSpec& partition, const Dims& dims);
Povm flatten_locc(const ConditionalMeasurement& protocol);
/// Product protocol measuring the blocks in `ordering` with fixed local POVMs.
ConditionalMeasurement product_protocol(std::span<const Povm> local, const PartitionSpec& partition,
                                        const Dims& dims, const IndexSet& ordering);

/// Splits every effect into rank-1 pieces. Diagonal effects split along the
/// computational basis; others along their eigenvectors.
Povm rank1_refine(const Povm& povm);

Povm cpp_apply(const StochasticMap& map, const Povm& povm);

/// Positive partial transpose over every bipartition of the blocks.
bool is_ppt_operator(const ComplexMatrix& op, const Dims& dims, const PartitionSpec& partition);
/// Reduction criterion Tr_rest(op) (x) 1 - op >= 0 for every block.
bool is_rct_operator(const ComplexMatrix& op, const Dims& dims, const PartitionSpec& partition);
/// Operator Schmidt rank one across every block cut.
bool is_product_operator(const ComplexMatrix& op, const Dims& dims, const PartitionSpec& partition);
bool is_product_vector(const ComplexVector& vec, const Dims& dims, const PartitionSpec& partition);

std::vector<bool> is_ppt(const Povm& povm, const PartitionSpec& partition);
std::vector<bool> is_rct(const Povm& povm, const PartitionSpec& partition);

Separability is_separable_effect(const ComplexMatrix& effect, const Dims& dims, const PartitionSpec& partition);

}  // namespace oegap
