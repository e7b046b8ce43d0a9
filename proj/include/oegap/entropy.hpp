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

#include <cmath>
#include <compare>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "oegap/qcore.hpp"

namespace oegap {

/// An entropy in bits. Relative entropies may take the overflow value (+inf)
/// when the support condition fails, which still orders correctly.
struct EntropyValue {
  double bits = 0.0;

  static EntropyValue overflow() { return {std::numeric_limits<double>::infinity()}; }
  bool is_overflow() const { return std::isinf(bits); }
  double nats() const { return bits * std::numbers::ln2; }

  auto operator<=>(const EntropyValue&) const = default;
};

/// Probabilities below this are treated as zero in every entropy sum.
inline constexpr double kProbabilityFloor = 1e-14;

struct OutcomeStats {
  std::vector<double> probabilities;
  std::vector<double> volumes;
  std::vector<std::string> labels;
};

OutcomeStats outcome_stats(const DensityMatrix& rho, const Povm& povm);

double shannon_bits(std::span<const double> p);
/// -sum p_i log2(p_i / V_i)
double observational_entropy_bits(std::span<const double> p, std::span<const double> volumes);
/// Classical relative entropy in bits; +inf when q vanishes where p does not.
double classical_relative_entropy_bits(std::span<const double> p, std::span<const double> q);
/// von Neumann entropy of a raw Hermitian operator (eigenvalues below the floor ignored).
double von_neumann_bits(const ComplexMatrix& rho);

EntropyValue von_neumann(const DensityMatrix& rho);
EntropyValue observational_entropy(const DensityMatrix& rho, const Povm& povm);
EntropyValue measured_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, const Povm& povm);
/// Quantum relative entropy D(rho || sigma).
EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Coarse-grained state sum_i Tr(M_i rho) M_i / Tr M_i.
DensityMatrix coarse_grain(const DensityMatrix& rho, const Povm& povm);

struct RecoveryBounds {
  EntropyValue upper;  // S(P_M(rho))
  EntropyValue lower;  // D(rho || P_M(rho)) + S(rho)
};

RecoveryBounds recovery_bounds(const DensityMatrix& rho, const Povm& povm);

struct OptimalityCertificate {
  bool optimal = false;
  std::string violated;         // empty when optimal
  int effect = -1;              // first offending effect
  double residual = 0.0;        // min_k ||M_i - P_k M_i P_k|| of that effect
  double entropy_excess = 0.0;  // S_M(rho) - S(rho)
  bool entropy_consistent = true;
};

/// Checks that every effect lives inside a single eigenspace of rho.
OptimalityCertificate certify_optimal(const DensityMatrix& rho, const Povm& povm);

struct TensorDecomposition {
  std::vector<EntropyValue> marginals;
  EntropyValue mutual_information;
  EntropyValue total;
};

/// Marginal entropies and mutual information of a product measurement whose
/// factor k acts on block k of `partition`.
TensorDecomposition tensor_oe_decompose(const DensityMatrix& rho, const PartitionSpec& partition,
                                        std::span<const Povm> local);

/// Outcome of measuring one tensor factor.
struct FactorOutcome {
  double probability = 0.0;
  double volume = 0.0;
  ComplexMatrix conditional;  // unnormalized state of the remaining factors
};

std::vector<FactorOutcome> measure_factor(const ComplexMatrix& rho, const Dims& factor_dims, int factor,
                                          std::span<const ComplexMatrix> effects);

/// Sequential entropy of a one-way protocol: S_A(rho_A) + sum_i p_i S_{B|i}(rho_i).
EntropyValue chain_entropy(const ConditionalMeasurement& protocol, const DensityMatrix& rho);

}  // namespace oegap
