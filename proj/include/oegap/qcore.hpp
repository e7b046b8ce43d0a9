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

#include <complex>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oegap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Subsystem dimensions, in tensor-factor order.
using Dims = std::vector<int>;
/// Subsystem (or block) indices.
using IndexSet = std::vector<int>;

inline constexpr int kMaxDimension = 256;

namespace tol {
inline constexpr double herm = 1e-9;      // relative to operator norm
inline constexpr double psd = 1e-9;       // relative to operator norm
inline constexpr double complete = 1e-9;  // relative to operator norm
inline constexpr double trace = 1e-10;
inline constexpr double cluster = 1e-8;
}  // namespace tol

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Total Hilbert-space dimension; throws DimensionError for empty,
/// non-positive or over-cap dimension lists.
int total_dimension(const Dims& dims);

ComplexMatrix tensor(std::span<const ComplexMatrix> ops);
ComplexMatrix tensor(std::initializer_list<ComplexMatrix> ops);
ComplexVector tensor_vectors(std::span<const ComplexVector> vecs);
ComplexVector tensor_vectors(std::initializer_list<ComplexVector> vecs);

/// Reorders tensor factors: factor k of the result is factor order[k] of the input.
ComplexMatrix permute_subsystems(const ComplexMatrix& op, const Dims& dims, const IndexSet& order);
ComplexVector permute_subsystems(const ComplexVector& vec, const Dims& dims, const IndexSet& order);

/// Traces out every factor not in `keep`; the kept factors stay in ascending order.
ComplexMatrix partial_trace(const ComplexMatrix& op, const Dims& dims, const IndexSet& keep);

/// Transposes the factors listed in `subsys`, leaving the others untouched.
ComplexMatrix partial_transpose(const ComplexMatrix& op, const Dims& dims, const IndexSet& subsys);

double operator_norm(const ComplexMatrix& op);
double hermiticity_defect(const ComplexMatrix& op);
/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const ComplexMatrix& op);

/// Spectral decomposition with eigenvalues clustered into distinct groups.
struct Spectrum {
  std::vector<double> eigenvalues;          // distinct, descending
  std::vector<ComplexMatrix> projectors;    // one per distinct eigenvalue
  std::vector<ComplexMatrix> eigenvectors;  // orthonormal columns spanning each eigenspace
  std::vector<int> multiplicities;

  std::size_t size() const { return eigenvalues.size(); }
};

Spectrum spectral(const ComplexMatrix& op, double cluster_tol = tol::cluster);

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // descending, squares sum to one
  ComplexMatrix left;                // columns are left Schmidt vectors
  ComplexMatrix right;               // columns are right Schmidt vectors
};

/// Schmidt decomposition of a pure vector across `left_subsystems` versus the rest.
/// The vector is normalized first; a zero vector is rejected.
SchmidtDecomposition schmidt(const ComplexVector& vec, const Dims& dims,
                             const IndexSet& left_subsystems);

/// Density operator with subsystem structure. Construction checks shape only;
/// physical validity is reported by validate().
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, Dims dims);

  static DensityMatrix from_pure(const ComplexVector& vec, Dims dims);
  static DensityMatrix maximally_mixed(Dims dims);

  const ComplexMatrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  /// Reduced state on `keep` (ascending order).
  DensityMatrix reduced(const IndexSet& keep) const;

 private:
  ComplexMatrix matrix_;
  Dims dims_;
};

enum class PovmClass { General, LOStar, LO, LOCC1, SEP, PPT, RCT, Unverified };

std::string to_string(PovmClass c);
PovmClass povm_class_from_string(const std::string& s);

/// Finite POVM. Construction checks shapes only; validate() checks positivity
/// and completeness.
class Povm {
 public:
  Povm(std::vector<ComplexMatrix> effects, Dims dims, PovmClass tag = PovmClass::Unverified,
       std::vector<std::string> labels = {});

  static Povm trivial(Dims dims);
  /// Rank-1 projective measurement onto the columns of `basis`.
  static Povm from_basis(const ComplexMatrix& basis, Dims dims, PovmClass tag = PovmClass::General);
  /// Eigenprojector measurement M_rho of a state.
  static Povm eigenprojectors(const DensityMatrix& rho);

  const std::vector<ComplexMatrix>& effects() const { return effects_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Dims& dims() const { return dims_; }
  PovmClass class_tag() const { return tag_; }
  int dim() const { return total_dimension(dims_); }
  std::size_t size() const { return effects_.size(); }

  Povm retagged(PovmClass tag) const;
  bool is_projective(double tolerance = 1e-9) const;

 private:
  std::vector<ComplexMatrix> effects_;
  std::vector<std::string> labels_;
  Dims dims_;
  PovmClass tag_;
};

/// Disjoint, exhaustive grouping of subsystem indices. Blocks are stored in
/// canonical order: each block ascending, blocks ordered by their first index.
class PartitionSpec {
 public:
  PartitionSpec(std::vector<IndexSet> blocks, int n_subsystems);

  static PartitionSpec full(int n_subsystems);
  static PartitionSpec single_block(int n_subsystems);

  const std::vector<IndexSet>& blocks() const { return blocks_; }
  int n_subsystems() const { return n_; }
  std::size_t size() const { return blocks_.size(); }
  int block_of(int subsystem) const;
  /// Dimension of each block given subsystem dims.
  Dims block_dims(const Dims& dims) const;
  /// Subsystem order obtained by concatenating the blocks.
  IndexSet concatenated_order() const;

  bool operator==(const PartitionSpec& other) const { return blocks_ == other.blocks_; }
  bool operator<(const PartitionSpec& other) const { return blocks_ < other.blocks_; }

 private:
  std::vector<IndexSet> blocks_;
  int n_;
};

/// Rewrites an operator so that tensor factors are the blocks of `partition`.
ComplexMatrix to_block_order(const ComplexMatrix& op, const Dims& dims, const PartitionSpec& partition);
ComplexMatrix from_block_order(const ComplexMatrix& op, const Dims& dims, const PartitionSpec& partition);
ComplexVector to_block_order(const ComplexVector& vec, const Dims& dims, const PartitionSpec& partition);

/// One round of a one-way LOCC protocol: a local POVM on `block`, followed by
/// one sub-protocol per outcome. Leaves have no followups.
struct ConditionalStep {
  int block = 0;
  Povm povm;
  std::vector<ConditionalStep> next;
};

struct ConditionalMeasurement {
  Dims dims;
  PartitionSpec partition;
  ConditionalStep root;

  /// Block order along the first branch.
  IndexSet ordering() const;
};

struct Violation {
  std::string invariant;
  double magnitude = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate(const DensityMatrix& state);
ValidationReport validate(const Povm& povm);
ValidationReport validate(const ConditionalMeasurement& protocol);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

template <class T>
const T& require_valid(const T& value) {
  auto report = validate(value);
  if (!report.ok()) throw ValidationError(std::move(report));
  return value;
}

}  // namespace oegap
