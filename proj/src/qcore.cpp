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

#include "oegap/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace oegap {

namespace {

// Digits of a flat index in the mixed radix given by dims (first factor most significant).
void unflatten(int index, const Dims& dims, std::vector<int>& digits) {
  digits.resize(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

int flatten(const std::vector<int>& digits, const Dims& dims) {
  int index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

void check_indices(const IndexSet& idx, std::size_t n, const char* what) {
  std::vector<bool> seen(n, false);
  for (int i : idx) {
    if (i < 0 || static_cast<std::size_t>(i) >= n)
      throw DimensionError(std::string(what) + ": subsystem index out of range");
    if (seen[i]) throw DimensionError(std::string(what) + ": repeated subsystem index");
    seen[i] = true;
  }
}

void check_operator(const ComplexMatrix& op, const Dims& dims, const char* what) {
  const int d = total_dimension(dims);
  if (op.rows() != d || op.cols() != d)
    throw DimensionError(std::string(what) + ": operator shape does not match dims");
}

// perm[new_flat] = old_flat for the factor reordering `order`.
std::vector<int> basis_permutation(const Dims& dims, const IndexSet& order) {
  if (order.size() != dims.size()) throw DimensionError("permute_subsystems: order size mismatch");
  check_indices(order, dims.size(), "permute_subsystems");
  Dims new_dims(dims.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_dims[k] = dims[order[k]];
  const int d = total_dimension(dims);
  std::vector<int> perm(d);
  std::vector<int> new_digits, old_digits(dims.size());
  for (int i = 0; i < d; ++i) {
    unflatten(i, new_dims, new_digits);
    for (std::size_t k = 0; k < order.size(); ++k) old_digits[order[k]] = new_digits[k];
    perm[i] = flatten(old_digits, dims);
  }
  return perm;
}

}  // namespace

int total_dimension(const Dims& dims) {
  if (dims.empty()) throw DimensionError("empty dimension list");
  long long d = 1;
  for (int k : dims) {
    if (k < 1) throw DimensionError("subsystem dimensions must be positive");
    d *= k;
    if (d > kMaxDimension)
      throw DimensionError("total dimension exceeds the cap of " + std::to_string(kMaxDimension));
  }
  return static_cast<int>(d);
}

ComplexMatrix tensor(std::span<const ComplexMatrix> ops) {
  if (ops.empty()) throw std::invalid_argument("tensor: empty operator list");
  ComplexMatrix out = ops.front();
  for (std::size_t k = 1; k < ops.size(); ++k) {
    const ComplexMatrix& b = ops[k];
    ComplexMatrix next(out.rows() * b.rows(), out.cols() * b.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        next.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = out(i, j) * b;
    out = std::move(next);
  }
  return out;
}

ComplexMatrix tensor(std::initializer_list<ComplexMatrix> ops) {
  return tensor(std::span<const ComplexMatrix>(ops.begin(), ops.size()));
}

ComplexVector tensor_vectors(std::span<const ComplexVector> vecs) {
  if (vecs.empty()) throw std::invalid_argument("tensor: empty vector list");
  ComplexVector out = vecs.front();
  for (std::size_t k = 1; k < vecs.size(); ++k) {
    const ComplexVector& b = vecs[k];
    ComplexVector next(out.size() * b.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * b.size(), b.size()) = out(i) * b;
    out = std::move(next);
  }
  return out;
}

ComplexVector tensor_vectors(std::initializer_list<ComplexVector> vecs) {
  return tensor_vectors(std::span<const ComplexVector>(vecs.begin(), vecs.size()));
}

ComplexMatrix permute_subsystems(const ComplexMatrix& op, const Dims& dims, const IndexSet& order) {
  check_operator(op, dims, "permute_subsystems");
  const auto perm = basis_permutation(dims, order);
  const int d = static_cast<int>(perm.size());
  ComplexMatrix out(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) out(i, j) = op(perm[i], perm[j]);
  return out;
}

ComplexVector permute_subsystems(const ComplexVector& vec, const Dims& dims, const IndexSet& order) {
  if (vec.size() != total_dimension(dims)) throw DimensionError("permute_subsystems: vector size mismatch");
  const auto perm = basis_permutation(dims, order);
  ComplexVector out(vec.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out(i) = vec(perm[i]);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& op, const Dims& dims, const IndexSet& keep) {
  check_operator(op, dims, "partial_trace");
  check_indices(keep, dims.size(), "partial_trace");
  IndexSet kept = keep;
  std::sort(kept.begin(), kept.end());
  IndexSet order = kept;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    if (!std::binary_search(kept.begin(), kept.end(), k)) order.push_back(k);
  const ComplexMatrix permuted = permute_subsystems(op, dims, order);
  int dk = 1;
  for (int k : kept) dk *= dims[k];
  const int dr = static_cast<int>(op.rows()) / dk;
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (int b = 0; b < dk; ++b)
    for (int a = 0; a < dk; ++a) {
      Complex s = 0.0;
      for (int x = 0; x < dr; ++x) s += permuted(a * dr + x, b * dr + x);
      out(a, b) = s;
    }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& op, const Dims& dims, const IndexSet& subsys) {
  check_operator(op, dims, "partial_transpose");
  check_indices(subsys, dims.size(), "partial_transpose");
  const int d = static_cast<int>(op.rows());
  ComplexMatrix out(d, d);
  std::vector<int> ri, ci;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      unflatten(i, dims, ri);
      unflatten(j, dims, ci);
      for (int k : subsys) std::swap(ri[k], ci[k]);
      out(flatten(ri, dims), flatten(ci, dims)) = op(i, j);
    }
  }
  return out;
}

double operator_norm(const ComplexMatrix& op) {
  if (op.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(op);
  return svd.singularValues()(0);
}

double hermiticity_defect(const ComplexMatrix& op) {
  return operator_norm(op - op.adjoint());
}

double min_eigenvalue(const ComplexMatrix& op) {
  const ComplexMatrix h = 0.5 * (op + op.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Spectrum spectral(const ComplexMatrix& op, double cluster_tol) {
  if (op.rows() != op.cols()) throw DimensionError("spectral: operator is not square");
  const double scale = std::max(1.0, operator_norm(op));
  if (hermiticity_defect(op) > tol::herm * scale)
    throw std::invalid_argument("spectral: operator is not Hermitian");
  const ComplexMatrix h = 0.5 * (op + op.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const RealVector& evals = es.eigenvalues();
  const ComplexMatrix& evecs = es.eigenvectors();
  const int d = static_cast<int>(h.rows());

  Spectrum out;
  // Descending order; a new cluster starts whenever the gap to the previous
  // eigenvalue exceeds cluster_tol.
  int k = d - 1;
  while (k >= 0) {
    int start = k;
    while (k - 1 >= 0 && evals(k) - evals(k - 1) <= cluster_tol) --k;
    const int count = start - k + 1;
    ComplexMatrix vecs(d, count);
    double sum = 0.0;
    for (int c = 0; c < count; ++c) {
      vecs.col(c) = evecs.col(start - c);
      sum += evals(start - c);
    }
    out.eigenvalues.push_back(sum / count);
    out.projectors.push_back(vecs * vecs.adjoint());
    out.eigenvectors.push_back(std::move(vecs));
    out.multiplicities.push_back(count);
    --k;
  }
  return out;
}

SchmidtDecomposition schmidt(const ComplexVector& vec, const Dims& dims, const IndexSet& left_subsystems) {
  if (vec.size() != total_dimension(dims)) throw DimensionError("schmidt: vector size mismatch");
  check_indices(left_subsystems, dims.size(), "schmidt");
  const double norm = vec.norm();
  if (norm == 0.0) throw std::invalid_argument("schmidt: zero vector");
  IndexSet left = left_subsystems;
  std::sort(left.begin(), left.end());
  IndexSet order = left;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    if (!std::binary_search(left.begin(), left.end(), k)) order.push_back(k);
  const ComplexVector permuted = permute_subsystems(ComplexVector(vec / norm), dims, order);
  int dl = 1;
  for (int k : left) dl *= dims[k];
  const int dr = static_cast<int>(vec.size()) / dl;
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const ComplexMatrix amp = Eigen::Map<const RowMajor>(permuted.data(), dl, dr);
  Eigen::JacobiSVD<ComplexMatrix> svd(amp, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  const auto& s = svd.singularValues();
  for (Eigen::Index k = 0; k < s.size(); ++k) out.coefficients.push_back(s(k));
  out.left = svd.matrixU();
  out.right = svd.matrixV().conjugate();
  return out;
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix matrix, Dims dims) : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  const int d = total_dimension(dims_);
  if (matrix_.rows() != d || matrix_.cols() != d)
    throw DimensionError("density matrix shape does not match dims");
  if (!matrix_.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& vec, Dims dims) {
  const double norm = vec.norm();
  if (norm == 0.0) throw std::invalid_argument("from_pure: zero vector");
  const ComplexVector v = vec / norm;
  return DensityMatrix(v * v.adjoint(), std::move(dims));
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
  const int d = total_dimension(dims);
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d), std::move(dims));
}

DensityMatrix DensityMatrix::reduced(const IndexSet& keep) const {
  IndexSet kept = keep;
  std::sort(kept.begin(), kept.end());
  Dims kd;
  for (int k : kept) kd.push_back(dims_.at(k));
  return DensityMatrix(partial_trace(matrix_, dims_, kept), kd);
}

std::string to_string(PovmClass c) {
  switch (c) {
    case PovmClass::General: return "General";
    case PovmClass::LOStar: return "LOStar";
    case PovmClass::LO: return "LO";
    case PovmClass::LOCC1: return "LOCC1";
    case PovmClass::SEP: return "SEP";
    case PovmClass::PPT: return "PPT";
    case PovmClass::RCT: return "RCT";
    case PovmClass::Unverified: return "Unverified";
  }
  return "Unverified";
}

PovmClass povm_class_from_string(const std::string& s) {
  for (auto c : {PovmClass::General, PovmClass::LOStar, PovmClass::LO, PovmClass::LOCC1, PovmClass::SEP,
                 PovmClass::PPT, PovmClass::RCT, PovmClass::Unverified})
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown POVM class tag '" + s + "'");
}

Povm::Povm(std::vector<ComplexMatrix> effects, Dims dims, PovmClass tag, std::vector<std::string> labels)
    : effects_(std::move(effects)), labels_(std::move(labels)), dims_(std::move(dims)), tag_(tag) {
  const int d = total_dimension(dims_);
  if (effects_.empty()) throw std::invalid_argument("POVM needs at least one effect");
  for (const auto& e : effects_) {
    if (e.rows() != d || e.cols() != d) throw DimensionError("POVM effect shape does not match dims");
    if (!e.allFinite()) throw std::invalid_argument("POVM effect has non-finite entries");
  }
  if (labels_.empty())
    for (std::size_t i = 0; i < effects_.size(); ++i) labels_.push_back(std::to_string(i));
  if (labels_.size() != effects_.size()) throw std::invalid_argument("POVM label count mismatch");
}

Povm Povm::trivial(Dims dims) {
  const int d = total_dimension(dims);
  return Povm({ComplexMatrix::Identity(d, d)}, std::move(dims), PovmClass::General, {"1"});
}

Povm Povm::from_basis(const ComplexMatrix& basis, Dims dims, PovmClass tag) {
  std::vector<ComplexMatrix> effects;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) effects.push_back(basis.col(k) * basis.col(k).adjoint());
  return Povm(std::move(effects), std::move(dims), tag);
}

Povm Povm::eigenprojectors(const DensityMatrix& rho) {
  const auto spec = spectral(rho.matrix());
  return Povm(spec.projectors, rho.dims(), PovmClass::General);
}

Povm Povm::retagged(PovmClass tag) const {
  Povm out = *this;
  out.tag_ = tag;
  return out;
}

bool Povm::is_projective(double tolerance) const {
  for (std::size_t i = 0; i < effects_.size(); ++i) {
    if (operator_norm(effects_[i] * effects_[i] - effects_[i]) > tolerance) return false;
    for (std::size_t j = i + 1; j < effects_.size(); ++j)
      if (operator_norm(effects_[i] * effects_[j]) > tolerance) return false;
  }
  return true;
}

PartitionSpec::PartitionSpec(std::vector<IndexSet> blocks, int n_subsystems) : blocks_(std::move(blocks)), n_(n_subsystems) {
  if (n_ < 1) throw std::invalid_argument("partition needs at least one subsystem");
  std::vector<bool> seen(n_, false);
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("partition has an empty block");
    for (int i : b) {
      if (i < 0 || i >= n_) throw std::invalid_argument("partition index out of range");
      if (seen[i]) throw std::invalid_argument("partition blocks are not disjoint");
      seen[i] = true;
    }
    std::sort(b.begin(), b.end());
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument("partition blocks do not cover every subsystem");
  std::sort(blocks_.begin(), blocks_.end());
}

PartitionSpec PartitionSpec::full(int n) {
  std::vector<IndexSet> blocks;
  for (int i = 0; i < n; ++i) blocks.push_back({i});
  return PartitionSpec(std::move(blocks), n);
}

PartitionSpec PartitionSpec::single_block(int n) {
  IndexSet all(n);
  std::iota(all.begin(), all.end(), 0);
  return PartitionSpec({all}, n);
}

int PartitionSpec::block_of(int subsystem) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    if (std::find(blocks_[b].begin(), blocks_[b].end(), subsystem) != blocks_[b].end()) return static_cast<int>(b);
  throw std::out_of_range("subsystem not in partition");
}

Dims PartitionSpec::block_dims(const Dims& dims) const {
  if (static_cast<int>(dims.size()) != n_) throw DimensionError("partition does not match dims");
  Dims out;
  for (const auto& b : blocks_) {
    int d = 1;
    for (int i : b) d *= dims[i];
    out.push_back(d);
  }
  return out;
}

IndexSet PartitionSpec::concatenated_order() const {
  IndexSet order;
  for (const auto& b : blocks_) order.insert(order.end(), b.begin(), b.end());
  return order;
}

ComplexMatrix to_block_order(const ComplexMatrix& op, const Dims& dims, const PartitionSpec& partition) {
  return permute_subsystems(op, dims, partition.concatenated_order());
}

ComplexMatrix from_block_order(const ComplexMatrix& op, const Dims& dims, const PartitionSpec& partition) {
  const IndexSet order = partition.concatenated_order();
  IndexSet inverse(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) inverse[order[k]] = static_cast<int>(k);
  Dims permuted_dims(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) permuted_dims[k] = dims[order[k]];
  return permute_subsystems(op, permuted_dims, inverse);
}

ComplexVector to_block_order(const ComplexVector& vec, const Dims& dims, const PartitionSpec& partition) {
  return permute_subsystems(vec, dims, partition.concatenated_order());
}

IndexSet ConditionalMeasurement::ordering() const {
  IndexSet out;
  const ConditionalStep* step = &root;
  while (true) {
    out.push_back(step->block);
    if (step->next.empty()) break;
    step = &step->next.front();
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].invariant << " (magnitude " << violations[i].magnitude << ")";
  }
  return os.str();
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error("validation failed: " + report.summary()), report_(std::move(report)) {}

namespace {

void check_effect_like(const ComplexMatrix& op, const std::string& name, ValidationReport& report) {
  const double scale = std::max(1.0, operator_norm(op));
  const double herm = hermiticity_defect(op);
  if (herm > tol::herm * scale) report.violations.push_back({name + " not Hermitian", herm});
  const double lmin = min_eigenvalue(op);
  if (lmin < -tol::psd * scale) report.violations.push_back({name + " not positive semidefinite", -lmin});
}

}  // namespace

ValidationReport validate(const DensityMatrix& state) {
  ValidationReport report;
  check_effect_like(state.matrix(), "state", report);
  const Complex tr = state.matrix().trace();
  const double dev = std::abs(tr - Complex(1.0, 0.0));
  if (dev > tol::trace) report.violations.push_back({"state trace differs from 1", dev});
  return report;
}

ValidationReport validate(const Povm& povm) {
  ValidationReport report;
  const int d = povm.dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < povm.size(); ++i) {
    check_effect_like(povm.effects()[i], "effect " + povm.labels()[i], report);
    sum += povm.effects()[i];
  }
  const double dev = operator_norm(sum - ComplexMatrix::Identity(d, d));
  if (dev > tol::complete) report.violations.push_back({"effects do not sum to identity", dev});
  return report;
}

namespace {

void validate_step(const ConditionalStep& step, const Dims& block_dims, std::vector<bool> measured,
                   ValidationReport& report) {
  if (step.block < 0 || step.block >= static_cast<int>(block_dims.size())) {
    report.violations.push_back({"protocol block index out of range", 1.0});
    return;
  }
  if (measured[step.block]) {
    report.violations.push_back({"protocol measures a block twice", 1.0});
    return;
  }
  if (step.povm.dim() != block_dims[step.block]) {
    report.violations.push_back({"protocol POVM dimension does not match its block", 1.0});
    return;
  }
  auto sub = validate(step.povm);
  report.violations.insert(report.violations.end(), sub.violations.begin(), sub.violations.end());
  measured[step.block] = true;
  const bool done = std::all_of(measured.begin(), measured.end(), [](bool b) { return b; });
  if (done) {
    if (!step.next.empty()) report.violations.push_back({"protocol continues after all blocks are measured", 1.0});
    return;
  }
  if (step.next.size() != step.povm.size()) {
    report.violations.push_back({"protocol outcome without a follow-up measurement",
                                 static_cast<double>(step.povm.size()) - static_cast<double>(step.next.size())});
    return;
  }
  for (const auto& n : step.next) validate_step(n, block_dims, measured, report);
}

}  // namespace

ValidationReport validate(const ConditionalMeasurement& protocol) {
  ValidationReport report;
  Dims bd;
  try {
    bd = protocol.partition.block_dims(protocol.dims);
  } catch (const std::exception& e) {
    report.violations.push_back({std::string("protocol dims: ") + e.what(), 1.0});
    return report;
  }
  validate_step(protocol.root, bd, std::vector<bool>(bd.size(), false), report);
  return report;
}

}  // namespace oegap
