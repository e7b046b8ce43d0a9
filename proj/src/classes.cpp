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

#include "oegap/classes.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace oegap {

namespace {

constexpr double kZeroNorm = 1e-12;

Dims dims_of(const Dims& dims, const IndexSet& idx) {
  Dims out;
  for (int i : idx) out.push_back(dims[i]);
  return out;
}

std::string join_labels(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out;
}

bool is_diagonal(const ComplexMatrix& op) {
  ComplexMatrix off = op;
  off.diagonal().setZero();
  return off.norm() <= kZeroNorm * std::max(1.0, op.norm());
}

void fix_phase(ComplexVector& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (std::abs(v(k)) > 1e-12) {
      v *= std::conj(v(k)) / std::abs(v(k));
      return;
    }
}

}  // namespace

std::string to_string(Separability s) {
  switch (s) {
    case Separability::Separable: return "Separable";
    case Separability::Entangled: return "Entangled";
    case Separability::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::vector<Dims> block_subsystem_dims(const Dims& dims, const PartitionSpec& partition) {
  if (static_cast<int>(dims.size()) != partition.n_subsystems())
    throw DimensionError("partition does not match the number of subsystems");
  std::vector<Dims> out;
  for (const auto& b : partition.blocks()) out.push_back(dims_of(dims, b));
  return out;
}

Povm lostar_povm(const LocalBases& bases, const PartitionSpec& partition, const Dims& dims) {
  const auto bdims = block_subsystem_dims(dims, partition);
  if (bases.unitaries.size() != bdims.size()) throw DimensionError("one basis per block is required");
  std::vector<Povm> local;
  for (std::size_t b = 0; b < bdims.size(); ++b) {
    const auto& u = bases.unitaries[b];
    if (u.rows() != total_dimension(bdims[b]) || u.cols() != u.rows())
      throw DimensionError("basis does not match its block");
    local.push_back(Povm::from_basis(u, bdims[b]));
  }
  return lo_povm(local, partition, dims).retagged(PovmClass::LOStar);
}

Povm lo_povm(std::span<const Povm> local, const PartitionSpec& partition, const Dims& dims) {
  const auto bdims = block_subsystem_dims(dims, partition);
  if (local.size() != bdims.size()) throw DimensionError("one POVM per block is required");
  for (std::size_t b = 0; b < local.size(); ++b) {
    if (local[b].dims() != bdims[b]) throw DimensionError("local POVM does not match its block");
    require_valid(local[b]);
  }
  const Dims block_dims = partition.block_dims(dims);
  std::size_t total = 1;
  for (const auto& m : local) total *= m.size();
  std::vector<ComplexMatrix> effects;
  std::vector<std::string> labels;
  for (std::size_t t = 0; t < total; ++t) {
    std::vector<ComplexMatrix> factors(local.size());
    std::vector<std::string> parts(local.size());
    std::size_t rest = t;
    for (std::size_t b = local.size(); b-- > 0;) {
      const std::size_t i = rest % local[b].size();
      rest /= local[b].size();
      factors[b] = local[b].effects()[i];
      parts[b] = local[b].labels()[i];
    }
    effects.push_back(from_block_order(tensor(factors), dims, partition));
    labels.push_back(join_labels(parts));
  }
  return Povm(std::move(effects), dims, PovmClass::LO, std::move(labels));
}

namespace {

void flatten_into(const ConditionalStep& step, const ConditionalMeasurement& protocol,
                  std::vector<ComplexMatrix>& factors, std::vector<bool>& used, std::vector<std::string>& path,
                  std::vector<ComplexMatrix>& effects, std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < step.povm.size(); ++i) {
    factors[step.block] = step.povm.effects()[i];
    used[step.block] = true;
    path.push_back(step.povm.labels()[i]);
    if (step.next.empty()) {
      if (std::find(used.begin(), used.end(), false) != used.end())
        throw std::invalid_argument("protocol leaves a block unmeasured");
      effects.push_back(from_block_order(tensor(factors), protocol.dims, protocol.partition));
      labels.push_back(join_labels(path));
    } else {
      flatten_into(step.next.at(i), protocol, factors, used, path, effects, labels);
    }
    path.pop_back();
    used[step.block] = false;
  }
}

}  // namespace

Povm flatten_locc(const ConditionalMeasurement& protocol) {
  require_valid(protocol);
  const Dims bd = protocol.partition.block_dims(protocol.dims);
  std::vector<ComplexMatrix> factors;
  for (int d : bd) factors.push_back(ComplexMatrix::Identity(d, d));
  std::vector<bool> used(bd.size(), false);
  std::vector<std::string> path;
  std::vector<ComplexMatrix> effects;
  std::vector<std::string> labels;
  flatten_into(protocol.root, protocol, factors, used, path, effects, labels);
  return Povm(std::move(effects), protocol.dims, PovmClass::LOCC1, std::move(labels));
}

ConditionalMeasurement product_protocol(std::span<const Povm> local, const PartitionSpec& partition,
                                        const Dims& dims, const IndexSet& ordering) {
  if (ordering.size() != local.size() || local.size() != partition.size())
    throw std::invalid_argument("ordering must list every block once");
  std::function<ConditionalStep(std::size_t)> build = [&](std::size_t pos) {
    const int b = ordering[pos];
    ConditionalStep step{b, local[b], {}};
    if (pos + 1 < ordering.size())
      for (std::size_t i = 0; i < local[b].size(); ++i) step.next.push_back(build(pos + 1));
    return step;
  };
  return ConditionalMeasurement{dims, partition, build(0)};
}

Povm rank1_refine(const Povm& povm) {
  std::vector<ComplexMatrix> effects;
  std::vector<std::string> labels;
  const int d = povm.dim();
  for (std::size_t i = 0; i < povm.size(); ++i) {
    const ComplexMatrix& m = povm.effects()[i];
    const double scale = std::max(1.0, operator_norm(m));
    int piece = 0;
    auto emit = [&](ComplexMatrix e) {
      effects.push_back(std::move(e));
      labels.push_back(povm.labels()[i] + "." + std::to_string(piece++));
    };
    if (is_diagonal(m)) {
      for (int k = 0; k < d; ++k) {
        const double w = m(k, k).real();
        if (w <= kZeroNorm * scale) continue;
        ComplexMatrix e = ComplexMatrix::Zero(d, d);
        e(k, k) = w;
        emit(std::move(e));
      }
      continue;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
    for (int k = d - 1; k >= 0; --k) {
      const double w = es.eigenvalues()(k);
      if (w <= kZeroNorm * scale) continue;
      ComplexVector v = es.eigenvectors().col(k);
      fix_phase(v);
      emit(w * v * v.adjoint());
    }
  }
  return Povm(std::move(effects), povm.dims(), povm.class_tag(), std::move(labels));
}

Povm cpp_apply(const StochasticMap& map, const Povm& povm) {
  const auto& l = map.matrix;
  if (l.cols() != static_cast<Eigen::Index>(povm.size())) throw DimensionError("stochastic map shape mismatch");
  if ((l.array() < 0.0).any()) throw std::invalid_argument("stochastic map has negative entries");
  for (Eigen::Index i = 0; i < l.cols(); ++i)
    if (std::abs(l.col(i).sum() - 1.0) > 1e-12) throw std::invalid_argument("stochastic map column does not sum to 1");
  std::vector<ComplexMatrix> effects;
  for (Eigen::Index j = 0; j < l.rows(); ++j) {
    ComplexMatrix e = ComplexMatrix::Zero(povm.dim(), povm.dim());
    for (Eigen::Index i = 0; i < l.cols(); ++i)
      if (l(j, i) != 0.0) e += l(j, i) * povm.effects()[i];
    effects.push_back(std::move(e));
  }
  return Povm(std::move(effects), povm.dims(), PovmClass::Unverified);
}

bool is_ppt_operator(const ComplexMatrix& op, const Dims& dims, const PartitionSpec& partition) {
  const int nb = static_cast<int>(partition.size());
  const double floor = -tol::psd * std::max(1.0, operator_norm(op));
  // Transposing a set or its complement gives the same spectrum, so the last block never needs to move.
  for (unsigned mask = 1; mask < (1u << (nb - 1)); ++mask) {
    IndexSet subsys;
    for (int b = 0; b < nb; ++b)
      if (mask & (1u << b)) subsys.insert(subsys.end(), partition.blocks()[b].begin(), partition.blocks()[b].end());
    if (min_eigenvalue(partial_transpose(op, dims, subsys)) < floor) return false;
  }
  return true;
}

bool is_rct_operator(const ComplexMatrix& op, const Dims& dims, const PartitionSpec& partition) {
  if (partition.size() < 2) return true;
  const double floor = -tol::psd * std::max(1.0, operator_norm(op));
  const Dims bd = partition.block_dims(dims);
  const ComplexMatrix ob = to_block_order(op, dims, partition);
  for (std::size_t b = 0; b < partition.size(); ++b) {
    const ComplexMatrix marginal = partial_trace(ob, bd, {static_cast<int>(b)});
    std::vector<ComplexMatrix> factors;
    for (std::size_t c = 0; c < bd.size(); ++c)
      factors.push_back(c == b ? marginal : ComplexMatrix::Identity(bd[c], bd[c]));
    if (min_eigenvalue(tensor(factors) - ob) < floor) return false;
  }
  return true;
}

bool is_product_operator(const ComplexMatrix& op, const Dims& dims, const PartitionSpec& partition) {
  if (partition.size() < 2) return true;
  const Dims bd = partition.block_dims(dims);
  const ComplexMatrix ob = to_block_order(op, dims, partition);
  const double scale = std::max(1e-300, ob.norm());
  for (std::size_t b = 0; b < bd.size(); ++b) {
    IndexSet order{static_cast<int>(b)};
    for (std::size_t c = 0; c < bd.size(); ++c)
      if (c != b) order.push_back(static_cast<int>(c));
    const ComplexMatrix p = permute_subsystems(ob, bd, order);
    const int da = bd[b];
    const int dr = static_cast<int>(p.rows()) / da;
    // Realignment R((a,a'), (x,x')) = p((a,x), (a',x')).
    ComplexMatrix r(da * da, dr * dr);
    for (int a = 0; a < da; ++a)
      for (int a2 = 0; a2 < da; ++a2)
        for (int x = 0; x < dr; ++x)
          for (int x2 = 0; x2 < dr; ++x2) r(a * da + a2, x * dr + x2) = p(a * dr + x, a2 * dr + x2);
    Eigen::JacobiSVD<ComplexMatrix> svd(r);
    const auto& s = svd.singularValues();
    if (s.size() > 1 && s(1) > 1e-7 * scale) return false;
  }
  return true;
}

bool is_product_vector(const ComplexVector& vec, const Dims& dims, const PartitionSpec& partition) {
  if (partition.size() < 2) return true;
  for (const auto& block : partition.blocks()) {
    const auto sd = schmidt(vec, dims, block);
    if (sd.coefficients.size() > 1 && sd.coefficients[1] > 1e-6) return false;
  }
  return true;
}

std::vector<bool> is_ppt(const Povm& povm, const PartitionSpec& partition) {
  std::vector<bool> out;
  for (const auto& e : povm.effects()) out.push_back(is_ppt_operator(e, povm.dims(), partition));
  return out;
}

std::vector<bool> is_rct(const Povm& povm, const PartitionSpec& partition) {
  std::vector<bool> out;
  for (const auto& e : povm.effects()) out.push_back(is_rct_operator(e, povm.dims(), partition));
  return out;
}

Separability is_separable_effect(const ComplexMatrix& effect, const Dims& dims, const PartitionSpec& partition) {
  if (partition.size() < 2 || effect.norm() <= kZeroNorm || is_diagonal(effect)) return Separability::Separable;
  const Spectrum spec = spectral(effect);
  const double floor = 1e-10 * std::max(1.0, operator_norm(effect));
  bool product = true;
  for (std::size_t k = 0; k < spec.size() && product; ++k) {
    if (spec.eigenvalues[k] <= floor) continue;
    if (spec.multiplicities[k] != 1) {
      product = false;
      break;
    }
    product = is_product_vector(spec.eigenvectors[k].col(0), dims, partition);
  }
  if (product) return Separability::Separable;
  if (!is_ppt_operator(effect, dims, partition)) return Separability::Entangled;
  return Separability::Unknown;
}

}  // namespace oegap
