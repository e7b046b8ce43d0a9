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

#include "oegap/entropy.hpp"

#include <algorithm>
#include <numeric>

#include "oegap/parallel.hpp"

namespace oegap {

namespace {

void check_dims(const DensityMatrix& rho, const Povm& povm) {
  if (rho.dim() != povm.dim()) throw DimensionError("state and POVM dimensions differ");
}

double xlog2(double p, double ratio) { return p * std::log2(ratio); }

}  // namespace

OutcomeStats outcome_stats(const DensityMatrix& rho, const Povm& povm) {
  check_dims(rho, povm);
  OutcomeStats out;
  out.probabilities = parallel::probabilities_serial(rho.matrix(), povm.effects());
  out.volumes.reserve(povm.size());
  for (const auto& e : povm.effects()) out.volumes.push_back(e.trace().real());
  out.labels = povm.labels();
  return out;
}

double shannon_bits(std::span<const double> p) {
  double s = 0.0;
  for (double x : p)
    if (x > kProbabilityFloor) s -= xlog2(x, x);
  return s;
}

double observational_entropy_bits(std::span<const double> p, std::span<const double> volumes) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > kProbabilityFloor) s -= xlog2(p[i], p[i] / volumes[i]);
  return s;
}

double classical_relative_entropy_bits(std::span<const double> p, std::span<const double> q) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= kProbabilityFloor) continue;
    if (q[i] <= kProbabilityFloor) return std::numeric_limits<double>::infinity();
    d += xlog2(p[i], p[i] / q[i]);
  }
  return d;
}

double von_neumann_bits(const ComplexMatrix& rho) {
  const ComplexMatrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  const RealVector& ev = es.eigenvalues();
  return shannon_bits(std::span<const double>(ev.data(), ev.size()));
}

EntropyValue von_neumann(const DensityMatrix& rho) { return {von_neumann_bits(rho.matrix())}; }

EntropyValue observational_entropy(const DensityMatrix& rho, const Povm& povm) {
  const auto stats = outcome_stats(rho, povm);
  return {observational_entropy_bits(stats.probabilities, stats.volumes)};
}

EntropyValue measured_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, const Povm& povm) {
  check_dims(rho, povm);
  check_dims(sigma, povm);
  const auto p = parallel::probabilities_serial(rho.matrix(), povm.effects());
  const auto q = parallel::probabilities_serial(sigma.matrix(), povm.effects());
  return {classical_relative_entropy_bits(p, q)};
}

EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("relative_entropy: dimension mismatch");
  const ComplexMatrix hs = 0.5 * (sigma.matrix() + sigma.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hs);
  double cross = 0.0;  // -Tr rho log sigma
  for (Eigen::Index k = 0; k < hs.rows(); ++k) {
    const ComplexVector v = es.eigenvectors().col(k);
    const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    const double s = es.eigenvalues()(k);
    if (s <= kProbabilityFloor) {
      if (weight > 1e-10) return EntropyValue::overflow();
      continue;
    }
    cross -= weight * std::log2(s);
  }
  return {cross - von_neumann_bits(rho.matrix())};
}

DensityMatrix coarse_grain(const DensityMatrix& rho, const Povm& povm) {
  const auto stats = outcome_stats(rho, povm);
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (std::size_t i = 0; i < povm.size(); ++i) {
    if (stats.volumes[i] <= 0.0) continue;
    out += (stats.probabilities[i] / stats.volumes[i]) * povm.effects()[i];
  }
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(out, rho.dims());
}

RecoveryBounds recovery_bounds(const DensityMatrix& rho, const Povm& povm) {
  const DensityMatrix cg = coarse_grain(rho, povm);
  const EntropyValue upper = von_neumann(cg);
  const EntropyValue divergence = relative_entropy(rho, cg);
  return {upper, {divergence.bits + von_neumann(rho).bits}};
}

OptimalityCertificate certify_optimal(const DensityMatrix& rho, const Povm& povm) {
  check_dims(rho, povm);
  OptimalityCertificate cert;
  const Spectrum spec = spectral(rho.matrix());
  cert.optimal = true;
  for (std::size_t i = 0; i < povm.size(); ++i) {
    const ComplexMatrix& m = povm.effects()[i];
    const double norm = operator_norm(m);
    if (norm <= 1e-12) continue;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& proj : spec.projectors) best = std::min(best, operator_norm(m - proj * m * proj));
    if (best > 1e-8 * std::max(1.0, norm)) {
      cert.optimal = false;
      cert.violated = "effect " + povm.labels()[i] + " is not supported on a single eigenspace";
      cert.effect = static_cast<int>(i);
      cert.residual = best;
      break;
    }
  }
  cert.entropy_excess = observational_entropy(rho, povm).bits - von_neumann(rho).bits;
  cert.entropy_consistent = cert.optimal == (cert.entropy_excess <= 1e-7);
  return cert;
}

std::vector<FactorOutcome> measure_factor(const ComplexMatrix& rho, const Dims& factor_dims, int factor,
                                          std::span<const ComplexMatrix> effects) {
  const int d = total_dimension(factor_dims);
  if (rho.rows() != d) throw DimensionError("measure_factor: state shape mismatch");
  IndexSet order{factor};
  for (int k = 0; k < static_cast<int>(factor_dims.size()); ++k)
    if (k != factor) order.push_back(k);
  const ComplexMatrix permuted = factor == 0 ? rho : permute_subsystems(rho, factor_dims, order);
  const int df = factor_dims.at(factor);
  const int dr = d / df;
  std::vector<FactorOutcome> out;
  out.reserve(effects.size());
  for (const auto& a : effects) {
    if (a.rows() != df) throw DimensionError("measure_factor: effect shape mismatch");
    FactorOutcome o;
    o.conditional = ComplexMatrix::Zero(dr, dr);
    // Tr_first[(A (x) 1) rho](x, x') = sum_{a,a'} A(a, a') rho((a', x), (a, x'))
    for (int ai = 0; ai < df; ++ai)
      for (int aj = 0; aj < df; ++aj) {
        const Complex c = a(ai, aj);
        if (c == Complex(0.0, 0.0)) continue;
        o.conditional.noalias() += c * permuted.block(aj * dr, ai * dr, dr, dr);
      }
    o.conditional = 0.5 * (o.conditional + o.conditional.adjoint());
    o.probability = o.conditional.trace().real();
    o.volume = a.trace().real();
    out.push_back(std::move(o));
  }
  return out;
}

namespace {

Dims subsystem_dims_of_block(const Dims& dims, const IndexSet& block) {
  Dims out;
  for (int i : block) out.push_back(dims[i]);
  return out;
}

// Product outcome probabilities over a block-ordered state; outcome tuples in
// lexicographic order (first block most significant).
std::vector<double> product_probabilities(const ComplexMatrix& rho_blocks, const Dims& block_dims,
                                          std::span<const Povm> local) {
  std::vector<ComplexMatrix> current{rho_blocks};
  Dims remaining = block_dims;
  // Measure the first remaining factor repeatedly; conditional operators carry the rest.
  for (std::size_t b = 0; b < local.size(); ++b) {
    std::vector<ComplexMatrix> next;
    if (remaining.size() == 1) {
      std::vector<double> p;
      for (const auto& c : current)
        for (const auto& e : local[b].effects()) p.push_back((e.array() * c.transpose().array()).sum().real());
      return p;
    }
    for (const auto& c : current) {
      auto outcomes = measure_factor(c, remaining, 0, local[b].effects());
      for (auto& o : outcomes) next.push_back(std::move(o.conditional));
    }
    current = std::move(next);
    remaining.erase(remaining.begin());
  }
  return {};
}

}  // namespace

TensorDecomposition tensor_oe_decompose(const DensityMatrix& rho, const PartitionSpec& partition,
                                        std::span<const Povm> local) {
  if (local.size() != partition.size()) throw std::invalid_argument("one local POVM per block is required");
  const Dims bd = partition.block_dims(rho.dims());
  for (std::size_t b = 0; b < local.size(); ++b)
    if (local[b].dim() != bd[b]) throw DimensionError("local POVM does not match its block");

  TensorDecomposition out;
  std::vector<std::vector<double>> marg_p;
  for (std::size_t b = 0; b < local.size(); ++b) {
    const IndexSet& block = partition.blocks()[b];
    const DensityMatrix reduced(partial_trace(rho.matrix(), rho.dims(), block),
                                subsystem_dims_of_block(rho.dims(), block));
    const auto stats = outcome_stats(reduced, local[b]);
    out.marginals.push_back({observational_entropy_bits(stats.probabilities, stats.volumes)});
    marg_p.push_back(stats.probabilities);
  }

  const ComplexMatrix rb = to_block_order(rho.matrix(), rho.dims(), partition);
  const auto joint = product_probabilities(rb, bd, local);
  std::vector<double> product(joint.size(), 1.0);
  std::size_t stride = joint.size();
  for (std::size_t b = 0; b < local.size(); ++b) {
    const std::size_t n = local[b].size();
    stride /= n;
    for (std::size_t t = 0; t < joint.size(); ++t) product[t] *= marg_p[b][(t / stride) % n];
  }
  out.mutual_information = {classical_relative_entropy_bits(joint, product)};
  double total = -out.mutual_information.bits;
  for (const auto& m : out.marginals) total += m.bits;
  out.total = {total};
  return out;
}

namespace {

double chain_bits(const ConditionalStep& step, const ComplexMatrix& rho, const Dims& block_dims,
                  const IndexSet& remaining) {
  const auto pos = std::find(remaining.begin(), remaining.end(), step.block) - remaining.begin();
  if (pos == static_cast<long>(remaining.size())) throw std::invalid_argument("protocol measures a block twice");
  Dims factor_dims;
  for (int b : remaining) factor_dims.push_back(block_dims[b]);
  const auto outcomes = measure_factor(rho, factor_dims, static_cast<int>(pos), step.povm.effects());
  IndexSet rest = remaining;
  rest.erase(rest.begin() + pos);
  if (!rest.empty() && step.next.size() != outcomes.size())
    throw std::invalid_argument("conditional POVM missing for some outcome");
  double s = 0.0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const double p = outcomes[i].probability;
    if (p <= kProbabilityFloor) continue;
    s -= p * std::log2(p / outcomes[i].volume);
    if (!rest.empty()) s += p * chain_bits(step.next[i], outcomes[i].conditional / p, block_dims, rest);
  }
  return s;
}

}  // namespace

EntropyValue chain_entropy(const ConditionalMeasurement& protocol, const DensityMatrix& rho) {
  if (protocol.dims != rho.dims()) throw DimensionError("protocol dims do not match the state");
  const Dims bd = protocol.partition.block_dims(rho.dims());
  const ComplexMatrix rb = to_block_order(rho.matrix(), rho.dims(), protocol.partition);
  IndexSet remaining(bd.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  return {chain_bits(protocol.root, rb, bd, remaining)};
}

}  // namespace oegap
