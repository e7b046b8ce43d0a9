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

#include "oegap/partitions.hpp"

#include <algorithm>
#include <sstream>

#include "oegap/parallel.hpp"
#include "opt_internal.hpp"

namespace oegap {

namespace {

std::vector<int> parse_shape(const std::string& shape, int n) {
  std::vector<int> sizes;
  std::stringstream ss(shape);
  std::string item;
  while (std::getline(ss, item, '+')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit))
      throw std::invalid_argument("invalid shape '" + shape + "'");
    sizes.push_back(std::stoi(item));
  }
  int total = 0;
  for (int s : sizes) {
    if (s < 1) throw std::invalid_argument("invalid shape '" + shape + "'");
    total += s;
  }
  if (sizes.empty() || total != n) throw std::invalid_argument("shape '" + shape + "' does not cover all subsystems");
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::vector<int> sizes_of(const PartitionSpec& p) {
  std::vector<int> sizes;
  for (const auto& b : p.blocks()) sizes.push_back(static_cast<int>(b.size()));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

ComplexMatrix complete_basis(const ComplexMatrix& thin) {
  Eigen::HouseholderQR<ComplexMatrix> qr(thin);
  return qr.householderQ() * ComplexMatrix::Identity(thin.rows(), thin.rows());
}

OptConfig inner_config(const OptConfig& cfg) {
  OptConfig inner = cfg;
  inner.workers = 1;
  return inner;
}

}  // namespace

std::vector<PartitionSpec> enumerate_partitions(int n, const std::optional<std::string>& shape) {
  if (n < 2 || n > 6) throw std::invalid_argument("enumerate_partitions requires 2 <= n <= 6");
  std::optional<std::vector<int>> wanted;
  if (shape) wanted = parse_shape(*shape, n);
  std::vector<PartitionSpec> out;
  // Restricted growth strings: a[0] = 0, a[i] <= max(a[0..i-1]) + 1.
  std::vector<int> a(n, 0);
  while (true) {
    const int nblocks = *std::max_element(a.begin(), a.end()) + 1;
    std::vector<IndexSet> blocks(nblocks);
    for (int i = 0; i < n; ++i) blocks[a[i]].push_back(i);
    PartitionSpec p(std::move(blocks), n);
    if (!wanted || sizes_of(p) == *wanted) out.push_back(std::move(p));
    int i = n - 1;
    while (i > 0) {
      const int prefix_max = *std::max_element(a.begin(), a.begin() + i);
      if (a[i] <= prefix_max) {
        ++a[i];
        std::fill(a.begin() + i + 1, a.end(), 0);
        break;
      }
      --i;
    }
    if (i == 0) break;
  }
  std::sort(out.begin(), out.end(), [](const PartitionSpec& x, const PartitionSpec& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

std::string shape_of(const PartitionSpec& partition) {
  std::string out;
  for (int s : sizes_of(partition)) out += (out.empty() ? "" : "+") + std::to_string(s);
  return out;
}

std::string subsystem_key(const IndexSet& subsystems) {
  std::string out;
  for (int i : subsystems) out += static_cast<char>('A' + i);
  return out;
}

std::string partition_label(const PartitionSpec& partition) {
  std::string out;
  for (const auto& b : partition.blocks()) out += (out.empty() ? "" : "|") + subsystem_key(b);
  return out;
}

PartitionSpec parse_partition(const std::string& text, int n_subsystems) {
  if (n_subsystems < 1 || n_subsystems > 26) throw std::invalid_argument("partition strings support 1..26 subsystems");
  if (text.empty()) return PartitionSpec::full(n_subsystems);
  std::vector<IndexSet> blocks(1);
  for (char c : text) {
    if (c == '|') {
      blocks.emplace_back();
      continue;
    }
    if (c < 'A' || c >= 'A' + n_subsystems)
      throw std::invalid_argument("malformed partition '" + text + "': unexpected '" + std::string(1, c) + "'");
    blocks.back().push_back(c - 'A');
  }
  try {
    return PartitionSpec(std::move(blocks), n_subsystems);
  } catch (const std::exception& e) {
    throw std::invalid_argument("malformed partition '" + text + "': " + e.what());
  }
}

bool refines(const PartitionSpec& fine, const PartitionSpec& coarse) {
  for (const auto& b : fine.blocks()) {
    const int target = coarse.block_of(b.front());
    for (int i : b)
      if (coarse.block_of(i) != target) return false;
  }
  return true;
}

std::optional<OptResult> pure_bipartition_result(const DensityMatrix& rho, const PartitionSpec& partition,
                                                 PovmClass cls) {
  if (partition.size() != 2) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  if (es.eigenvalues()(rho.dim() - 1) < 1.0 - 1e-10) return std::nullopt;
  const ComplexVector psi = es.eigenvectors().col(rho.dim() - 1);
  const auto sd = schmidt(psi, rho.dims(), partition.blocks()[0]);
  std::vector<ComplexMatrix> bases{complete_basis(sd.left), complete_basis(sd.right)};
  const auto bsub = block_subsystem_dims(rho.dims(), partition);

  OptResult res;
  res.cls = cls;
  double ent = 0.0;
  for (double c : sd.coefficients)
    if (c * c > kProbabilityFloor) ent -= c * c * std::log2(c * c);
  for (int b = 0; b < 2; ++b) res.local.push_back(Povm::from_basis(bases[b], bsub[b], cls));
  Povm witness = lostar_povm(LocalBases{bases}, partition, rho.dims()).retagged(cls);
  detail::finish(res, rho, observational_entropy(rho, witness).bits);
  res.witness = std::move(witness);
  res.lower_bound = {ent};
  res.trace = {res.entropy.bits};
  res.converged = true;
  res.exact = true;
  res.method = "schmidt";
  return res;
}

namespace {

PovmClass povm_class_of(GapClass cls) {
  switch (cls) {
    case GapClass::LOStar: return PovmClass::LOStar;
    case GapClass::LO: return PovmClass::LO;
    case GapClass::LOCC1: return PovmClass::LOCC1;
    case GapClass::SEP: return PovmClass::SEP;
  }
  return PovmClass::General;
}

OptResult optimize_partition(const DensityMatrix& rho, const PartitionSpec& p, GapClass cls, const OptConfig& cfg) {
  if (p.size() == 1) return detail::single_block_result(rho, povm_class_of(cls));
  if (auto fast = pure_bipartition_result(rho, p, povm_class_of(cls))) return *fast;
  return minimize_gap(rho, p, cls, cfg);
}

}  // namespace

PartitionScan scan_partitions(const DensityMatrix& rho, const std::string& state_name, GapClass cls,
                              const OptConfig& cfg) {
  check_config(cfg);
  require_valid(rho);
  const int n = static_cast<int>(rho.dims().size());
  const auto parts = enumerate_partitions(n);
  const OptConfig inner = inner_config(cfg);
  auto task = [&](int i) { return optimize_partition(rho, parts[i], cls, inner); };
  std::vector<OptResult> results;
  if (cfg.workers == 1)
    results = parallel::map_serial<OptResult>(static_cast<int>(parts.size()), task);
  else
    results = parallel::map_parallel<OptResult>(static_cast<int>(parts.size()), cfg.workers, task);

  PartitionScan scan;
  scan.state = state_name;
  scan.cls = cls;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    scan.entries.push_back({parts[i], partition_label(parts[i]), shape_of(parts[i]), std::move(results[i])});
    const auto& e = scan.entries.back();
    scan.shape_averages[e.shape] += e.result.gap.bits;
    scan.shape_counts[e.shape] += 1;
  }
  for (auto& [shape, total] : scan.shape_averages) total /= scan.shape_counts[shape];
  const double tol = 1e3 * cfg.entropy_tol;
  for (const auto& fine : scan.entries)
    for (const auto& coarse : scan.entries) {
      if (fine.partition == coarse.partition || !refines(fine.partition, coarse.partition)) continue;
      if (fine.result.gap.bits < coarse.result.gap.bits - tol)
        scan.monotonicity_violations.push_back(fine.label + " < " + coarse.label);
    }
  return scan;
}

std::vector<RobustnessEntry> robustness_scan(const DensityMatrix& rho, GapClass cls, const OptConfig& cfg) {
  check_config(cfg);
  require_valid(rho);
  const int n = static_cast<int>(rho.dims().size());
  std::vector<IndexSet> discards;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    IndexSet d;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) d.push_back(i);
    discards.push_back(d);
  }
  std::sort(discards.begin(), discards.end(), [](const IndexSet& x, const IndexSet& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  const OptConfig inner = inner_config(cfg);
  auto task = [&](int i) {
    IndexSet keep;
    for (int k = 0; k < n; ++k)
      if (std::find(discards[i].begin(), discards[i].end(), k) == discards[i].end()) keep.push_back(k);
    const DensityMatrix reduced = rho.reduced(keep);
    return optimize_partition(reduced, PartitionSpec::full(static_cast<int>(keep.size())), cls, inner);
  };
  std::vector<OptResult> results;
  if (cfg.workers == 1)
    results = parallel::map_serial<OptResult>(static_cast<int>(discards.size()), task);
  else
    results = parallel::map_parallel<OptResult>(static_cast<int>(discards.size()), cfg.workers, task);
  std::vector<RobustnessEntry> out;
  for (std::size_t i = 0; i < discards.size(); ++i)
    out.push_back({discards[i], subsystem_key(discards[i]), std::move(results[i])});
  return out;
}

}  // namespace oegap
