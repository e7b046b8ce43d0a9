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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oegap/optimize.hpp"

namespace oegap {

/// All set partitions of n subsystems (2 <= n <= 6), fewest blocks first,
/// optionally restricted to a block-size shape such as "2+2" or "1+1+2".
std::vector<PartitionSpec> enumerate_partitions(int n, const std::optional<std::string>& shape = std::nullopt);

/// Sorted block sizes joined by '+', e.g. "1+3".
std::string shape_of(const PartitionSpec& partition);
/// Letter notation, e.g. "AB|CD".
std::string partition_label(const PartitionSpec& partition);
/// Parses letter notation; an empty string means fully partitioned.
PartitionSpec parse_partition(const std::string& text, int n_subsystems);
/// True when every block of `fine` lies inside a block of `coarse`.
bool refines(const PartitionSpec& fine, const PartitionSpec& coarse);
/// Subsystem-set key in letter notation, e.g. "AB".
std::string subsystem_key(const IndexSet& subsystems);

/// Exact gap of a pure state across a bipartition (entanglement entropy),
/// with the Schmidt-basis product witness. Empty for mixed states or other partitions.
std::optional<OptResult> pure_bipartition_result(const DensityMatrix& rho, const PartitionSpec& partition,
                                                 PovmClass cls);

struct PartitionEntry {
  PartitionSpec partition;
  std::string label;
  std::string shape;
  OptResult result;
};

struct PartitionScan {
  std::string state;
  GapClass cls = GapClass::LOStar;
  std::vector<PartitionEntry> entries;
  std::map<std::string, double> shape_averages;
  std::map<std::string, int> shape_counts;
  /// Refinement pairs whose gaps decrease by more than the tolerance.
  std::vector<std::string> monotonicity_violations;
};

PartitionScan scan_partitions(const DensityMatrix& rho, const std::string& state_name, GapClass cls,
                              const OptConfig& cfg);

struct RobustnessEntry {
  IndexSet discarded;
  std::string key;
  OptResult result;
};

/// Fully partitioned gap of every reduced state obtained by discarding a
/// non-empty proper subset of subsystems.
std::vector<RobustnessEntry> robustness_scan(const DensityMatrix& rho, GapClass cls, const OptConfig& cfg);

}  // namespace oegap
