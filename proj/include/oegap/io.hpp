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

#include <string>
#include <vector>

#include <json.hpp>

#include "oegap/optimize.hpp"
#include "oegap/partitions.hpp"

namespace oegap::io {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// {"dims": [...], "re": [...], "im": [...]}, row-major.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, int expected_dim);

Json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const Json& j);

/// {"dims": [...], "effects": [{"re": [...], "im": [...]}, ...], "labels": [...], "class": "..."}
Json povm_to_json(const Povm& povm);
Povm povm_from_json(const Json& j);

Json protocol_to_json(const ConditionalMeasurement& protocol);

/// Entropies are scaled by `unit` (1 for bits, ln 2 for nats).
Json result_to_json(const OptResult& r, double unit = 1.0);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Fixed-precision formatting used by every CSV writer.
std::string fmt(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const;
};

CsvTable scan_table(const PartitionScan& scan);
CsvTable shape_table(const PartitionScan& scan);
CsvTable robustness_table(const std::string& state, GapClass cls, const std::vector<RobustnessEntry>& entries);

}  // namespace oegap::io
