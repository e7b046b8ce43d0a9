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

#include "oegap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace oegap::io {

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  return Json{{"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const Json& j, int d) {
  if (!j.contains("re")) throw std::invalid_argument("matrix JSON: missing 're'");
  const auto& re = j.at("re");
  const Json im = j.contains("im") ? j.at("im") : Json::array();
  if (!re.is_array() || re.size() != static_cast<std::size_t>(d) * d)
    throw std::invalid_argument("matrix JSON: 're' must hold " + std::to_string(d * d) + " numbers");
  if (!im.empty() && im.size() != re.size()) throw std::invalid_argument("matrix JSON: 're' and 'im' differ in length");
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const std::size_t idx = static_cast<std::size_t>(i) * d + k;
      const double a = re.at(idx).get<double>();
      const double b = im.empty() ? 0.0 : im.at(idx).get<double>();
      if (!std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("matrix JSON: non-finite entry at (" + std::to_string(i) + "," + std::to_string(k) + ")");
      m(i, k) = Complex(a, b);
    }
  return m;
}

namespace {

Dims dims_from_json(const Json& j) {
  if (!j.contains("dims") || !j.at("dims").is_array()) throw std::invalid_argument("JSON: missing 'dims' array");
  Dims dims = j.at("dims").get<Dims>();
  total_dimension(dims);
  return dims;
}

}  // namespace

Json state_to_json(const DensityMatrix& rho) {
  Json j{{"dims", rho.dims()}};
  Json m = matrix_to_json(rho.matrix());
  j["re"] = m["re"];
  j["im"] = m["im"];
  return j;
}

DensityMatrix state_from_json(const Json& j) {
  const Dims dims = dims_from_json(j);
  return DensityMatrix(matrix_from_json(j, total_dimension(dims)), dims);
}

Json povm_to_json(const Povm& povm) {
  Json effects = Json::array();
  for (const auto& e : povm.effects()) effects.push_back(matrix_to_json(e));
  return Json{{"dims", povm.dims()}, {"class", to_string(povm.class_tag())}, {"labels", povm.labels()},
              {"effects", effects}};
}

Povm povm_from_json(const Json& j) {
  const Dims dims = dims_from_json(j);
  const int d = total_dimension(dims);
  if (!j.contains("effects") || !j.at("effects").is_array() || j.at("effects").empty())
    throw std::invalid_argument("POVM JSON: missing 'effects' array");
  std::vector<ComplexMatrix> effects;
  for (std::size_t k = 0; k < j.at("effects").size(); ++k) {
    try {
      effects.push_back(matrix_from_json(j.at("effects")[k], d));
    } catch (const std::exception& e) {
      throw std::invalid_argument("effect " + std::to_string(k) + ": " + e.what());
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  const PovmClass tag = j.contains("class") ? povm_class_from_string(j.at("class").get<std::string>())
                                            : PovmClass::Unverified;
  return Povm(std::move(effects), dims, tag, std::move(labels));
}

namespace {

Json step_to_json(const ConditionalStep& step) {
  Json next = Json::array();
  for (const auto& n : step.next) next.push_back(step_to_json(n));
  return Json{{"block", step.block}, {"povm", povm_to_json(step.povm)}, {"next", next}};
}

}  // namespace

Json protocol_to_json(const ConditionalMeasurement& protocol) {
  Json blocks = Json::array();
  for (const auto& b : protocol.partition.blocks()) blocks.push_back(b);
  return Json{{"dims", protocol.dims}, {"blocks", blocks}, {"root", step_to_json(protocol.root)}};
}

Json result_to_json(const OptResult& r, double unit) {
  Json trace = Json::array();
  for (double v : r.trace) trace.push_back(v * unit);
  Json j{{"class", to_string(r.cls)},
         {"entropy", r.entropy.bits * unit},
         {"gap", r.gap.bits * unit},
         {"lower_bound", r.lower_bound.bits * unit},
         {"converged", r.converged},
         {"exact", r.exact},
         {"upper_bound_only", !r.exact},
         {"method", r.method},
         {"trace", trace}};
  if (r.protocol) j["protocol"] = protocol_to_json(*r.protocol);
  if (r.witness) j["witness"] = povm_to_json(*r.witness);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::string fmt(double v) {
  if (std::abs(v) < 5e-11) v = 0.0;  // avoid "-0.0000000000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", v);
  return buf;
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

CsvTable scan_table(const PartitionScan& scan) {
  CsvTable t{{"state", "class", "partition", "shape", "gap_bits", "converged"}, {}};
  for (const auto& e : scan.entries)
    t.rows.push_back({scan.state, to_string(scan.cls), e.label, e.shape, fmt(e.result.gap.bits),
                      e.result.converged ? "true" : "false"});
  return t;
}

CsvTable shape_table(const PartitionScan& scan) {
  CsvTable t{{"state", "class", "shape", "count", "average_gap_bits"}, {}};
  for (const auto& [shape, avg] : scan.shape_averages)
    t.rows.push_back({scan.state, to_string(scan.cls), shape, std::to_string(scan.shape_counts.at(shape)), fmt(avg)});
  return t;
}

CsvTable robustness_table(const std::string& state, GapClass cls, const std::vector<RobustnessEntry>& entries) {
  CsvTable t{{"state", "class", "discarded", "gap_bits", "converged"}, {}};
  for (const auto& e : entries)
    t.rows.push_back({state, to_string(cls), e.key, fmt(e.result.gap.bits), e.result.converged ? "true" : "false"});
  return t;
}

}  // namespace oegap::io
