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

#include "oegap/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <numbers>
#include <ostream>

#include <CLI11.hpp>

#include "oegap/io.hpp"
#include "oegap/optimize.hpp"
#include "oegap/partitions.hpp"
#include "oegap/states.hpp"

namespace oegap::cli {

namespace {

using io::fmt;
using io::Json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string state;
  std::string file;
  bool nats = false;
  bool json = false;
  OptConfig cfg;
  std::string output;

  double unit() const { return nats ? std::numbers::ln2 : 1.0; }
  const char* unit_name() const { return nats ? "nats" : "bits"; }
};

void add_state_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--state", c.state, "catalog state, e.g. werner(d=3,lambda=0.7)");
  cmd->add_option("--file", c.file, "state JSON file {\"dims\",\"re\",\"im\"}");
}

void add_config_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.cfg.seed, "random seed");
  cmd->add_option("--restarts", c.cfg.restarts, "optimizer restarts");
  cmd->add_option("--max-iters", c.cfg.max_iters, "simplex iterations per run");
  cmd->add_option("--workers", c.cfg.workers, "worker threads (0 = all, 1 = serial)");
  cmd->add_option("--budget", c.cfg.outcome_budget, "rank-1 outcome budget for large blocks");
}

DensityMatrix load_state(const Common& c, std::string& name) {
  if (!c.state.empty() && !c.file.empty()) throw UsageError("give either --state or --file, not both");
  if (c.state.empty() && c.file.empty()) throw UsageError("a state is required (--state or --file)");
  DensityMatrix rho = c.file.empty() ? from_catalog(c.state) : io::state_from_json(io::read_json_file(c.file));
  name = c.file.empty() ? c.state : c.file;
  require_valid(rho);
  return rho;
}

Povm named_povm(const std::string& name, const DensityMatrix& rho) {
  const int d = rho.dim();
  if (name == "computational") return Povm::from_basis(ComplexMatrix::Identity(d, d), rho.dims(), PovmClass::LOStar);
  if (name == "eigen") return Povm::eigenprojectors(rho);
  if (name == "trivial") return Povm::trivial(rho.dims());
  if (name == "werner-m0") {
    if (rho.dims().size() != 2 || rho.dims()[0] != rho.dims()[1])
      throw UsageError("werner-m0 needs a state on C^d (x) C^d");
    return werner_analytic(rho.dims()[0], 0.0).witness;
  }
  throw UsageError("unknown POVM '" + name + "' (computational, eigen, werner-m0, trivial)");
}

void print_line(std::ostream& out, const std::string& key, const std::string& value) {
  out << std::left << std::setw(14) << key << value << "\n";
}

// --------------------------------------------------------------------------

int cmd_entropy(const Common& c, const std::string& povm_name, const std::string& povm_file, std::ostream& out) {
  std::string name;
  const DensityMatrix rho = load_state(c, name);
  if (!povm_name.empty() && !povm_file.empty()) throw UsageError("give either --povm or --povm-file, not both");
  const Povm povm = povm_file.empty() ? named_povm(povm_name.empty() ? "computational" : povm_name, rho)
                                      : io::povm_from_json(io::read_json_file(povm_file));
  require_valid(povm);
  if (povm.dim() != rho.dim()) throw UsageError("POVM dimension does not match the state");
  const double u = c.unit();
  const double sm = observational_entropy(rho, povm).bits;
  const double s = von_neumann(rho).bits;
  const auto bounds = recovery_bounds(rho, povm);
  const auto cert = certify_optimal(rho, povm);
  if (c.json) {
    Json j{{"state", name},
           {"units", c.unit_name()},
           {"observational_entropy", sm * u},
           {"von_neumann", s * u},
           {"gap", (sm - s) * u},
           {"recovery_lower", bounds.lower.is_overflow() ? Json("inf") : Json(bounds.lower.bits * u)},
           {"recovery_upper", bounds.upper.bits * u},
           {"optimal", cert.optimal},
           {"violated", cert.violated},
           {"povm", io::povm_to_json(povm)}};
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  const std::string units = std::string(" ") + c.unit_name();
  print_line(out, "state", name);
  print_line(out, "outcomes", std::to_string(povm.size()));
  print_line(out, "S_M", fmt(sm * u) + units);
  print_line(out, "S", fmt(s * u) + units);
  print_line(out, "gap", fmt((sm - s) * u) + units);
  print_line(out, "recovery", "[" + (bounds.lower.is_overflow() ? std::string("inf") : fmt(bounds.lower.bits * u)) +
                                  ", " + fmt(bounds.upper.bits * u) + "]" + units);
  print_line(out, "certificate", cert.optimal ? "optimal" : "not optimal: " + cert.violated);
  return kExitOk;
}

int cmd_gap(const Common& c, const std::string& cls, const std::string& partition_text, std::ostream& out) {
  std::string name;
  const DensityMatrix rho = load_state(c, name);
  const double u = c.unit();
  const int n = static_cast<int>(rho.dims().size());
  const PartitionSpec partition = parse_partition(partition_text, n);
  check_config(c.cfg);

  Json j{{"state", name}, {"partition", partition_label(partition)}, {"units", c.unit_name()}};
  bool converged = true;
  if (cls == "ppt-w3") {
    const ComplexVector wv = w_vector(3);
    if (rho.dims() != Dims{2, 2, 2} || (wv.adjoint() * rho.matrix() * wv)(0, 0).real() < 1.0 - 1e-10)
      throw UsageError("class ppt-w3 applies only to the three-qubit W state");
    const auto r = ppt_gap_w3();
    j["class"] = "ppt-w3";
    j["gap"] = r.gap * u;
    j["trace"] = r.trace;
    j["coefficients"] = r.t;
    j["exact"] = r.snapped && r.verified;
    j["witness"] = io::povm_to_json(r.witness);
    converged = r.verified;
  } else if (cls == "werner-exact") {
    const auto lambda = werner_parameter(rho);
    if (!lambda) throw UsageError("class werner-exact needs a Werner state");
    const auto r = werner_analytic(rho.dims()[0], *lambda);
    j["class"] = "werner-exact";
    j["lambda"] = *lambda;
    j["entropy"] = r.s_m0 * u;
    j["von_neumann"] = r.s_vn * u;
    j["gap"] = r.gap * u;
    j["exact"] = true;
    j["witness"] = io::povm_to_json(r.witness);
  } else {
    GapClass gc;
    try {
      gc = gap_class_from_string(cls);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string(e.what()) + " (lostar, lo, locc1, sep, ppt-w3, werner-exact)");
    }
    const OptResult r = minimize_gap(rho, partition, gc, c.cfg);
    Json rj = io::result_to_json(r, u);
    for (auto& [k, v] : rj.items()) j[k] = v;
    j["class"] = to_string(gc);
    converged = r.converged;
  }
  if (!c.output.empty()) io::write_text_file(c.output, j.dump(2) + "\n");
  if (c.json) {
    out << j.dump(2) << "\n";
  } else {
    const std::string units = std::string(" ") + c.unit_name();
    print_line(out, "state", name);
    print_line(out, "class", j["class"].get<std::string>());
    print_line(out, "partition", partition_label(partition));
    if (j.contains("entropy")) print_line(out, "entropy", fmt(j["entropy"].get<double>()) + units);
    print_line(out, "gap", fmt(j["gap"].get<double>()) + units);
    if (j.contains("lower_bound")) print_line(out, "lower bound", fmt(j["lower_bound"].get<double>()) + units);
    print_line(out, "exact", j["exact"].get<bool>() ? "yes" : "no (upper bound)");
    print_line(out, "converged", converged ? "yes" : "no");
  }
  return converged ? kExitOk : kExitNotConverged;
}

GapClass scan_class(const std::string& cls) {
  try {
    return gap_class_from_string(cls);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(e.what()) + " (lostar, lo, locc1, sep)");
  }
}

void emit_csv(const io::CsvTable& t, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << t.str();
  else
    io::write_text_file(path, t.str());
}

int cmd_scan(const Common& c, const std::string& cls, const std::string& averages, std::ostream& out) {
  std::string name;
  const DensityMatrix rho = load_state(c, name);
  const auto scan = scan_partitions(rho, name, scan_class(cls), c.cfg);
  emit_csv(io::scan_table(scan), c.output, out);
  if (!averages.empty()) io::write_text_file(averages, io::shape_table(scan).str());
  bool converged = true;
  for (const auto& e : scan.entries) converged = converged && e.result.converged;
  return converged ? kExitOk : kExitNotConverged;
}

int cmd_robustness(const Common& c, const std::string& cls, std::ostream& out) {
  std::string name;
  const DensityMatrix rho = load_state(c, name);
  const GapClass gc = scan_class(cls);
  const auto entries = robustness_scan(rho, gc, c.cfg);
  emit_csv(io::robustness_table(name, gc, entries), c.output, out);
  bool converged = true;
  for (const auto& e : entries) converged = converged && e.result.converged;
  return converged ? kExitOk : kExitNotConverged;
}

// --------------------------------------------------------------------------

Json config_json(const OptConfig& cfg) {
  return Json{{"seed", cfg.seed},           {"restarts", cfg.restarts}, {"max_iters", cfg.max_iters},
              {"step_tol", cfg.step_tol},   {"entropy_tol", cfg.entropy_tol}, {"workers", cfg.workers},
              {"outcome_budget", cfg.outcome_budget}};
}

io::CsvTable werner_curves() {
  io::CsvTable t{{"d", "lambda", "x", "s_vn_bits", "s_m0_bits", "gap_bits"}, {}};
  for (int d = 2; d <= 5; ++d)
    for (int k = 0; k <= 100; ++k) {
      const double lambda = k / 100.0;
      const auto r = werner_analytic(d, lambda);
      t.rows.push_back({std::to_string(d), fmt(lambda), fmt(r.x), fmt(r.s_vn), fmt(r.s_m0), fmt(r.gap)});
    }
  return t;
}

io::CsvTable trine_table(const OptConfig& cfg, bool& converged) {
  const auto chain = class_chain(trine_cq().state, PartitionSpec::full(2), cfg);
  io::CsvTable t{{"class", "entropy_bits", "gap_bits", "lower_bound_bits", "reference_gap_bits", "converged"}, {}};
  const double log3 = std::log2(3.0);
  const std::tuple<GapClass, const OptResult*, double> rows[] = {{GapClass::LOStar, &chain.lostar, 4.0 / 3.0 - 0.5 * log3},
                                                                 {GapClass::LO, &chain.lo, 2.0 - log3},
                                                                 {GapClass::LOCC1, &chain.locc1, 0.0},
                                                                 {GapClass::SEP, &chain.sep, 0.0}};
  for (const auto& [cls, r, ref] : rows) {
    t.rows.push_back({to_string(cls), fmt(r->entropy.bits), fmt(r->gap.bits), fmt(r->lower_bound.bits), fmt(ref),
                      r->converged ? "true" : "false"});
    converged = converged && r->converged;
  }
  return t;
}

io::CsvTable w_family(const OptConfig& cfg, bool& converged) {
  io::CsvTable t{{"n", "class", "gap_bits", "reference_bits", "converged"}, {}};
  for (int n = 2; n <= 4; ++n) {
    const DensityMatrix rho = w(n);
    const auto lostar = minimize_lostar(rho, PartitionSpec::full(n), cfg);
    t.rows.push_back({std::to_string(n), "lostar", fmt(lostar.gap.bits), fmt(std::log2(n)),
                      lostar.converged ? "true" : "false"});
    converged = converged && lostar.converged;
    if (n == 3) {
      const auto locc = minimize_locc_oneway(rho, PartitionSpec::full(3), {}, cfg, std::span<const OptResult>(&lostar, 1));
      t.rows.push_back({"3", "locc1", fmt(locc.gap.bits), fmt(1.550), locc.converged ? "true" : "false"});
      const auto ppt = ppt_gap_w3();
      t.rows.push_back({"3", "ppt-w3", fmt(ppt.gap), fmt(std::log2(9.0 / 4.0)), ppt.verified ? "true" : "false"});
      converged = converged && locc.converged && ppt.verified;
    }
  }
  return t;
}

int cmd_reproduce(const Common& c, const std::string& id, const std::string& out_dir, std::ostream& out) {
  check_config(c.cfg);
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  auto save = [&](const std::string& file, const io::CsvTable& t) {
    const std::string path = (std::filesystem::path(out_dir) / file).string();
    io::write_text_file(path, t.str());
    written.push_back(path);
  };
  bool converged = true;
  if (id == "werner-curves") {
    save("werner_curves.csv", werner_curves());
  } else if (id == "multipartite-scan") {
    io::CsvTable scans{{"state", "class", "partition", "shape", "gap_bits", "converged"}, {}};
    io::CsvTable shapes{{"state", "class", "shape", "count", "average_gap_bits"}, {}};
    io::CsvTable robust{{"state", "class", "discarded", "gap_bits", "converged"}, {}};
    for (const char* name : {"ghz4", "w4", "two-bell"}) {
      const DensityMatrix rho = from_catalog(name);
      const auto scan = scan_partitions(rho, name, GapClass::LOStar, c.cfg);
      const auto s = io::scan_table(scan), a = io::shape_table(scan);
      scans.rows.insert(scans.rows.end(), s.rows.begin(), s.rows.end());
      shapes.rows.insert(shapes.rows.end(), a.rows.begin(), a.rows.end());
      const auto entries = robustness_scan(rho, GapClass::LOStar, c.cfg);
      const auto r = io::robustness_table(name, GapClass::LOStar, entries);
      robust.rows.insert(robust.rows.end(), r.rows.begin(), r.rows.end());
      for (const auto& e : scan.entries) converged = converged && e.result.converged;
      for (const auto& e : entries) converged = converged && e.result.converged;
    }
    save("multipartite_scan.csv", scans);
    save("multipartite_shapes.csv", shapes);
    save("multipartite_robustness.csv", robust);
  } else if (id == "trine") {
    save("trine.csv", trine_table(c.cfg, converged));
  } else if (id == "w-family") {
    save("w_family.csv", w_family(c.cfg, converged));
  } else {
    throw UsageError("unknown figure id '" + id + "' (werner-curves, multipartite-scan, trine, w-family)");
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string manifest_path = (std::filesystem::path(out_dir) / ("manifest_" + id + ".json")).string();
  Json manifest{{"command", "reproduce " + id}, {"config", config_json(c.cfg)}, {"seed", c.cfg.seed},
                {"version", io::kVersion},      {"wall_time_seconds", wall},  {"outputs", written}};
  io::write_text_file(manifest_path, manifest.dump(2) + "\n");
  for (const auto& w : written) out << w << "\n";
  out << manifest_path << "\n";
  return converged ? kExitOk : kExitNotConverged;
}

int cmd_catalog(std::ostream& out) {
  out << "states:\n";
  for (const auto& e : catalog()) out << "  " << std::left << std::setw(26) << e.name << e.summary << "\n";
  out << "povms:\n  computational, eigen, werner-m0, trivial\n";
  out << "classes:\n  lostar, lo, locc1, sep, ppt-w3, werner-exact\n";
  out << "figures:\n  werner-curves, multipartite-scan, trine, w-family\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Observational entropy gaps of quantum states under restricted measurement classes", "oegap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", io::kVersion);

  Common c;
  std::string povm_name, povm_file, cls = "lostar", partition, averages, figure, out_dir = "reproduce_out";

  auto* entropy = app.add_subcommand("entropy", "observational entropy of a state under a POVM");
  add_state_options(entropy, c);
  entropy->add_option("--povm", povm_name, "computational | eigen | werner-m0 | trivial");
  entropy->add_option("--povm-file", povm_file, "POVM JSON file");

  auto* gap = app.add_subcommand("gap", "minimized entropy gap for a measurement class");
  add_state_options(gap, c);
  add_config_options(gap, c);
  gap->add_option("--class", cls, "lostar | lo | locc1 | sep | ppt-w3 | werner-exact");
  gap->add_option("--partition", partition, "blocks in letter notation, e.g. AB|CD (default: fully partitioned)");
  gap->add_option("--output", c.output, "also write the JSON result here");

  auto* scan = app.add_subcommand("scan", "gap across every partition of the subsystems");
  add_state_options(scan, c);
  add_config_options(scan, c);
  scan->add_option("--class", cls, "lostar | lo | locc1 | sep");
  scan->add_option("--output", c.output, "CSV file (default: stdout)");
  scan->add_option("--averages", averages, "CSV file for per-shape averages");

  auto* robustness = app.add_subcommand("robustness", "fully partitioned gap after discarding subsystems");
  add_state_options(robustness, c);
  add_config_options(robustness, c);
  robustness->add_option("--class", cls, "lostar | lo | locc1 | sep");
  robustness->add_option("--output", c.output, "CSV file (default: stdout)");

  auto* reproduce = app.add_subcommand("reproduce", "regenerate a figure's data as CSV");
  add_config_options(reproduce, c);
  reproduce->add_option("figure", figure, "werner-curves | multipartite-scan | trine | w-family")->required();
  reproduce->add_option("--out-dir", out_dir, "output directory");

  auto* cat = app.add_subcommand("catalog", "list named states, POVMs and classes");

  for (auto* sub : {entropy, gap, scan, robustness, reproduce}) {
    sub->add_flag("--nats", c.nats, "report entropies in nats");
    sub->add_flag("--json", c.json, "JSON output");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << io::kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (*entropy) return cmd_entropy(c, povm_name, povm_file, out);
    if (*gap) return cmd_gap(c, cls, partition, out);
    if (*scan) return cmd_scan(c, cls, averages, out);
    if (*robustness) return cmd_robustness(c, cls, out);
    if (*reproduce) return cmd_reproduce(c, figure, out_dir, out);
    if (*cat) return cmd_catalog(out);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.report().summary() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitValidation;
}

}  // namespace oegap::cli
