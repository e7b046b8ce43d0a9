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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oegap/cli.hpp"
#include "oegap/io.hpp"
#include "support.hpp"

using namespace oegap;
using namespace oegap::test;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

io::Json run_json(std::vector<std::string> args) {
  args.push_back("--json");
  const Run r = run(args);
  REQUIRE(r.code == 0);
  return io::Json::parse(r.out);
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("oegap_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("entropy command") {
    const auto b = run_json({"entropy", "--state", "bell", "--povm", "computational"});
    CHECK(b["observational_entropy"].get<double>() == doctest::Approx(1.0));
    CHECK(b["von_neumann"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));

    const auto wm = run_json({"entropy", "--state", "werner(d=3,lambda=0.5)", "--povm", "werner-m0"});
    CHECK(wm["observational_entropy"].get<double>() == doctest::Approx(werner_analytic(3, 0.5).s_m0));

    const auto e = run_json({"entropy", "--state", "werner(d=2,lambda=0.2)", "--povm", "eigen"});
    CHECK(e["optimal"].get<bool>());

    const auto nats = run_json({"entropy", "--state", "bell", "--nats"});
    CHECK(nats["observational_entropy"].get<double>() == doctest::Approx(std::log(2.0)));

    const Run text = run({"entropy", "--state", "bell"});
    CHECK(text.code == 0);
    CHECK(text.out.find("S_M") != std::string::npos);
  }

  TEST_CASE("state and POVM files") {
    const auto dir = temp_dir("files");
    io::write_text_file((dir / "state.json").string(), io::state_to_json(werner(2, 0.3)).dump());
    io::write_text_file((dir / "povm.json").string(), io::povm_to_json(werner_analytic(2, 0.0).witness).dump());
    const auto j = run_json({"entropy", "--file", (dir / "state.json").string(), "--povm-file",
                             (dir / "povm.json").string()});
    CHECK(j["observational_entropy"].get<double>() == doctest::Approx(werner_analytic(2, 0.3).s_m0));

    io::write_text_file((dir / "bad.json").string(), R"({"dims":[2],"re":[2,0,0,0]})");
    const Run bad = run({"entropy", "--file", (dir / "bad.json").string()});
    CHECK(bad.code == cli::kExitValidation);
    CHECK(bad.err.find("trace") != std::string::npos);
  }

  TEST_CASE("gap command") {
    const auto lo = run_json({"gap", "--state", "trine", "--class", "lo", "--restarts", "8", "--workers", "1"});
    CHECK(lo["gap"].get<double>() == doctest::Approx(2.0 - std::log2(3.0)).epsilon(1e-3));
    CHECK(lo.contains("witness"));

    const auto locc = run_json({"gap", "--state", "cq-example", "--class", "locc1", "--restarts", "4"});
    CHECK(std::abs(locc["gap"].get<double>()) < 1e-6);

    const auto ppt = run_json({"gap", "--state", "w3", "--class", "ppt-w3"});
    CHECK(ppt["gap"].get<double>() == doctest::Approx(std::log2(9.0 / 4.0)));
    CHECK(ppt["exact"].get<bool>());

    const auto we = run_json({"gap", "--state", "werner(d=4,lambda=1)", "--class", "werner-exact"});
    CHECK(we["gap"].get<double>() == doctest::Approx(1.0));

    const auto part = run_json({"gap", "--state", "two-bell", "--partition", "AB|CD", "--restarts", "2"});
    CHECK(part["gap"].get<double>() == doctest::Approx(2.0));
  }

  TEST_CASE("errors and exit codes") {
    CHECK(run({}).code == cli::kExitValidation);
    CHECK(run({"gap", "--state", "nosuch"}).code == cli::kExitValidation);
    CHECK(run({"gap", "--state", "bell", "--class", "magic"}).code == cli::kExitValidation);
    CHECK(run({"gap", "--state", "bell", "--class", "ppt-w3"}).code == cli::kExitValidation);
    CHECK(run({"gap", "--state", "bell", "--class", "werner-exact"}).code == cli::kExitValidation);
    CHECK(run({"gap", "--state", "bell", "--partition", "A|C"}).code == cli::kExitValidation);
    CHECK(run({"gap", "--state", "bell", "--restarts", "0"}).code == cli::kExitValidation);
    CHECK(run({"gap", "--state", "bell", "--file", "x.json"}).code == cli::kExitValidation);
    CHECK(run({"entropy", "--state", "bell", "--povm", "werner-m0"}).code == 0);
    CHECK(run({"entropy", "--state", "ghz4", "--povm", "werner-m0"}).code == cli::kExitValidation);
    CHECK(run({"reproduce", "nosuch", "--out-dir", temp_dir("bad").string()}).code == cli::kExitValidation);
    const Run help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("reproduce") != std::string::npos);
  }

  TEST_CASE("catalog command") {
    const Run r = run({"catalog"});
    CHECK(r.code == 0);
    CHECK(r.out.find("tiles-upb") != std::string::npos);
  }

  TEST_CASE("scan and robustness commands") {
    const auto dir = temp_dir("scan");
    const Run s = run({"scan", "--state", "ghz(n=3)", "--restarts", "2", "--output", (dir / "s.csv").string(),
                       "--averages", (dir / "a.csv").string()});
    CHECK(s.code == 0);
    const auto rows = read_csv(dir / "s.csv");
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"state", "class", "partition", "shape", "gap_bits", "converged"});
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i][2] != "ABC") CHECK(std::stod(rows[i][4]) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(read_csv(dir / "a.csv")[0] ==
          std::vector<std::string>{"state", "class", "shape", "count", "average_gap_bits"});

    const Run r = run({"robustness", "--state", "ghz(n=3)", "--restarts", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("state,class,discarded,gap_bits,converged", 0) == 0);
  }

  TEST_CASE("reproduce writes CSVs and a manifest") {
    const auto dir = temp_dir("reproduce");
    CHECK(run({"reproduce", "werner-curves", "--out-dir", dir.string()}).code == 0);
    const auto rows = read_csv(dir / "werner_curves.csv");
    CHECK(rows.size() == 1 + 4 * 101);
    bool found = false;
    for (const auto& row : rows)
      if (row[0] == "2" && std::stod(row[1]) == 1.0) {
        found = true;
        CHECK(std::stod(row[5]) == doctest::Approx(1.0));
      }
    CHECK(found);
    const auto manifest = io::read_json_file((dir / "manifest_werner-curves.json").string());
    CHECK(manifest["version"] == io::kVersion);
    CHECK(manifest["seed"].get<std::uint64_t>() == OptConfig{}.seed);
    CHECK(manifest["outputs"].size() == 1);
    CHECK(manifest.contains("wall_time_seconds"));

    CHECK(run({"reproduce", "w-family", "--out-dir", dir.string(), "--restarts", "4", "--workers", "1"}).code == 0);
    const auto wf = read_csv(dir / "w_family.csv");
    const std::map<std::string, double> expected{{"2", 1.0}, {"3", std::log2(3.0)}, {"4", 2.0}};
    for (const auto& row : wf)
      if (row.size() > 2 && row[1] == "lostar") CHECK(std::stod(row[2]) == doctest::Approx(expected.at(row[0])).epsilon(1e-3));
  }
}
