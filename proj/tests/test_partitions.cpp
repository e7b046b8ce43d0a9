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

#include "support.hpp"

using namespace oegap;
using namespace oegap::test;

TEST_SUITE("partitions") {
  TEST_CASE("enumeration") {
    CHECK(enumerate_partitions(4, "2+2").size() == 3);
    CHECK(enumerate_partitions(4, "1+3").size() == 4);
    CHECK(enumerate_partitions(4, "3+1").size() == 4);
    CHECK(enumerate_partitions(3).size() == 5);
    CHECK(enumerate_partitions(4).size() == 15);
    CHECK(enumerate_partitions(5).size() == 52);
    CHECK_THROWS(enumerate_partitions(4, "2+1"));
    CHECK_THROWS(enumerate_partitions(4, "x"));
    for (const auto& p : enumerate_partitions(4, "1+1+2")) CHECK(shape_of(p) == "1+1+2");
  }

  TEST_CASE("labels and parsing") {
    const PartitionSpec p = parse_partition("AC|BD", 4);
    CHECK(p.blocks() == std::vector<IndexSet>{{0, 2}, {1, 3}});
    CHECK(partition_label(p) == "AC|BD");
    CHECK(shape_of(p) == "2+2");
    CHECK(parse_partition("", 3) == PartitionSpec::full(3));
    CHECK(partition_label(PartitionSpec::single_block(3)) == "ABC");
    CHECK_THROWS_AS(parse_partition("A|A", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_partition("A|C", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_partition("A||B", 2), std::invalid_argument);
    CHECK(subsystem_key({0, 3}) == "AD");
  }

  TEST_CASE("refinement") {
    CHECK(refines(PartitionSpec::full(3), parse_partition("AB|C", 3)));
    CHECK(refines(parse_partition("AB|C", 3), PartitionSpec::single_block(3)));
    CHECK_FALSE(refines(parse_partition("AB|C", 3), parse_partition("A|BC", 3)));
  }

  TEST_CASE("Schmidt fast path") {
    const auto r = pure_bipartition_result(two_bell(), parse_partition("AB|CD", 4), PovmClass::LOStar);
    REQUIRE(r);
    CHECK(r->gap.bits == doctest::Approx(2.0));
    CHECK(r->exact);
    CHECK(validate(r->witness_povm()).ok());
    CHECK(observational_entropy(two_bell(), r->witness_povm()).bits == doctest::Approx(2.0));
    CHECK_FALSE(pure_bipartition_result(werner(2, 0.3), PartitionSpec::full(2), PovmClass::LOStar));
    CHECK_FALSE(pure_bipartition_result(ghz(3), PartitionSpec::full(3), PovmClass::LOStar));
  }

  TEST_CASE("scan of two Bell pairs") {
    const auto scan = scan_partitions(two_bell(), "two-bell", GapClass::LOStar, quick(4));
    CHECK(scan.entries.size() == 15);
    std::map<std::string, double> gap;
    for (const auto& e : scan.entries) gap[e.label] = e.result.gap.bits;
    CHECK(gap["AC|BD"] == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(gap["AB|CD"] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(gap["AD|BC"] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(gap["ABCD"] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(scan.shape_averages.at("2+2") == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
    CHECK(scan.shape_counts.at("1+1+2") == 6);
    CHECK(scan.monotonicity_violations.empty());
  }

  TEST_CASE("robustness of GHZ and two Bell pairs") {
    const auto g = robustness_scan(ghz(4), GapClass::LOStar, quick(4));
    CHECK(g.size() == 14);
    for (const auto& e : g)
      if (e.discarded.size() == 1) CHECK(e.result.gap.bits == doctest::Approx(0.0).epsilon(1e-6));

    const auto b = robustness_scan(two_bell(), GapClass::LOStar, quick(4));
    for (const auto& e : b) {
      CAPTURE(e.key);
      if (e.key == "D" || e.key == "A") CHECK(e.result.gap.bits == doctest::Approx(1.0).epsilon(1e-6));
      if (e.key == "AB") CHECK(e.result.gap.bits == doctest::Approx(0.0).epsilon(1e-6));
      if (e.key == "AC") CHECK(e.result.gap.bits == doctest::Approx(1.0).epsilon(1e-6));
    }
    CHECK(b.front().discarded.size() == 1);
  }
}
