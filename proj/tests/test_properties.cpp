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

#include "properties.hpp"

#include "support.hpp"

using namespace oegap;
using namespace oegap::test;

TEST_SUITE("properties") {
  TEST_CASE("random state and POVM pairs") {
    for (const auto& t : run_properties(150, 7)) {
      CAPTURE(t.name);
      CAPTURE(t.worst);
      CHECK(t.checked >= 150);
      CHECK(t.failed == 0);
    }
  }

  TEST_CASE("class chain is ordered on small catalog states") {
    for (const char* name : {"bell", "trine", "cq-example", "werner(d=2,lambda=0.8)", "w3"}) {
      CAPTURE(name);
      const DensityMatrix rho = from_catalog(name);
      const auto chain = class_chain(rho, PartitionSpec::full(static_cast<int>(rho.dims().size())), quick(4));
      CHECK(chain.lostar.gap.bits >= chain.lo.gap.bits);
      CHECK(chain.lo.gap.bits >= chain.locc1.gap.bits);
      CHECK(chain.locc1.gap.bits >= chain.sep.gap.bits);
      CHECK(chain.sep.gap.bits >= chain.sep.lower_bound.bits - 1e-9);
    }
  }

  TEST_CASE("LO and LO* vanish together") {
    // Zero LO gap implies zero LO* gap: both vanish on classically correlated states
    // and both stay positive on the Bell state.
    ComplexMatrix cc = ComplexMatrix::Zero(4, 4);
    cc.diagonal() << 0.4, 0.1, 0.2, 0.3;
    const DensityMatrix ccs(cc, {2, 2});
    CHECK(minimize_lostar(ccs, PartitionSpec::full(2), quick(4)).gap.bits < 1e-6);
    CHECK(minimize_lo(ccs, PartitionSpec::full(2), quick(4)).gap.bits < 1e-6);
    CHECK(minimize_lo(bell(), PartitionSpec::full(2), quick(4)).gap.bits > 0.5);
  }

  TEST_CASE("partition refinement never lowers the gap") {
    const auto scan = scan_partitions(w(3), "w3", GapClass::LOStar, quick(4));
    CHECK(scan.monotonicity_violations.empty());
  }
}
