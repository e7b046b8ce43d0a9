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

TEST_SUITE("optimize") {
  TEST_CASE("configuration") {
    CHECK_NOTHROW(check_config(OptConfig{}));
    OptConfig bad;
    bad.restarts = 0;
    CHECK_THROWS_AS(check_config(bad), std::invalid_argument);
    bad = OptConfig{};
    bad.entropy_tol = -1;
    CHECK_THROWS_AS(check_config(bad), std::invalid_argument);
    for (GapClass c : {GapClass::LOStar, GapClass::LO, GapClass::LOCC1, GapClass::SEP})
      CHECK(gap_class_from_string(to_string(c)) == c);
    CHECK_THROWS(gap_class_from_string("ppt"));
  }

  TEST_CASE("LO* gaps") {
    const auto cfg = quick();
    CHECK(minimize_lostar(bell(), PartitionSpec::full(2), cfg).gap.bits == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(minimize_lostar(cq_example().state, PartitionSpec::full(2), cfg).gap.bits ==
          doctest::Approx(0.5).epsilon(1e-5));
    const auto t = minimize_lostar(trine_cq().state, PartitionSpec::full(2), cfg);
    CHECK(t.gap.bits == doctest::Approx(4.0 / 3.0 - 0.5 * std::log2(3.0)).epsilon(1e-5));
    REQUIRE(t.witness);
    CHECK(observational_entropy(trine_cq().state, *t.witness).bits == doctest::Approx(t.entropy.bits));
    CHECK(t.trace.size() == 8);
    CHECK(t.converged);
  }

  TEST_CASE("LO gaps") {
    const auto cfg = quick();
    const auto t = minimize_lo(trine_cq().state, PartitionSpec::full(2), cfg);
    CHECK(t.gap.bits <= 2.0 - std::log2(3.0) + 1e-3);
    CHECK(validate(t.witness_povm()).ok());

    ComplexMatrix cc = ComplexMatrix::Zero(6, 6);
    cc.diagonal() << 0.2, 0.1, 0.1, 0.3, 0.0, 0.3;
    Rng rng = make_rng(30, 0);
    const ComplexMatrix u = tensor({haar_unitary(2, rng), haar_unitary(3, rng)});
    const DensityMatrix rotated(u * cc * u.adjoint(), {2, 3});
    CHECK(minimize_lo(rotated, PartitionSpec::full(2), cfg).gap.bits == doctest::Approx(0.0).epsilon(1e-5));

    const auto w3 = minimize_lo(w(3), PartitionSpec::full(3), cfg);
    CHECK(w3.gap.bits == doctest::Approx(std::log2(3.0)).epsilon(1e-3));
  }

  TEST_CASE("one-way LOCC gaps") {
    const auto cfg = quick();
    CHECK(minimize_locc_oneway(cq_example().state, PartitionSpec::full(2), {}, cfg).gap.bits ==
          doctest::Approx(0.0).epsilon(1e-6));

    Rng rng = make_rng(31, 0);
    std::vector<ComplexMatrix> cond;
    for (int k = 0; k < 3; ++k) cond.push_back(random_density({2}, rng).matrix());
    const CqState c = cq(3, cond, {0.2, 0.5, 0.3});
    const auto r = minimize_locc_oneway(c.state, PartitionSpec::full(2), {0, 1}, cfg);
    CHECK(r.gap.bits == doctest::Approx(0.0).epsilon(1e-6));
    REQUIRE(r.protocol);
    CHECK(chain_entropy(*r.protocol, c.state).bits == doctest::Approx(r.entropy.bits));

    const auto w3 = minimize_locc_oneway(w(3), PartitionSpec::full(3), {}, cfg);
    CHECK(w3.entropy.bits <= 1.551);
    CHECK(observational_entropy(w(3), w3.witness_povm()).bits == doctest::Approx(w3.entropy.bits));
  }

  TEST_CASE("Werner closed form") {
    for (int d = 2; d <= 6; ++d) {
      CHECK(werner_analytic(d, 1.0).gap == doctest::Approx(1.0));
      CHECK(werner_analytic(d, 0.0).gap == doctest::Approx(1.0 - 2.0 / (d + 1)));
      CHECK(werner_analytic(d, (d - 1.0) / (2.0 * d)).gap == doctest::Approx(0.0).epsilon(1e-12));
      const auto r = werner_analytic(d, 0.35);
      CHECK(r.s_m0 == doctest::Approx(observational_entropy(werner(d, 0.35), r.witness).bits));
      CHECK(r.s_vn == doctest::Approx(von_neumann(werner(d, 0.35)).bits));
      CHECK(*werner_parameter(werner(d, 0.35)) == doctest::Approx(0.35));
    }
    CHECK_FALSE(werner_parameter(bell()).has_value());
    CHECK_THROWS(werner_analytic(1, 0.5));
  }

  TEST_CASE("CQ gaps") {
    const auto cfg = quick();
    const auto ex = cq_gap(cq_example(), PovmClass::LOStar, cfg);
    CHECK(ex.gap.bits == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(cq_gap(trine_cq(), PovmClass::LO, cfg).gap.bits == doctest::Approx(2.0 - std::log2(3.0)).epsilon(1e-4));

    ComplexMatrix d1 = ComplexMatrix::Zero(2, 2), d2 = ComplexMatrix::Zero(2, 2);
    d1.diagonal() << 0.7, 0.3;
    d2.diagonal() << 0.1, 0.9;
    CHECK(cq_gap(cq(2, {d1, d2}, {0.4, 0.6}), PovmClass::LOStar, cfg).gap.bits ==
          doctest::Approx(0.0).epsilon(1e-6));
    CHECK_THROWS(cq_gap(cq_example(), PovmClass::SEP, cfg));
  }

  TEST_CASE("PPT bound for W3") {
    const auto r = ppt_gap_w3();
    CHECK(r.gap == doctest::Approx(std::log2(9.0 / 4.0)).epsilon(1e-9));
    CHECK(r.trace == doctest::Approx(9.0 / 4.0));
    const std::array<double, 5> expected{0.5, 0.0, 0.0, 2.0 / 3.0, 1.0 / 12.0};
    for (int k = 0; k < 5; ++k) CHECK(r.t[k] == doctest::Approx(expected[k]).epsilon(1e-9));
    CHECK(r.snapped);
    CHECK(r.verified);
    CHECK(validate(r.witness).ok());
    for (bool b : is_ppt(r.witness, PartitionSpec::full(3))) CHECK(b);
    CHECK(observational_entropy(w(3), r.witness).bits == doctest::Approx(r.gap));

    const auto q = w3_invariant_projectors();
    for (const auto& a : q) CHECK(close(a * a, a, 1e-12));
    ComplexMatrix sum = ComplexMatrix::Zero(8, 8);
    for (const auto& a : q) sum += a;
    CHECK(close(sum, ComplexMatrix::Identity(8, 8), 1e-12));
  }

  TEST_CASE("separable heuristic") {
    const auto cfg = quick();
    Rng rng = make_rng(32, 0);
    const DensityMatrix psi = haar_pure_state({2, 3}, rng);
    const double ent = von_neumann(psi.reduced({0})).bits;
    const auto p = sep_gap_heuristic(psi, PartitionSpec::full(2), 0, cfg);
    CHECK(p.upper == doctest::Approx(ent).epsilon(1e-5));
    CHECK(p.lower == doctest::Approx(ent).epsilon(1e-5));

    const auto wr = sep_gap_heuristic(werner(3, 0.6), PartitionSpec::full(2), 0, cfg);
    CHECK(wr.upper == doctest::Approx(werner_analytic(3, 0.6).gap).epsilon(5e-3));
    CHECK(wr.lower == doctest::Approx(werner_analytic(3, 0.6).gap));

    const auto w3 = sep_gap_heuristic(w(3), PartitionSpec::full(3), 0, cfg);
    CHECK(w3.lower == doctest::Approx(std::log2(9.0 / 4.0)));
    CHECK(w3.upper <= 1.551);
    CHECK(w3.upper >= w3.lower);
  }

  TEST_CASE("class chain ordering") {
    const auto chain = class_chain(trine_cq().state, PartitionSpec::full(2), quick());
    CHECK(chain.lostar.gap.bits >= chain.lo.gap.bits);
    CHECK(chain.lo.gap.bits >= chain.locc1.gap.bits);
    CHECK(chain.locc1.gap.bits >= chain.sep.gap.bits);
    CHECK(chain.lo.gap.bits < chain.lostar.gap.bits - 0.1);
  }

  TEST_CASE("determinism") {
    Rng rng = make_rng(33, 0);
    const DensityMatrix r = random_density({2, 2}, rng);
    OptConfig serial = quick(6), threaded = quick(6);
    threaded.workers = 2;
    const auto a = minimize_lostar(r, PartitionSpec::full(2), serial);
    const auto b = minimize_lostar(r, PartitionSpec::full(2), serial);
    const auto c = minimize_lostar(r, PartitionSpec::full(2), threaded);
    CHECK(a.entropy.bits == b.entropy.bits);
    CHECK(a.trace == b.trace);
    CHECK(a.trace == c.trace);
    CHECK(a.entropy.bits == c.entropy.bits);
  }

  TEST_CASE("eigenseparability") {
    std::vector<double> p;
    for (int i = 1; i <= 9; ++i) p.push_back(i / 45.0);
    CHECK(eigenseparability(domino_mixture(p), PartitionSpec::full(2)).verdict == Eigenseparability::Eigenseparable);
    for (int d = 2; d <= 3; ++d)
      for (double lambda : {0.0, 0.3, 1.0})
        CHECK(eigenseparability(werner(d, lambda), PartitionSpec::full(2)).verdict ==
              Eigenseparability::NotEigenseparable);

    const std::vector<double> q{0.1, 0.15, 0.2, 0.25, 0.3};
    const auto tiles = eigenseparability(tiles_upb_state(q), PartitionSpec::full(2));
    CHECK(tiles.verdict != Eigenseparability::Eigenseparable);
    bool kernel_ppt = false;
    for (const auto& e : tiles.eigenspaces)
      if (e.kernel) kernel_ppt = e.ppt && e.separability != Separability::Separable;
    CHECK(kernel_ppt);
  }
}
