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

TEST_SUITE("classes") {
  TEST_CASE("LO* POVMs from local bases") {
    const LocalBases comp{{ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)}};
    const Povm m = lostar_povm(comp, PartitionSpec::full(2), {2, 2});
    REQUIRE(m.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(close(m.effects()[k], projector(basis_vector(4, k))));
    CHECK(m.class_tag() == PovmClass::LOStar);

    Rng rng = make_rng(20, 0);
    const ComplexVector psi = haar_pure_vector(6, rng);
    const auto sd = schmidt(psi, {2, 3}, {0});
    ComplexMatrix right = ComplexMatrix::Zero(3, 3);
    right.leftCols(2) = sd.right;
    ComplexMatrix seed = ComplexMatrix::Identity(3, 3);
    seed.leftCols(2) = sd.right;
    const ComplexMatrix q = Eigen::HouseholderQR<ComplexMatrix>(seed).householderQ();
    right.col(2) = q.col(2);
    const Povm sm = lostar_povm({{sd.left, right}}, PartitionSpec::full(2), {2, 3});
    double ent = 0;
    for (double c : sd.coefficients) ent -= c * c > 0 ? c * c * std::log2(c * c) : 0.0;
    CHECK(validate(sm).ok());
    CHECK(observational_entropy(DensityMatrix::from_pure(psi, {2, 3}), sm).bits == doctest::Approx(ent));

    const DensityMatrix r = random_density({2, 2}, rng);
    const Spectrum s = spectral(r.matrix());
    ComplexMatrix eig(4, 4);
    int col = 0;
    for (const auto& v : s.eigenvectors) {
      eig.middleCols(col, v.cols()) = v;
      col += static_cast<int>(v.cols());
    }
    const Povm single = lostar_povm({{eig}}, PartitionSpec::single_block(2), {2, 2});
    CHECK(certify_optimal(r, single).optimal);
  }

  TEST_CASE("LO POVMs") {
    const CqState t = trine_cq();
    std::vector<ComplexMatrix> anti;
    for (const auto& c : t.conditionals) anti.push_back((ComplexMatrix::Identity(2, 2) - c) * (2.0 / 3.0));
    const std::vector<Povm> local{computational({3}), Povm(anti, {2})};
    const Povm m = lo_povm(local, PartitionSpec::full(2), {3, 2});
    CHECK(m.size() == 9);
    CHECK(validate(m).ok());
    CHECK(observational_entropy(t.state, m).bits - std::log2(3.0) == doctest::Approx(2.0 - std::log2(3.0)));

    const LocalBases comp{{ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(2, 2)}};
    const std::vector<Povm> comp_local{computational({3}), computational({2})};
    const Povm a = lostar_povm(comp, PartitionSpec::full(2), {3, 2});
    const Povm b = lo_povm(comp_local, PartitionSpec::full(2), {3, 2});
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(close(a.effects()[k], b.effects()[k]));

    const std::vector<Povm> trivials{Povm::trivial({3}), Povm::trivial({2})};
    const Povm tr = lo_povm(trivials, PartitionSpec::full(2), {3, 2});
    REQUIRE(tr.size() == 1);
    CHECK(close(tr.effects()[0], ComplexMatrix::Identity(6, 6)));
  }

  TEST_CASE("rank-1 refinement") {
    const Povm proj({tensor({ComplexMatrix::Identity(2, 2), projector(basis_vector(2, 0))}),
                     tensor({ComplexMatrix::Identity(2, 2), projector(basis_vector(2, 1))})},
                    {2, 2});
    const Povm r = rank1_refine(proj);
    CHECK(r.size() == 4);
    CHECK(validate(r).ok());

    const Povm werner_opt = werner_analytic(3, 0.4).witness;
    const Povm wr = rank1_refine(werner_opt);
    REQUIRE(wr.size() == 9);
    for (const auto& e : wr.effects()) {
      CHECK(close(e, ComplexMatrix(e.diagonal().asDiagonal())));
      CHECK(e.trace().real() == doctest::Approx(1.0));
    }

    Rng rng = make_rng(21, 0);
    const Povm basis = Povm::from_basis(haar_unitary(3, rng), {3});
    const Povm br = rank1_refine(basis);
    REQUIRE(br.size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(close(br.effects()[k], basis.effects()[k], 1e-9));
  }

  TEST_CASE("classical post-processing") {
    Rng rng = make_rng(22, 0);
    const Povm m = random_povm({2, 2}, 4, rng);
    const Povm same = cpp_apply({Eigen::MatrixXd::Identity(4, 4)}, m);
    for (int k = 0; k < 4; ++k) CHECK(close(same.effects()[k], m.effects()[k]));
    CHECK(same.class_tag() == PovmClass::Unverified);

    const Povm merged = cpp_apply({Eigen::MatrixXd::Ones(1, 4)}, m);
    REQUIRE(merged.size() == 1);
    CHECK(close(merged.effects()[0], ComplexMatrix::Identity(4, 4)));

    Eigen::MatrixXd bin = Eigen::MatrixXd::Zero(2, 4);
    bin(0, 0) = bin(0, 3) = 1;
    bin(1, 1) = bin(1, 2) = 1;
    const Povm binned = cpp_apply({bin}, computational({2, 2}));
    const Povm wopt = werner_analytic(2, 0.3).witness;
    CHECK(close(binned.effects()[0], wopt.effects()[0]));
    CHECK(close(binned.effects()[1], wopt.effects()[1]));

    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(4, 4);
    bad(0, 0) = 0.5;
    CHECK_THROWS(cpp_apply({bad}, m));
  }

  TEST_CASE("PPT and RCT tests") {
    const PartitionSpec ab = PartitionSpec::full(2);
    Rng rng = make_rng(23, 0);
    const Povm lostar = lostar_povm({{haar_unitary(2, rng), haar_unitary(3, rng)}}, ab, {2, 3});
    for (bool b : is_ppt(lostar, ab)) CHECK(b);
    for (bool b : is_rct(lostar, ab)) CHECK(b);

    for (int d = 2; d <= 3; ++d) {
      const Povm sa({symmetric_projector(d), antisymmetric_projector(d)}, {d, d});
      const auto ppt = is_ppt(sa, ab);
      CHECK(ppt[0]);
      CHECK_FALSE(ppt[1]);
    }
    const Povm sa3({symmetric_projector(3), antisymmetric_projector(3)}, {3, 3});
    for (bool b : is_rct(sa3, ab)) CHECK(b);
    // At d = 2 the antisymmetric projector is the singlet: I/2 (x) I - P is not PSD.
    CHECK_FALSE(is_rct_operator(antisymmetric_projector(2), {2, 2}, ab));
    CHECK(is_rct_operator(symmetric_projector(2), {2, 2}, ab));

    const Povm w3 = ppt_gap_w3().witness;
    for (bool b : is_ppt(w3, PartitionSpec::full(3))) CHECK(b);
  }

  TEST_CASE("separability of effects") {
    const PartitionSpec ab = PartitionSpec::full(2);
    CHECK(is_separable_effect(projector(basis_vector(4, 1)), {2, 2}, ab) == Separability::Separable);
    CHECK(is_separable_effect(antisymmetric_projector(2), {2, 2}, ab) == Separability::Entangled);
    const ComplexMatrix m_prime = ppt_gap_w3().witness.effects()[0];
    CHECK(is_separable_effect(m_prime, {2, 2, 2}, PartitionSpec::full(3)) == Separability::Unknown);
    CHECK(to_string(Separability::Unknown) == "Unknown");
  }

  TEST_CASE("product detection") {
    const PartitionSpec ab = PartitionSpec::full(2);
    CHECK(is_product_vector(basis_vector(4, 2), {2, 2}, ab));
    CHECK_FALSE(is_product_vector(bell_vector(), {2, 2}, ab));
    CHECK(is_product_operator(tensor({pauli_x(), ComplexMatrix::Identity(3, 3)}), {2, 3}, ab));
    CHECK_FALSE(is_product_operator(flip_operator(2), {2, 2}, ab));
  }
}
