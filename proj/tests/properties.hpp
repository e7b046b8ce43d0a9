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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "oegap/classes.hpp"
#include "oegap/entropy.hpp"
#include "oegap/optimize.hpp"
#include "oegap/random.hpp"
#include "oegap/states.hpp"

namespace oegap::test {

struct Tally {
  std::string name;
  int checked = 0;
  int failed = 0;
  double worst = 0.0;  // largest violation seen

  void record(double violation, double tol) {
    ++checked;
    worst = std::max(worst, violation);
    if (violation > tol) ++failed;
  }
};

namespace props {

inline Dims random_dims(Rng& rng) {
  const int d = 2 + static_cast<int>(rng() % 3);
  if (d == 4 && rng() % 2) return {2, 2};
  return {d};
}

inline Dims random_bipartite(Rng& rng) {
  static const Dims choices[] = {{2, 2}, {2, 3}, {3, 2}};
  return choices[rng() % 3];
}

inline Eigen::MatrixXd random_stochastic(int rows, int cols, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = u(rng) < 0.3 ? 0.0 : u(rng);
    if (m.col(j).sum() == 0.0) m(0, j) = 1.0;
    m.col(j) /= m.col(j).sum();
  }
  return m;
}

/// Density matrix with a prescribed, possibly degenerate, spectrum in a Haar basis,
/// together with a rank-1 refinement of its eigenprojectors.
inline std::pair<DensityMatrix, Povm> degenerate_pair(const Dims& dims, Rng& rng) {
  const int d = total_dimension(dims);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  RealVector spec(d);
  for (int i = 0; i < d; ++i) spec(i) = (i > 0 && rng() % 2) ? spec(i - 1) : u(rng);
  spec /= spec.sum();
  const ComplexMatrix v = haar_unitary(d, rng);
  return {DensityMatrix(v * spec.cast<Complex>().asDiagonal() * v.adjoint(), dims), Povm::from_basis(v, dims)};
}

}  // namespace props

/// Property suite over `pairs` random (state, POVM) pairs.
inline std::vector<Tally> run_properties(int pairs, std::uint64_t seed) {
  Tally bounds{"bounds 0 <= S(rho) <= S_M <= log2 d"}, sandwich{"recovery sandwich"},
      cpp{"classical post-processing monotonicity"}, convex{"gap convexity for fixed M"},
      unitary{"joint unitary invariance"}, sep{"separable marginal bound"}, cert{"certificate agreement"};
  const double tol = 1e-9;
  for (int k = 0; k < pairs; ++k) {
    Rng rng = make_rng(seed, k);
    const Dims dims = props::random_dims(rng);
    const int d = total_dimension(dims);
    const int outcomes = 1 + static_cast<int>(rng() % (2 * d));
    const DensityMatrix rho = random_density(dims, rng, 1 + static_cast<int>(rng() % d));
    const Povm m = random_povm(dims, outcomes, rng);
    const double sm = observational_entropy(rho, m).bits;
    const double s = von_neumann(rho).bits;

    bounds.record(std::max({-s, s - sm, sm - std::log2(d)}), tol);

    const auto rb = recovery_bounds(rho, m);
    const double lower = rb.lower.is_overflow() ? -INFINITY : rb.lower.bits;
    sandwich.record(std::max(lower - sm, sm - rb.upper.bits), 1e-8);

    const int coarse = 1 + static_cast<int>(rng() % outcomes);
    const Povm binned = cpp_apply({props::random_stochastic(coarse, outcomes, rng)}, m);
    cpp.record(sm - observational_entropy(rho, binned).bits, tol);

    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double lambda = u(rng);
    const DensityMatrix other = random_density(dims, rng);
    const DensityMatrix mix(lambda * rho.matrix() + (1 - lambda) * other.matrix(), dims);
    auto gap = [&](const DensityMatrix& r) { return observational_entropy(r, m).bits - von_neumann(r).bits; };
    convex.record(gap(mix) - (lambda * gap(rho) + (1 - lambda) * gap(other)), 1e-8);

    const ComplexMatrix v = haar_unitary(d, rng);
    std::vector<ComplexMatrix> rotated;
    for (const auto& e : m.effects()) rotated.push_back(v * e * v.adjoint());
    const DensityMatrix rho_v(v * rho.matrix() * v.adjoint(), dims);
    unitary.record(std::abs(observational_entropy(rho_v, Povm(rotated, dims)).bits - sm), 1e-8);

    // Product and flattened one-way witnesses on a bipartite system.
    const Dims bd = props::random_bipartite(rng);
    const PartitionSpec ab = PartitionSpec::full(2);
    const DensityMatrix rab = random_density(bd, rng);
    const double marginal = std::max(von_neumann(rab.reduced({0})).bits, von_neumann(rab.reduced({1})).bits);
    const std::vector<Povm> local{random_povm({bd[0]}, 1 + static_cast<int>(rng() % 4), rng),
                                  random_povm({bd[1]}, 1 + static_cast<int>(rng() % 4), rng)};
    sep.record(marginal - observational_entropy(rab, lo_povm(local, ab, bd)).bits, tol);
    ConditionalStep root{0, local[0], {}};
    for (std::size_t i = 0; i < local[0].size(); ++i)
      root.next.push_back({1, random_povm({bd[1]}, 1 + static_cast<int>(rng() % 4), rng), {}});
    const ConditionalMeasurement protocol{bd, ab, root};
    sep.record(marginal - observational_entropy(rab, flatten_locc(protocol)).bits, tol);

    // Optimal pairs by construction, then a generic POVM on the same state.
    const auto [rd, opt] = props::degenerate_pair(dims, rng);
    const auto c1 = certify_optimal(rd, opt);
    cert.record(c1.optimal && c1.entropy_excess <= 1e-7 ? 0.0 : 1.0, 0.5);
    const auto c2 = certify_optimal(rho, m);
    const bool zero_gap = std::abs(sm - s) <= 1e-7;
    cert.record(c2.optimal == zero_gap && c2.entropy_consistent ? 0.0 : 1.0, 0.5);
  }
  return {bounds, sandwich, cpp, convex, unitary, sep, cert};
}

}  // namespace oegap::test
