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

#include "oegap/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oegap {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x6f65u};
  return Rng(seq);
}

namespace {

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace

ComplexMatrix haar_unitary(int d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

ComplexVector haar_pure_vector(int d, Rng& rng) {
  ComplexVector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

DensityMatrix haar_pure_state(const Dims& dims, Rng& rng) {
  return DensityMatrix::from_pure(haar_pure_vector(total_dimension(dims), rng), dims);
}

DensityMatrix random_density(const Dims& dims, Rng& rng, int rank) {
  const int d = total_dimension(dims);
  if (rank <= 0 || rank > d) rank = d;
  const ComplexMatrix g = ginibre(d, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(rho, dims);
}

Povm random_povm(const Dims& dims, int outcomes, Rng& rng) {
  const int d = total_dimension(dims);
  std::uniform_int_distribution<int> rank_dist(1, d);
  std::vector<ComplexMatrix> raw;
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  if (outcomes < 1) throw std::invalid_argument("random_povm: need at least one outcome");
  int total_rank = 0;
  for (int i = 0; i < outcomes; ++i) {
    int rank = rank_dist(rng);
    // The last effect fills whatever the others leave uncovered, so the sum is invertible.
    if (i == outcomes - 1) rank = std::max(rank, d - total_rank);
    total_rank += rank;
    const ComplexMatrix a = ginibre(d, rank, rng);
    raw.push_back(a * a.adjoint());
    sum += raw.back();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sum);
  const ComplexMatrix inv_sqrt =
      es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
  std::vector<ComplexMatrix> effects;
  for (const auto& g : raw) {
    ComplexMatrix e = inv_sqrt * g * inv_sqrt;
    effects.push_back(0.5 * (e + e.adjoint()));
  }
  return Povm(std::move(effects), dims, PovmClass::General);
}

}  // namespace oegap
