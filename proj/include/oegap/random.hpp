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

#include <cstdint>
#include <random>

#include "oegap/qcore.hpp"

namespace oegap {

using Rng = std::mt19937_64;

/// Independent deterministic stream for (seed, stream index).
Rng make_rng(std::uint64_t seed, std::uint64_t stream);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix haar_unitary(int d, Rng& rng);
ComplexVector haar_pure_vector(int d, Rng& rng);
DensityMatrix haar_pure_state(const Dims& dims, Rng& rng);
/// Induced-measure mixed state of the given rank (rank <= 0 means full rank).
DensityMatrix random_density(const Dims& dims, Rng& rng, int rank = 0);
/// Random POVM with `outcomes` effects of random rank, normalized by S^{-1/2}.
Povm random_povm(const Dims& dims, int outcomes, Rng& rng);

}  // namespace oegap
