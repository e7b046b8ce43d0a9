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

#include "oegap/parallel.hpp"
#include "oegap/simplex.hpp"

#include "support.hpp"

using namespace oegap;

TEST_SUITE("parallel") {
  TEST_CASE("parallel probabilities match the serial reference") {
    Rng rng = make_rng(40, 0);
    const DensityMatrix r = random_density({3, 3}, rng);
    const Povm m = random_povm({3, 3}, 12, rng);
    const auto serial = parallel::probabilities_serial(r.matrix(), m.effects());
    for (int workers : {1, 2, 4}) {
      const auto par = parallel::probabilities_parallel(r.matrix(), m.effects(), workers);
      REQUIRE(par.size() == serial.size());
      for (std::size_t k = 0; k < serial.size(); ++k) CHECK(par[k] == doctest::Approx(serial[k]).epsilon(1e-14));
    }
  }

  TEST_CASE("parallel map matches serial map and forwards exceptions") {
    auto f = [](int i) { return i * i + 1; };
    CHECK(parallel::map_serial<int>(50, f) == parallel::map_parallel<int>(50, 3, f));
    auto g = [](int i) -> int {
      if (i == 7) throw std::runtime_error("boom");
      return i;
    };
    CHECK_THROWS_AS(parallel::map_parallel<int>(10, 2, g), std::runtime_error);
    CHECK(parallel::resolve_workers(3) == 3);
    CHECK(parallel::resolve_workers(0) >= 1);
  }

  TEST_CASE("simplex minimizer") {
    const Objective quad = [](std::span<const double> x) {
      return (x[0] - 1) * (x[0] - 1) + 2 * (x[1] + 0.5) * (x[1] + 0.5);
    };
    const auto r = minimize_simplex(quad, {0.0, 0.0}, SimplexOptions{});
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.x[1] == doctest::Approx(-0.5).epsilon(1e-3));
  }

  TEST_CASE("random sampling") {
    Rng a = make_rng(41, 3), b = make_rng(41, 3), c = make_rng(41, 4);
    const ComplexMatrix ua = haar_unitary(3, a), ub = haar_unitary(3, b), uc = haar_unitary(3, c);
    CHECK((ua - ub).norm() == 0.0);
    CHECK((ua - uc).norm() > 1e-3);
    CHECK((ua.adjoint() * ua - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
    CHECK(validate(random_density({2, 3}, a, 2)).ok());
    CHECK(validate(random_povm({2, 2}, 6, a)).ok());
  }
}
