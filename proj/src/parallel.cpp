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

namespace oegap::parallel {

int resolve_workers(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

namespace {

double trace_product(const ComplexMatrix& m, const ComplexMatrix& rho) {
  // Re Tr(M rho) = Re sum_ij M_ij rho_ji
  return (m.array() * rho.transpose().array()).sum().real();
}

}  // namespace

std::vector<double> probabilities_serial(const ComplexMatrix& rho, std::span<const ComplexMatrix> effects) {
  std::vector<double> p(effects.size());
  for (std::size_t i = 0; i < effects.size(); ++i) p[i] = trace_product(effects[i], rho);
  return p;
}

std::vector<double> probabilities_parallel(const ComplexMatrix& rho, std::span<const ComplexMatrix> effects,
                                           int workers) {
  const int n = static_cast<int>(effects.size());
  std::vector<double> p(n);
#pragma omp parallel for schedule(static) num_threads(resolve_workers(workers))
  for (int i = 0; i < n; ++i) p[i] = trace_product(effects[i], rho);
  return p;
}

}  // namespace oegap::parallel
