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

#include <exception>
#include <span>
#include <vector>

#include <omp.h>

#include "oegap/qcore.hpp"

namespace oegap::parallel {

/// Worker count for a request; 0 means the OpenMP default.
int resolve_workers(int requested);

/// Reference driver: evaluates fn(0..n-1) in order.
template <class R, class Fn>
std::vector<R> map_serial(int n, Fn&& fn) {
  std::vector<R> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

/// OpenMP driver with the same results as map_serial: each task writes its
/// own slot and tasks share no mutable state.
template <class R, class Fn>
std::vector<R> map_parallel(int n, int workers, Fn&& fn) {
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_workers(workers))
  for (int i = 0; i < n; ++i) {
    try {
      out[i] = fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Outcome probabilities Re Tr(M_i rho).
std::vector<double> probabilities_serial(const ComplexMatrix& rho, std::span<const ComplexMatrix> effects);
std::vector<double> probabilities_parallel(const ComplexMatrix& rho, std::span<const ComplexMatrix> effects,
                                           int workers = 0);

}  // namespace oegap::parallel
