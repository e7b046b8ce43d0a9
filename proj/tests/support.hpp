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

#include <cmath>

#include <doctest.h>

#include "oegap/classes.hpp"
#include "oegap/entropy.hpp"
#include "oegap/optimize.hpp"
#include "oegap/partitions.hpp"
#include "oegap/qcore.hpp"
#include "oegap/random.hpp"
#include "oegap/states.hpp"

namespace oegap::test {

inline double h2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

inline bool close(const ComplexMatrix& a, const ComplexMatrix& b, double tol = 1e-10) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).norm() <= tol;
}

inline ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

inline ComplexMatrix pauli_x() {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

inline ComplexVector ket(std::initializer_list<Complex> amps) {
  ComplexVector v(static_cast<int>(amps.size()));
  int i = 0;
  for (auto a : amps) v(i++) = a;
  return v;
}

/// Small, deterministic optimizer budget for unit tests.
inline OptConfig quick(int restarts = 8) {
  OptConfig cfg;
  cfg.restarts = restarts;
  cfg.workers = 1;
  return cfg;
}

inline Povm computational(const Dims& dims) {
  const int d = total_dimension(dims);
  return Povm::from_basis(ComplexMatrix::Identity(d, d), dims, PovmClass::LOStar);
}

}  // namespace oegap::test
