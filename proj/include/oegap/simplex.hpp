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

#include <functional>
#include <span>
#include <vector>

namespace oegap {

using Objective = std::function<double(std::span<const double>)>;

struct SimplexOptions {
  double initial_step = 0.3;
  int max_iters = 2000;
  /// Stop once the simplex characteristic size falls below this.
  double size_tol = 1e-7;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Derivative-free Nelder-Mead minimization (GSL nmsimplex2).
SimplexResult minimize_simplex(const Objective& f, std::vector<double> x0, const SimplexOptions& options);

}  // namespace oegap
