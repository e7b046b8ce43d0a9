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

#include "oegap/simplex.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

namespace oegap {

namespace {

struct Callback {
  const Objective* f;
  std::vector<double> scratch;
};

double trampoline(const gsl_vector* v, void* params) {
  auto* cb = static_cast<Callback*>(params);
  for (std::size_t i = 0; i < v->size; ++i) cb->scratch[i] = gsl_vector_get(v, i);
  const double value = (*cb->f)(cb->scratch);
  return std::isfinite(value) ? value : std::numeric_limits<double>::max();
}

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

}  // namespace

SimplexResult minimize_simplex(const Objective& f, std::vector<double> x0, const SimplexOptions& options) {
  SimplexResult result;
  const std::size_t n = x0.size();
  if (n == 0) {
    result.value = f(x0);
    result.converged = true;
    return result;
  }
  gsl_set_error_handler_off();
  Callback cb{&f, std::vector<double>(n)};
  gsl_multimin_function fn{&trampoline, n, &cb};

  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n));
  std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x.get(), i, x0[i]);
  gsl_vector_set_all(step.get(), options.initial_step);

  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), step.get());

  int iter = 0;
  int status = GSL_CONTINUE;
  while (status == GSL_CONTINUE && iter < options.max_iters) {
    ++iter;
    const int step_status = gsl_multimin_fminimizer_iterate(s.get());
    if (step_status != GSL_SUCCESS) {
      // A simplex that cannot shrink further has nothing left to improve.
      status = step_status == GSL_ENOPROG ? GSL_SUCCESS : step_status;
      break;
    }
    status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), options.size_tol);
  }
  result.iterations = iter;
  result.converged = status == GSL_SUCCESS;
  result.value = gsl_multimin_fminimizer_minimum(s.get());
  result.x.resize(n);
  const gsl_vector* best = gsl_multimin_fminimizer_x(s.get());
  for (std::size_t i = 0; i < n; ++i) result.x[i] = gsl_vector_get(best, i);
  return result;
}

}  // namespace oegap
