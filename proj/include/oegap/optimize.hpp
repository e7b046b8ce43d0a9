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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oegap/classes.hpp"
#include "oegap/entropy.hpp"
#include "oegap/qcore.hpp"
#include "oegap/states.hpp"

namespace oegap {

struct OptConfig {
  std::uint64_t seed = 20240611;
  int restarts = 64;
  int max_iters = 2000;
  double step_tol = 1e-7;
  double entropy_tol = 1e-6;
  /// Worker threads for restarts; 0 uses the OpenMP default, 1 runs serially.
  int workers = 0;
  /// Rank-1 vectors per non-qubit block in LO search and per product POVM in
  /// the SEP search (0 picks D + 1 and 2d respectively).
  int outcome_budget = 0;
};

/// Throws std::invalid_argument for restarts < 1 or non-positive tolerances.
void check_config(const OptConfig& cfg);

enum class GapClass { LOStar, LO, LOCC1, SEP };
std::string to_string(GapClass c);
GapClass gap_class_from_string(const std::string& s);

struct OptResult {
  PovmClass cls = PovmClass::General;
  EntropyValue entropy;
  EntropyValue gap;
  /// Certified lower bound on the gap (0 unless a bound is known).
  EntropyValue lower_bound;
  std::optional<Povm> witness;
  std::optional<ConditionalMeasurement> protocol;
  /// Local factors of a product witness, one per block.
  std::vector<Povm> local;
  /// Best entropy of each restart, in restart order.
  std::vector<double> trace;
  bool converged = false;
  /// True only for closed-form or otherwise certified values.
  bool exact = false;
  std::string method;

  /// Witness as a global POVM (flattens a protocol when needed).
  Povm witness_povm() const;
};

OptResult minimize_lostar(const DensityMatrix& rho, const PartitionSpec& partition, const OptConfig& cfg);

/// Local rank-1 POVM search. Qubit blocks cycle through 2, 3 and 4 outcomes
/// across restarts; larger blocks use cfg.outcome_budget vectors. Seeds with
/// product witnesses are evaluated and used as starting points.
OptResult minimize_lo(const DensityMatrix& rho, const PartitionSpec& partition, const OptConfig& cfg,
                      std::span<const OptResult> seeds = {});

/// One-way protocol: the first block's POVM is searched, later blocks are
/// measured in conditional (marginal) eigenbases. An empty ordering means
/// ascending block order.
OptResult minimize_locc_oneway(const DensityMatrix& rho, const PartitionSpec& partition, const IndexSet& ordering,
                               const OptConfig& cfg, std::span<const OptResult> seeds = {});

struct SepResult {
  OptResult best;
  /// Sandwich [lower, upper] on the separable gap.
  double lower = 0.0;
  double upper = 0.0;
};

/// Upper bound on the separable gap from one-way protocols over every first
/// block plus a weighted product rank-1 search with `budget` vectors.
SepResult sep_gap_heuristic(const DensityMatrix& rho, const PartitionSpec& partition, int budget,
                            const OptConfig& cfg, std::span<const OptResult> seeds = {});

/// Results for LO*, LO, LOCC1 and SEP, each seeded by the previous ones so the
/// chain LO* >= LO >= LOCC1 >= SEP holds by construction.
struct ClassChain {
  OptResult lostar;
  OptResult lo;
  OptResult locc1;
  OptResult sep;
};

ClassChain class_chain(const DensityMatrix& rho, const PartitionSpec& partition, const OptConfig& cfg);

/// Gap for a single class, computing the cheaper classes first as seeds.
OptResult minimize_gap(const DensityMatrix& rho, const PartitionSpec& partition, GapClass cls,
                       const OptConfig& cfg);

/// Optimizes only the quantum side of a classical-quantum state.
OptResult cq_gap(const CqState& cq, PovmClass cls, const OptConfig& cfg);

struct WernerAnalytic {
  double x = 0.0;  // Tr(Pi_X rho)
  double s_m0 = 0.0;
  double s_vn = 0.0;
  double gap = 0.0;
  Povm witness;
};

WernerAnalytic werner_analytic(int d, double lambda);
/// Returns lambda when rho is a Werner state on C^d (x) C^d, otherwise nothing.
std::optional<double> werner_parameter(const DensityMatrix& rho);

struct PptW3Result {
  double gap = 0.0;
  double trace = 0.0;
  std::array<double, 5> t{};  // coefficients of Q2..Q6
  bool snapped = false;       // coefficients recognized as small rationals
  bool verified = false;      // PSD, PPT, t <= 1 and 1 - M' PPT all hold
  Povm witness;
};

/// Invariant projectors Q1..Q6 of the three-qubit W problem.
std::array<ComplexMatrix, 6> w3_invariant_projectors();
PptW3Result ppt_gap_w3();

enum class Eigenseparability { Eigenseparable, NotEigenseparable, Unknown };
std::string to_string(Eigenseparability e);

struct EigenspaceVerdict {
  double eigenvalue = 0.0;
  int rank = 0;
  bool kernel = false;
  Separability separability = Separability::Unknown;
  bool ppt = false;
};

struct EigenseparabilityReport {
  Eigenseparability verdict = Eigenseparability::Unknown;
  std::vector<EigenspaceVerdict> eigenspaces;
};

EigenseparabilityReport eigenseparability(const DensityMatrix& rho, const PartitionSpec& partition);

}  // namespace oegap
