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

#include <cmath>
#include <limits>

#include "oegap/parallel.hpp"
#include "opt_internal.hpp"

namespace oegap {

using namespace detail;

namespace {

constexpr int kSweeps = 4;
constexpr double kSweepSteps[kSweeps] = {0.3, 0.1, 0.03, 0.01};

struct FrameRun {
  double value = std::numeric_limits<double>::infinity();
  std::vector<ComplexMatrix> frames;
  bool converged = false;
};

// Block-coordinate simplex descent over raw rank-1 frames. Blocks listed in
// `frozen` keep their starting frame.
FrameRun coordinate_descent(const ComplexMatrix& rho_blocks, const Dims& bd, std::vector<ComplexMatrix> raw,
                            const std::vector<bool>& frozen, const OptConfig& cfg) {
  const std::size_t nb = bd.size();
  std::vector<ComplexMatrix> frames(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const auto x = raw_from_frame(raw[b]);
    if (!frame_from_raw(x.data(), bd[b], static_cast<int>(raw[b].cols()), frames[b])) {
      // Degenerate start: nudge it to full rank.
      raw[b] += 1e-3 * ComplexMatrix::Identity(bd[b], raw[b].cols());
      const auto y = raw_from_frame(raw[b]);
      frame_from_raw(y.data(), bd[b], static_cast<int>(raw[b].cols()), frames[b]);
    }
  }
  double value = frame_entropy(rho_blocks, frames);
  bool converged = true;
  for (int sweep = 0; sweep < kSweeps; ++sweep) {
    const double before = value;
    for (std::size_t b = 0; b < nb; ++b) {
      if (frozen[b]) continue;
      const int n = static_cast<int>(raw[b].cols());
      std::vector<ComplexMatrix> trial = frames;
      Objective f = [&](std::span<const double> x) {
        if (!frame_from_raw(x.data(), bd[b], n, trial[b])) return std::numeric_limits<double>::infinity();
        return frame_entropy(rho_blocks, trial);
      };
      SimplexOptions opt{kSweepSteps[sweep], cfg.max_iters, cfg.step_tol};
      const auto r = minimize_simplex(f, raw_from_frame(raw[b]), opt);
      if (r.value < value) {
        frame_from_raw(r.x.data(), bd[b], n, frames[b]);
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < bd[b]; ++i)
            raw[b](i, j) = Complex(r.x[2 * (j * bd[b] + i)], r.x[2 * (j * bd[b] + i) + 1]);
        value = frame_entropy(rho_blocks, frames);
      }
      if (sweep == kSweeps - 1) converged = converged && r.converged;
    }
    if (sweep > 0 && before - value < cfg.entropy_tol * 1e-3) break;
  }
  return {value, std::move(frames), converged};
}

int outcomes_for(int d, int restart, const OptConfig& cfg) {
  if (d == 2) return 2 + restart % 3;
  const int budget = cfg.outcome_budget > 0 ? cfg.outcome_budget : d + 1;
  if (budget < d) throw std::invalid_argument("outcome budget is smaller than a block dimension");
  return budget;
}

OptResult frames_result(const DensityMatrix& rho, const PartitionSpec& partition, const FrameRun& best,
                        PovmClass cls) {
  const auto bsub = block_subsystem_dims(rho.dims(), partition);
  OptResult res;
  res.cls = cls;
  for (std::size_t b = 0; b < best.frames.size(); ++b) {
    // Drop outcomes whose effect vanished during the search.
    ComplexMatrix f = best.frames[b];
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < f.cols(); ++j)
      if (f.col(j).squaredNorm() > 1e-14) keep.push_back(j);
    ComplexMatrix kept(f.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) kept.col(k) = f.col(keep[k]);
    res.local.push_back(frame_povm(kept, bsub[b], cls));
  }
  Povm witness = lo_povm(res.local, partition, rho.dims()).retagged(cls);
  finish(res, rho, observational_entropy(rho, witness).bits);
  res.witness = std::move(witness);
  res.converged = best.converged;
  return res;
}

}  // namespace

OptResult minimize_lo(const DensityMatrix& rho, const PartitionSpec& partition, const OptConfig& cfg,
                      std::span<const OptResult> seeds) {
  check_config(cfg);
  require_valid(rho);
  if (partition.size() == 1) return single_block_result(rho, PovmClass::LO);
  const Dims bd = partition.block_dims(rho.dims());
  const std::size_t nb = bd.size();
  const ComplexMatrix rb = to_block_order(rho.matrix(), rho.dims(), partition);
  const auto eig = marginal_eigenbases(rho, partition);

  std::vector<std::vector<ComplexMatrix>> seed_frames;
  for (const auto& s : seeds) {
    if (s.local.size() != nb) continue;
    try {
      std::vector<ComplexMatrix> frames;
      for (const auto& p : s.local) frames.push_back(frame_of(p));
      seed_frames.push_back(std::move(frames));
    } catch (const std::invalid_argument&) {
    }
  }
  std::vector<ComplexMatrix> identity;
  for (int d : bd) identity.push_back(ComplexMatrix::Identity(d, d));
  const auto& primary = seed_frames.empty() ? identity : seed_frames.front();

  auto run = [&](int r) {
    Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(r));
    std::vector<ComplexMatrix> raw(nb);
    const std::vector<bool> frozen(nb, false);
    for (std::size_t b = 0; b < nb; ++b) {
      const int n = outcomes_for(bd[b], r, cfg);
      if (r == 0) {
        raw[b] = pad_columns(primary[b], n);
      } else if (r == 1) {
        raw[b] = pad_columns(eig[b], n);
      } else if (r % 2 == 1) {
        // Keep the seed on all blocks but one.
        const std::size_t randomized = static_cast<std::size_t>(r / 2) % nb;
        raw[b] = b == randomized ? gaussian_vectors(bd[b], n, rng) : pad_columns(primary[b], n);
      } else {
        raw[b] = gaussian_vectors(bd[b], n, rng);
      }
    }
    return coordinate_descent(rb, bd, std::move(raw), frozen, cfg);
  };
  std::vector<FrameRun> runs;
  if (cfg.workers == 1)
    runs = parallel::map_serial<FrameRun>(cfg.restarts, run);
  else
    runs = parallel::map_parallel<FrameRun>(cfg.restarts, cfg.workers, run);

  std::vector<double> values;
  for (const auto& s : seeds)
    if (s.local.size() == nb) values.push_back(s.entropy.bits);
  const std::size_t n_seed = values.size();
  for (const auto& r : runs) values.push_back(r.value);
  const std::size_t best = argmin(values);

  OptResult res;
  if (best < n_seed) {
    std::size_t k = 0;
    for (const auto& s : seeds)
      if (s.local.size() == nb && k++ == best) res = s;
    res.cls = PovmClass::LO;
    res.witness = res.witness->retagged(PovmClass::LO);
    res.method = "seed product measurement";
  } else {
    res = frames_result(rho, partition, runs[best - n_seed], PovmClass::LO);
    res.method = "block-coordinate rank-1 POVM search";
  }
  res.trace = values;
  res.lower_bound = {marginal_lower_bound(rho, partition)};
  return res;
}

OptResult cq_gap(const CqState& cq, PovmClass cls, const OptConfig& cfg) {
  check_config(cfg);
  if (cls != PovmClass::LOStar && cls != PovmClass::LO) throw std::invalid_argument("cq_gap supports LO* and LO");
  const DensityMatrix& rho = cq.state;
  require_valid(rho);
  const int da = rho.dims().at(0);
  const int db = rho.dim() / da;
  if (rho.dims().size() != 2 || static_cast<int>(cq.conditionals.size()) != da)
    throw std::invalid_argument("cq_gap: expected a classical register followed by one quantum system");
  ComplexMatrix expected = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (int k = 0; k < da; ++k) expected.block(k * db, k * db, db, db) = cq.weights[k] * cq.conditionals[k];
  const double defect = operator_norm(expected - rho.matrix());
  if (defect > 1e-9) throw std::invalid_argument("cq_gap: state is not classical-quantum in the declared basis");

  const PartitionSpec partition = PartitionSpec::full(2);
  const Dims bd{da, db};
  const ComplexMatrix eig_b = eigenbasis(partial_trace(rho.matrix(), rho.dims(), {1}));
  auto run = [&](int r) {
    Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(r));
    std::vector<ComplexMatrix> frames{ComplexMatrix::Identity(da, da), ComplexMatrix()};
    if (cls == PovmClass::LOStar) {
      const ComplexMatrix u0 = r == 0 ? ComplexMatrix::Identity(db, db)
                               : r == 1 ? eig_b
                                        : haar_unitary(db, rng);
      Objective f = [&](std::span<const double> x) {
        std::vector<ComplexMatrix> trial{frames[0], unitary_from_chart(u0, x.data(), db)};
        return frame_entropy(rho.matrix(), trial);
      };
      const auto pr = simplex_with_polish(f, std::vector<double>(unitary_chart_size(db), 0.0), cfg, 0.3);
      frames[1] = unitary_from_chart(u0, pr.x.data(), db);
      return FrameRun{pr.value, frames, pr.converged};
    }
    const int n = outcomes_for(db, r, cfg);
    const ComplexMatrix start = r == 0 ? pad_columns(ComplexMatrix::Identity(db, db), n)
                                : r == 1 ? pad_columns(eig_b, n)
                                         : gaussian_vectors(db, n, rng);
    return coordinate_descent(rho.matrix(), bd, {frames[0], start}, {true, false}, cfg);
  };
  std::vector<FrameRun> runs;
  if (cfg.workers == 1)
    runs = parallel::map_serial<FrameRun>(cfg.restarts, run);
  else
    runs = parallel::map_parallel<FrameRun>(cfg.restarts, cfg.workers, run);
  std::vector<double> values;
  for (const auto& r : runs) values.push_back(r.value);
  OptResult res = frames_result(rho, partition, runs[argmin(values)], cls);
  res.trace = values;
  res.method = "quantum-side search with classical basis fixed";
  return res;
}

}  // namespace oegap
