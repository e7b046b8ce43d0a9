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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "oegap/parallel.hpp"
#include "opt_internal.hpp"

namespace oegap {

// ---------------------------------------------------------------------------
// Shared machinery

namespace detail {

double frame_entropy(const ComplexMatrix& rho_blocks, const std::vector<ComplexMatrix>& frames) {
  const ComplexMatrix k = tensor(frames);
  const ComplexMatrix rk = rho_blocks * k;
  double s = 0.0;
  for (Eigen::Index i = 0; i < k.cols(); ++i) {
    const double p = k.col(i).dot(rk.col(i)).real();
    if (p <= kProbabilityFloor) continue;
    s -= p * std::log2(p / k.col(i).squaredNorm());
  }
  return s;
}

Povm frame_povm(const ComplexMatrix& frame, const Dims& dims, PovmClass tag) {
  std::vector<ComplexMatrix> effects;
  for (Eigen::Index j = 0; j < frame.cols(); ++j) effects.push_back(frame.col(j) * frame.col(j).adjoint());
  return Povm(std::move(effects), dims, tag);
}

int unitary_chart_size(int d) { return d * d - d; }

ComplexMatrix unitary_from_chart(const ComplexMatrix& u0, const double* x, int d) {
  if (d == 1) return u0;
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  int k = 0;
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q, k += 2) {
      h(p, q) = Complex(x[k], x[k + 1]);
      h(q, p) = std::conj(h(p, q));
    }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  ComplexVector phases(d);
  for (int i = 0; i < d; ++i) phases(i) = std::polar(1.0, es.eigenvalues()(i));
  return u0 * es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

bool frame_from_raw(const double* x, int d, int n, ComplexMatrix& frame) {
  ComplexMatrix g(d, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = Complex(x[2 * (j * d + i)], x[2 * (j * d + i) + 1]);
  const ComplexMatrix gram = g * g.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram);
  const auto& ev = es.eigenvalues();
  if (!(ev(0) > 1e-10 * std::max(1e-300, ev(d - 1)))) return false;
  const RealVector inv_sqrt = ev.cwiseSqrt().cwiseInverse();
  frame = es.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint() * g;
  return true;
}

std::vector<double> raw_from_frame(const ComplexMatrix& frame) {
  std::vector<double> x;
  x.reserve(2 * frame.size());
  for (Eigen::Index j = 0; j < frame.cols(); ++j)
    for (Eigen::Index i = 0; i < frame.rows(); ++i) {
      x.push_back(frame(i, j).real());
      x.push_back(frame(i, j).imag());
    }
  return x;
}

ComplexMatrix eigenbasis(const ComplexMatrix& op) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (op + op.adjoint()));
  return es.eigenvectors().rowwise().reverse();
}

std::vector<ComplexMatrix> marginal_eigenbases(const DensityMatrix& rho, const PartitionSpec& partition) {
  std::vector<ComplexMatrix> out;
  for (const auto& block : partition.blocks()) out.push_back(eigenbasis(partial_trace(rho.matrix(), rho.dims(), block)));
  return out;
}

ComplexMatrix gaussian_vectors(int d, int n, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(d, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

ComplexMatrix pad_columns(const ComplexMatrix& frame, int n) {
  if (frame.cols() >= n) return frame;
  ComplexMatrix out = ComplexMatrix::Zero(frame.rows(), n);
  out.leftCols(frame.cols()) = frame;
  return out;
}

ComplexMatrix frame_of(const Povm& povm) {
  const int d = povm.dim();
  ComplexMatrix frame(d, static_cast<Eigen::Index>(povm.size()));
  for (std::size_t j = 0; j < povm.size(); ++j) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(povm.effects()[j]);
    const double top = es.eigenvalues()(d - 1);
    if (d > 1 && es.eigenvalues()(d - 2) > 1e-9 * std::max(1.0, top))
      throw std::invalid_argument("frame_of: effect is not rank one");
    frame.col(j) = std::sqrt(std::max(0.0, top)) * es.eigenvectors().col(d - 1);
  }
  return frame;
}

void finish(OptResult& r, const DensityMatrix& rho, double entropy_bits) {
  r.entropy = {entropy_bits};
  r.gap = {entropy_bits - von_neumann(rho).bits};
}

OptResult single_block_result(const DensityMatrix& rho, PovmClass cls) {
  OptResult r;
  r.cls = cls;
  const ComplexMatrix basis = eigenbasis(rho.matrix());
  Povm witness = Povm::from_basis(basis, rho.dims(), cls);
  finish(r, rho, observational_entropy(rho, witness).bits);
  r.local = {witness};
  r.witness = std::move(witness);
  r.trace = {r.entropy.bits};
  r.converged = true;
  r.exact = true;
  r.method = "eigenbasis";
  return r;
}

double marginal_lower_bound(const DensityMatrix& rho, const PartitionSpec& partition) {
  double best = 0.0;
  for (const auto& block : partition.blocks())
    best = std::max(best, von_neumann_bits(partial_trace(rho.matrix(), rho.dims(), block)));
  return std::max(0.0, best - von_neumann(rho).bits);
}

std::size_t argmin(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[best] - 1e-12) best = i;
  return best;
}

PolishedRun simplex_with_polish(const Objective& f, std::vector<double> x0, const OptConfig& cfg,
                                double initial_step) {
  PolishedRun out;
  SimplexOptions opt{initial_step, cfg.max_iters, cfg.step_tol};
  SimplexResult r = minimize_simplex(f, std::move(x0), opt);
  for (double step : {0.05, 0.01}) {
    opt.initial_step = step;
    SimplexResult again = minimize_simplex(f, r.x, opt);
    if (again.value <= r.value) r = std::move(again);
  }
  out.x = std::move(r.x);
  out.value = r.value;
  out.converged = r.converged;
  return out;
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index n = a.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);
  const double tol = 1e-12 * std::max(1.0, a.norm()) * std::max(1.0, b.norm());
  auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j)
      if (passive[j]) idx.push_back(j);
    Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) ap.col(k) = a.col(idx[k]);
    const Eigen::VectorXd zp = ap.colPivHouseholderQr().solve(b);
    z.setZero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) z(idx[k]) = zp(k);
  };
  for (int outer = 0; outer < 3 * n + 10; ++outer) {
    const Eigen::VectorXd w = a.transpose() * (b - a * x);
    Eigen::Index j = -1;
    for (Eigen::Index k = 0; k < n; ++k)
      if (!passive[k] && w(k) > tol && (j < 0 || w(k) > w(j))) j = k;
    if (j < 0) break;
    passive[j] = true;
    Eigen::VectorXd z;
    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      solve_passive(z);
      double alpha = 1.0;
      bool feasible = true;
      for (Eigen::Index k = 0; k < n; ++k)
        if (passive[k] && z(k) <= 0.0) {
          feasible = false;
          alpha = std::min(alpha, x(k) / (x(k) - z(k)));
        }
      if (feasible) break;
      x += alpha * (z - x);
      for (Eigen::Index k = 0; k < n; ++k)
        if (passive[k] && x(k) <= tol) {
          passive[k] = false;
          x(k) = 0.0;
        }
    }
    x = z.cwiseMax(0.0);
  }
  return x;
}

}  // namespace detail

using namespace detail;

// ---------------------------------------------------------------------------

void check_config(const OptConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (!(cfg.step_tol > 0.0) || !(cfg.entropy_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (cfg.outcome_budget < 0) throw std::invalid_argument("outcome budget must be non-negative");
}

std::string to_string(GapClass c) {
  switch (c) {
    case GapClass::LOStar: return "lostar";
    case GapClass::LO: return "lo";
    case GapClass::LOCC1: return "locc1";
    case GapClass::SEP: return "sep";
  }
  return "lostar";
}

GapClass gap_class_from_string(const std::string& s) {
  if (s == "lostar" || s == "LO*") return GapClass::LOStar;
  if (s == "lo" || s == "LO") return GapClass::LO;
  if (s == "locc1" || s == "LOCC1") return GapClass::LOCC1;
  if (s == "sep" || s == "SEP") return GapClass::SEP;
  throw std::invalid_argument("unknown measurement class '" + s + "'");
}

Povm OptResult::witness_povm() const {
  if (witness) return *witness;
  if (protocol) return flatten_locc(*protocol);
  throw std::logic_error("result carries no witness");
}

template <class R, class Fn>
std::vector<R> run_restarts(int n, const OptConfig& cfg, Fn&& fn) {
  if (cfg.workers == 1) return parallel::map_serial<R>(n, std::forward<Fn>(fn));
  return parallel::map_parallel<R>(n, cfg.workers, std::forward<Fn>(fn));
}

// ---------------------------------------------------------------------------
// LO*

OptResult minimize_lostar(const DensityMatrix& rho, const PartitionSpec& partition, const OptConfig& cfg) {
  check_config(cfg);
  require_valid(rho);
  if (partition.size() == 1) return single_block_result(rho, PovmClass::LOStar);
  const Dims bd = partition.block_dims(rho.dims());
  const auto bsub = block_subsystem_dims(rho.dims(), partition);
  const ComplexMatrix rb = to_block_order(rho.matrix(), rho.dims(), partition);
  const auto eig = marginal_eigenbases(rho, partition);
  int nparams = 0;
  for (int d : bd) nparams += unitary_chart_size(d);

  struct Run {
    double value = 0.0;
    std::vector<ComplexMatrix> bases;
    bool converged = false;
  };
  auto run = [&](int r) {
    std::vector<ComplexMatrix> u0;
    Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(r));
    for (std::size_t b = 0; b < bd.size(); ++b) {
      if (r == 0)
        u0.push_back(ComplexMatrix::Identity(bd[b], bd[b]));
      else if (r == 1)
        u0.push_back(eig[b]);
      else
        u0.push_back(haar_unitary(bd[b], rng));
    }
    auto build = [&](const double* x) {
      std::vector<ComplexMatrix> frames;
      int off = 0;
      for (std::size_t b = 0; b < bd.size(); ++b) {
        frames.push_back(unitary_from_chart(u0[b], x + off, bd[b]));
        off += unitary_chart_size(bd[b]);
      }
      return frames;
    };
    Objective f = [&](std::span<const double> x) { return frame_entropy(rb, build(x.data())); };
    const auto pr = simplex_with_polish(f, std::vector<double>(nparams, 0.0), cfg, 0.3);
    return Run{pr.value, build(pr.x.data()), pr.converged};
  };
  const auto runs = run_restarts<Run>(cfg.restarts, cfg, run);

  OptResult res;
  res.cls = PovmClass::LOStar;
  for (const auto& r : runs) res.trace.push_back(r.value);
  const Run& best = runs[argmin(res.trace)];
  for (std::size_t b = 0; b < bd.size(); ++b) res.local.push_back(Povm::from_basis(best.bases[b], bsub[b], PovmClass::LOStar));
  Povm witness = lostar_povm(LocalBases{best.bases}, partition, rho.dims());
  finish(res, rho, observational_entropy(rho, witness).bits);
  res.witness = std::move(witness);
  res.converged = best.converged;
  res.lower_bound = {marginal_lower_bound(rho, partition)};
  res.method = "local-unitary simplex search";
  return res;
}

// ---------------------------------------------------------------------------
// One-way LOCC

namespace {

struct ChainContext {
  Dims bd;
  std::vector<Dims> bsub;
  /// Fixed effects per block; null means adaptive eigenbasis measurement.
  std::vector<const std::vector<ComplexMatrix>*> fixed;
};

std::vector<ComplexMatrix> basis_effects(const ComplexMatrix& basis) {
  std::vector<ComplexMatrix> out;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) out.push_back(basis.col(k) * basis.col(k).adjoint());
  return out;
}

// rho is a normalized state on the blocks in `present` (ascending); `order`
// lists the blocks still to be measured. Returns the remaining entropy.
double chain_tail(const ChainContext& ctx, const ComplexMatrix& rho, const IndexSet& present, const IndexSet& order,
                  std::size_t pos, ConditionalStep* out) {
  const int b = order[pos];
  const auto idx = static_cast<int>(std::find(present.begin(), present.end(), b) - present.begin());
  Dims factor_dims;
  for (int c : present) factor_dims.push_back(ctx.bd[c]);

  std::vector<ComplexMatrix> adaptive;
  const std::vector<ComplexMatrix>* effects = ctx.fixed[b];
  if (!effects) {
    if (present.size() == 1) {
      if (out) *out = ConditionalStep{b, Povm::from_basis(eigenbasis(rho), ctx.bsub[b]), {}};
      return von_neumann_bits(rho);
    }
    adaptive = basis_effects(eigenbasis(partial_trace(rho, factor_dims, {idx})));
    effects = &adaptive;
  }
  if (out) *out = ConditionalStep{b, Povm(*effects, ctx.bsub[b]), {}};
  const auto outcomes = measure_factor(rho, factor_dims, idx, *effects);
  IndexSet rest = present;
  rest.erase(rest.begin() + idx);
  double s = 0.0;
  for (const auto& o : outcomes) {
    const double p = o.probability;
    ConditionalStep* child = nullptr;
    if (out && !rest.empty()) {
      out->next.push_back(ConditionalStep{0, Povm::trivial({1}), {}});
      child = &out->next.back();
    }
    if (p <= kProbabilityFloor) {
      if (child) {
        const int dr = static_cast<int>(o.conditional.rows());
        chain_tail(ctx, ComplexMatrix::Identity(dr, dr) / dr, rest, order, pos + 1, child);
      }
      continue;
    }
    s -= p * std::log2(p / o.volume);
    if (!rest.empty()) s += p * chain_tail(ctx, o.conditional / p, rest, order, pos + 1, child);
  }
  return s;
}

IndexSet all_blocks(std::size_t n) {
  IndexSet out(n);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

}  // namespace

OptResult minimize_locc_oneway(const DensityMatrix& rho, const PartitionSpec& partition, const IndexSet& ordering,
                               const OptConfig& cfg, std::span<const OptResult> seeds) {
  check_config(cfg);
  require_valid(rho);
  if (partition.size() == 1) return single_block_result(rho, PovmClass::LOCC1);
  const std::size_t nb = partition.size();
  IndexSet order = ordering.empty() ? all_blocks(nb) : ordering;
  {
    IndexSet sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != all_blocks(nb)) throw std::invalid_argument("ordering must list every block exactly once");
  }
  ChainContext base{partition.block_dims(rho.dims()), block_subsystem_dims(rho.dims(), partition),
                    std::vector<const std::vector<ComplexMatrix>*>(nb, nullptr)};
  const ComplexMatrix rb = to_block_order(rho.matrix(), rho.dims(), partition);
  const IndexSet present = all_blocks(nb);
  const int first = order.front();
  const int d0 = base.bd[first];

  struct Candidate {
    double value = std::numeric_limits<double>::infinity();
    std::vector<std::vector<ComplexMatrix>> fixed;  // per block, empty when adaptive
    bool converged = true;
  };
  auto evaluate = [&](const std::vector<std::vector<ComplexMatrix>>& fixed, ConditionalStep* out) {
    ChainContext ctx = base;
    for (std::size_t b = 0; b < nb; ++b) ctx.fixed[b] = fixed[b].empty() ? nullptr : &fixed[b];
    return chain_tail(ctx, rb, present, order, 0, out);
  };

  // Seeds: product witnesses measured in `order`, last round upgraded to the conditional eigenbasis.
  std::vector<Candidate> candidates;
  std::vector<ComplexMatrix> starts;
  for (const auto& seed : seeds) {
    if (seed.local.size() != nb) continue;
    Candidate c;
    c.fixed.resize(nb);
    for (std::size_t b = 0; b < nb; ++b)
      if (static_cast<int>(b) != order.back()) c.fixed[b] = seed.local[b].effects();
    c.value = evaluate(c.fixed, nullptr);
    candidates.push_back(std::move(c));
    try {
      starts.push_back(frame_of(seed.local[first]));
    } catch (const std::invalid_argument&) {
    }
  }
  const std::size_t n_seed = candidates.size();
  starts.push_back(ComplexMatrix::Identity(d0, d0));
  starts.push_back(marginal_eigenbases(rho, partition)[first]);

  auto run = [&](int r) {
    ComplexMatrix start;
    if (r < static_cast<int>(starts.size())) {
      start = starts[r];
    } else {
      Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(r));
      const int n = d0 == 2 ? 2 + r % 3 : d0 + r % 2;
      start = gaussian_vectors(d0, n, rng);
    }
    const int n = static_cast<int>(start.cols());
    std::vector<std::vector<ComplexMatrix>> fixed(nb);
    auto set_first = [&](const double* x) {
      ComplexMatrix frame;
      if (!frame_from_raw(x, d0, n, frame)) return false;
      fixed[first].clear();
      for (int j = 0; j < n; ++j) fixed[first].push_back(frame.col(j) * frame.col(j).adjoint());
      return true;
    };
    Objective f = [&](std::span<const double> x) {
      if (!set_first(x.data())) return std::numeric_limits<double>::infinity();
      return evaluate(fixed, nullptr);
    };
    const auto pr = simplex_with_polish(f, raw_from_frame(start), cfg, 0.3);
    set_first(pr.x.data());
    Candidate c;
    c.fixed = fixed;
    c.value = evaluate(fixed, nullptr);
    c.converged = pr.converged;
    return c;
  };
  const int n_runs = std::max(cfg.restarts, 1);
  auto searched = run_restarts<Candidate>(n_runs, cfg, run);
  for (auto& c : searched) candidates.push_back(std::move(c));

  OptResult res;
  res.cls = PovmClass::LOCC1;
  for (const auto& c : candidates) res.trace.push_back(c.value);
  const std::size_t best = argmin(res.trace);
  ConditionalStep root{0, Povm::trivial({1}), {}};
  const double value = evaluate(candidates[best].fixed, &root);
  ConditionalMeasurement protocol{rho.dims(), partition, std::move(root)};
  require_valid(protocol);
  finish(res, rho, value);
  res.protocol = std::move(protocol);
  res.converged = candidates[best].converged;
  res.lower_bound = {marginal_lower_bound(rho, partition)};
  res.method = best < n_seed ? "seeded product protocol with conditional last round"
                             : "first-round simplex search with conditional eigenbases";
  return res;
}

// ---------------------------------------------------------------------------
// SEP heuristic

namespace {

std::optional<double> known_ppt_lower_bound(const DensityMatrix& rho, const PartitionSpec& partition) {
  if (partition.size() < 2) return std::nullopt;
  if (auto lambda = werner_parameter(rho); lambda && partition.size() == 2)
    return werner_analytic(rho.dims()[0], *lambda).gap;
  if (rho.dims() == Dims{2, 2, 2}) {
    const ComplexVector wv = w_vector(3);
    const double fidelity = (wv.adjoint() * rho.matrix() * wv)(0, 0).real();
    bool single_qubit_block = false;
    for (const auto& b : partition.blocks()) single_qubit_block |= b.size() == 1;
    if (fidelity > 1.0 - 1e-12 && single_qubit_block) return std::log2(9.0 / 4.0);
  }
  return std::nullopt;
}

struct ProductSearch {
  double value = std::numeric_limits<double>::infinity();
  std::optional<Povm> witness;
  bool converged = false;
};

// Weighted product rank-1 POVM: K product vectors, weights from NNLS on completeness.
ProductSearch product_rank1_search(const DensityMatrix& rho, const PartitionSpec& partition, int budget,
                                   const OptConfig& cfg, const std::optional<Povm>& start) {
  const Dims bd = partition.block_dims(rho.dims());
  const int d = rho.dim();
  int per_vector = 0;
  for (int x : bd) per_vector += 2 * x;
  const int nparams = per_vector * budget;
  ProductSearch out;
  if (nparams > 400) return out;
  const ComplexMatrix rb = to_block_order(rho.matrix(), rho.dims(), partition);

  Eigen::VectorXd target = Eigen::VectorXd::Zero(d * d);
  for (int i = 0; i < d; ++i) target(i) = 1.0;
  auto unpack = [&](const double* x, ComplexMatrix& vectors) {
    vectors.resize(d, budget);
    int off = 0;
    for (int k = 0; k < budget; ++k) {
      std::vector<ComplexVector> parts;
      for (int db : bd) {
        ComplexVector v(db);
        for (int i = 0; i < db; ++i, off += 2) v(i) = Complex(x[off], x[off + 1]);
        parts.push_back(v);
      }
      ComplexVector v = tensor_vectors(parts);
      const double n = v.norm();
      vectors.col(k) = n > 1e-150 ? ComplexVector(v / n) : ComplexVector::Zero(d);
    }
  };
  auto weights_of = [&](const ComplexMatrix& vectors, double& residual) {
    Eigen::MatrixXd a(d * d, budget);
    for (int k = 0; k < budget; ++k) {
      const ComplexMatrix p = vectors.col(k) * vectors.col(k).adjoint();
      int row = 0;
      for (int i = 0; i < d; ++i) a(row++, k) = p(i, i).real();
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
          a(row++, k) = p(i, j).real();
          a(row++, k) = p(i, j).imag();
        }
    }
    const Eigen::VectorXd w = nnls(a, target);
    residual = (a * w - target).norm();
    return w;
  };
  auto entropy_of = [&](const ComplexMatrix& vectors, const Eigen::VectorXd& w) {
    const ComplexMatrix rv = rb * vectors;
    double s = 0.0;
    for (int k = 0; k < budget; ++k) {
      const double p = w(k) * vectors.col(k).dot(rv.col(k)).real();
      if (p > kProbabilityFloor) s -= p * std::log2(p / w(k));
    }
    return s;
  };
  Objective f = [&](std::span<const double> x) {
    ComplexMatrix vectors;
    unpack(x.data(), vectors);
    double residual = 0.0;
    const auto w = weights_of(vectors, residual);
    return entropy_of(vectors, w) + 10.0 * residual;
  };

  std::vector<double> seeded;
  if (start) {
    // Split rank-1 product effects of the start witness into block vectors.
    const Povm refined = rank1_refine(*start);
    if (static_cast<int>(refined.size()) <= budget) {
      Rng rng = make_rng(cfg.seed, 0x5e9);
      for (std::size_t k = 0; k < refined.size(); ++k) {
        const ComplexMatrix e = to_block_order(refined.effects()[k], rho.dims(), partition);
        const ComplexVector v = frame_of(Povm({e}, {d})).col(0);
        ComplexVector rest = v;
        Dims rest_dims = bd;
        for (std::size_t b = 0; b < bd.size(); ++b) {
          ComplexVector part;
          if (b + 1 == bd.size()) {
            part = rest;
          } else {
            const auto sd = schmidt(rest, rest_dims, {0});
            part = sd.left.col(0);
            rest = sd.right.col(0);
            rest_dims.erase(rest_dims.begin());
          }
          for (Eigen::Index i = 0; i < part.size(); ++i) {
            seeded.push_back(part(i).real());
            seeded.push_back(part(i).imag());
          }
        }
      }
      std::normal_distribution<double> normal;
      while (static_cast<int>(seeded.size()) < nparams) seeded.push_back(normal(rng));
    }
  }
  const int runs = std::min(cfg.restarts, 4);
  auto run = [&](int r) {
    std::vector<double> x0;
    if (r == 0 && !seeded.empty()) {
      x0 = seeded;
    } else {
      Rng rng = make_rng(cfg.seed, 0x5e90000ULL + static_cast<std::uint64_t>(r));
      std::normal_distribution<double> normal;
      for (int i = 0; i < nparams; ++i) x0.push_back(normal(rng));
    }
    SimplexOptions opt{0.2, cfg.max_iters, cfg.step_tol};
    return minimize_simplex(f, x0, opt);
  };
  const auto results = run_restarts<SimplexResult>(runs, cfg, run);
  for (const auto& r : results) {
    ComplexMatrix vectors;
    unpack(r.x.data(), vectors);
    double residual = 0.0;
    const auto w = weights_of(vectors, residual);
    std::vector<ComplexMatrix> effects;
    for (int k = 0; k < budget; ++k)
      if (w(k) > 0.0) effects.push_back(from_block_order(w(k) * vectors.col(k) * vectors.col(k).adjoint(), rho.dims(), partition));
    if (effects.empty()) continue;
    Povm candidate(std::move(effects), rho.dims(), PovmClass::SEP);
    if (!validate(candidate).ok()) continue;
    const double value = observational_entropy(rho, candidate).bits;
    if (value < out.value) {
      out.value = value;
      out.witness = std::move(candidate);
      out.converged = r.converged;
    }
  }
  return out;
}

}  // namespace

SepResult sep_gap_heuristic(const DensityMatrix& rho, const PartitionSpec& partition, int budget,
                            const OptConfig& cfg, std::span<const OptResult> seeds) {
  check_config(cfg);
  require_valid(rho);
  if (budget == 0) budget = 2 * rho.dim();
  if (budget < rho.dim()) throw std::invalid_argument("outcome budget is too small to complete the identity");
  SepResult out;
  if (partition.size() == 1) {
    out.best = single_block_result(rho, PovmClass::SEP);
    return out;
  }
  std::vector<OptResult> candidates(seeds.begin(), seeds.end());
  const std::size_t nb = partition.size();
  std::vector<OptResult> product_seeds;
  for (const auto& s : seeds)
    if (s.local.size() == nb) product_seeds.push_back(s);
  for (std::size_t first = 0; first < nb; ++first) {
    IndexSet order{static_cast<int>(first)};
    for (std::size_t b = 0; b < nb; ++b)
      if (b != first) order.push_back(static_cast<int>(b));
    candidates.push_back(minimize_locc_oneway(rho, partition, order, cfg, product_seeds));
  }
  std::vector<double> values;
  for (const auto& c : candidates) values.push_back(c.entropy.bits);
  const std::size_t best = argmin(values);

  OptResult res = candidates[best];
  const auto search = product_rank1_search(rho, partition, budget, cfg, res.witness_povm());
  res.trace = values;
  res.trace.push_back(search.value);
  if (search.witness && search.value < res.entropy.bits - 1e-12) {
    finish(res, rho, search.value);
    res.witness = search.witness;
    res.protocol.reset();
    res.local.clear();
    res.converged = search.converged;
    res.method = "weighted product rank-1 search";
  } else {
    res.witness = res.witness_povm();
    res.protocol.reset();
  }
  res.cls = PovmClass::SEP;
  res.witness = res.witness->retagged(PovmClass::SEP);
  double lower = marginal_lower_bound(rho, partition);
  if (auto known = known_ppt_lower_bound(rho, partition)) lower = std::max(lower, *known);
  res.lower_bound = {lower};
  out.best = std::move(res);
  out.lower = lower;
  out.upper = out.best.gap.bits;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Each class contains its predecessor, so a predecessor witness is also a witness for
// the larger class; keep it whenever the search for the larger class ended higher.
void inherit_if_lower(OptResult& next, const OptResult& prev) {
  if (prev.entropy.bits >= next.entropy.bits) return;
  const PovmClass cls = next.cls;
  const EntropyValue lower = std::max(next.lower_bound, prev.lower_bound);
  std::vector<double> trace = std::move(next.trace);
  next = prev;
  next.cls = cls;
  next.lower_bound = lower;
  next.trace = std::move(trace);
  next.method = prev.method + " (inherited)";
  if (next.witness) next.witness = next.witness->retagged(cls);
}

}  // namespace

ClassChain class_chain(const DensityMatrix& rho, const PartitionSpec& partition, const OptConfig& cfg) {
  OptResult lostar = minimize_lostar(rho, partition, cfg);
  OptResult lo = minimize_lo(rho, partition, cfg, std::span<const OptResult>(&lostar, 1));
  const std::vector<OptResult> product{lostar, lo};
  OptResult locc1 = minimize_locc_oneway(rho, partition, {}, cfg, product);
  const std::vector<OptResult> all{lostar, lo, locc1};
  const int budget = cfg.outcome_budget > 0 ? std::max(cfg.outcome_budget, rho.dim()) : 2 * rho.dim();
  OptResult sep = sep_gap_heuristic(rho, partition, budget, cfg, all).best;
  inherit_if_lower(locc1, lo);
  inherit_if_lower(sep, locc1);
  return {std::move(lostar), std::move(lo), std::move(locc1), std::move(sep)};
}

OptResult minimize_gap(const DensityMatrix& rho, const PartitionSpec& partition, GapClass cls,
                       const OptConfig& cfg) {
  switch (cls) {
    case GapClass::LOStar: return minimize_lostar(rho, partition, cfg);
    case GapClass::LO: {
      const OptResult lostar = minimize_lostar(rho, partition, cfg);
      return minimize_lo(rho, partition, cfg, std::span<const OptResult>(&lostar, 1));
    }
    case GapClass::LOCC1: {
      const OptResult lostar = minimize_lostar(rho, partition, cfg);
      const OptResult lo = minimize_lo(rho, partition, cfg, std::span<const OptResult>(&lostar, 1));
      const std::vector<OptResult> product{lostar, lo};
      return minimize_locc_oneway(rho, partition, {}, cfg, product);
    }
    case GapClass::SEP: return class_chain(rho, partition, cfg).sep;
  }
  throw std::invalid_argument("unknown class");
}

}  // namespace oegap
